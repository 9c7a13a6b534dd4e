#pragma once

// Shared tokenizer and triples grammar for the Turtle family: Turtle
// documents, the N3 rule subset, and SPARQL triple blocks.

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "virtrep/rdf/pattern.hpp"
#include "virtrep/rdf/term.hpp"

namespace virtrep::rdf {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// Message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

using PrefixMap = std::map<std::string, std::string>;

namespace syntax {

enum class TokenKind {
  End,
  IriRef,   // text = unescaped IRI reference (unresolved)
  PName,    // text = prefix, local = local part (unescaped)
  Blank,    // text = label
  Var,      // text = name
  String,   // text = unescaped value
  Integer,  // text = unsigned lexical
  Decimal,
  Double,
  AtWord,   // '@' followed by letters/digits/'-': directives and language tags
  Word,     // bare keyword: a, true, false, PREFIX, CONSTRUCT, ...
  Punct,    // text = operator or punctuation
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::string local;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  /// Case-insensitive keyword test.
  bool is_keyword(std::string_view word) const;
  std::string describe() const;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  const Token& peek();
  /// Token after peek().
  const Token& peek2();
  Token next();
  [[noreturn]] void fail(const Token& at, const std::string& message) const;

 private:
  Token scan();
  void skip_space_and_comments();
  Token scan_iri_or_less(Token t);
  Token scan_string(Token t);
  Token scan_number(Token t);
  Token scan_name(Token t);
  std::string read_name_chars(bool local);
  unsigned read_hex(std::size_t digits, const Token& at);
  char current() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char ahead(std::size_t n) const { return pos_ + n < text_.size() ? text_[pos_ + n] : '\0'; }
  void advance(std::size_t n = 1);

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::vector<Token> lookahead_;
};

struct Node;
struct Statement;

struct Formula {
  std::vector<Statement> statements;
};

using NodeList = std::vector<Node>;

/// A parsed node: a term, a variable, an N3 formula `{...}` or, when kept, a
/// collection `( ... )`.
struct Node {
  std::variant<Term, Variable, std::shared_ptr<Formula>, std::shared_ptr<NodeList>> value;
  std::size_t line = 0;
  std::size_t column = 0;

  const Term* term() const { return std::get_if<Term>(&value); }
  const Variable* variable() const { return std::get_if<Variable>(&value); }
  const Formula* formula() const;
  const NodeList* list() const;
};

struct Statement {
  Node subject;
  Node predicate;
  Node object;
};

/// Which extensions of plain Turtle are accepted.
struct Dialect {
  bool variables = false;   // ?x / $x
  bool formulas = false;    // { ... } and =>
  bool keep_lists = false;  // ( ... ) stays a NodeList instead of rdf:first/rest
};

/// Recursive-descent parser for the Turtle triples grammar. Blank node labels
/// are replaced by fresh process-unique labels (one per label per parse).
class TriplesParser {
 public:
  TriplesParser(std::string_view text, std::string base, Dialect dialect);

  Lexer& lexer() { return lexer_; }
  const PrefixMap& prefixes() const { return prefixes_; }
  const std::string& base() const { return base_; }

  /// True if the next token starts @prefix/@base/PREFIX/BASE.
  bool at_directive();
  void parse_directive();
  /// Whole document: directives and `triples .` statements until End.
  std::vector<Statement> parse_document();
  /// One `subject predicateObjectList` (or a standalone `[ ... ]`).
  void parse_triples(std::vector<Statement>& out);
  /// Statements separated by '.', stopping before '}' or any of `stop_words`.
  void parse_block(std::vector<Statement>& out, std::initializer_list<std::string_view> stop_words = {});

  /// Resolves an IRI reference token against the current base.
  std::string resolve(const Token& iri);
  std::string expand(const Token& pname);
  /// IRI from an IriRef or PName token.
  std::string iri_of(const Token& t);
  Term literal_from(const Token& t);

  [[noreturn]] void fail(const Token& at, const std::string& message) { lexer_.fail(at, message); }
  Token expect_punct(std::string_view p);

 private:
  enum class Role { Subject, Predicate, Object };

  Node parse_node(Role role, std::vector<Statement>& out);
  Node parse_predicate();
  void parse_predicate_object_list(const Node& subject, std::vector<Statement>& out);
  Node parse_blank_property_list(const Token& open, std::vector<Statement>& out);
  Node parse_collection(const Token& open, std::vector<Statement>& out);
  Node parse_formula(const Token& open);
  Node make(Term t, const Token& at) const;
  std::string blank_label(const std::string& source_label);

  Lexer lexer_;
  std::string base_;
  Dialect dialect_;
  PrefixMap prefixes_;
  std::map<std::string, std::string> blank_labels_;
};

}  // namespace syntax
}  // namespace virtrep::rdf
