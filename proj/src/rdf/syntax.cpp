#include "virtrep/rdf/syntax.hpp"

#include <algorithm>
#include <cctype>

#include "virtrep/rdf/iri.hpp"
#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::rdf {

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace syntax {

namespace {

bool is_name_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_name_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80; }

bool iri_char_ok(unsigned char c) {
  if (c <= 0x20) return false;
  switch (c) {
    case '<': case '"': case '{': case '}': case '|': case '^': case '`': return false;
    default: return true;
  }
}

void append_utf8(std::string& out, unsigned cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

bool Token::is_keyword(std::string_view word) const { return kind == TokenKind::Word && iequals(text, word); }

std::string Token::describe() const {
  switch (kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::IriRef: return "<" + text + ">";
    case TokenKind::PName: return text + ":" + local;
    case TokenKind::Blank: return "_:" + text;
    case TokenKind::Var: return "?" + text;
    case TokenKind::String: return "string literal";
    case TokenKind::AtWord: return "@" + text;
    default: return "'" + text + "'";
  }
}

// ---------------------------------------------------------------- Lexer

const Token& Lexer::peek() {
  if (lookahead_.empty()) lookahead_.push_back(scan());
  return lookahead_.front();
}

const Token& Lexer::peek2() {
  while (lookahead_.size() < 2) lookahead_.push_back(scan());
  return lookahead_[1];
}

Token Lexer::next() {
  peek();
  Token t = std::move(lookahead_.front());
  lookahead_.erase(lookahead_.begin());
  return t;
}

void Lexer::fail(const Token& at, const std::string& message) const {
  throw SyntaxError(message, at.line, at.column);
}

void Lexer::advance(std::size_t n) {
  for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }
}

void Lexer::skip_space_and_comments() {
  while (pos_ < text_.size()) {
    char c = current();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
    } else if (c == '#') {
      while (pos_ < text_.size() && current() != '\n') advance();
    } else {
      break;
    }
  }
}

unsigned Lexer::read_hex(std::size_t digits, const Token& at) {
  unsigned value = 0;
  for (std::size_t i = 0; i < digits; ++i) {
    char c = current();
    if (!std::isxdigit(static_cast<unsigned char>(c))) fail(at, "invalid \\u escape");
    value = value * 16 + static_cast<unsigned>(std::isdigit(static_cast<unsigned char>(c))
                                                   ? c - '0'
                                                   : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
    advance();
  }
  return value;
}

Token Lexer::scan() {
  skip_space_and_comments();
  Token t;
  t.line = line_;
  t.column = column_;
  t.begin = pos_;
  auto finish = [&](TokenKind kind, std::string text, std::size_t len) {
    advance(len);
    t.kind = kind;
    t.text = std::move(text);
    t.end = pos_;
    return t;
  };
  if (pos_ >= text_.size()) return finish(TokenKind::End, "", 0);

  char c = current();
  if (c == '<') return scan_iri_or_less(std::move(t));
  if (c == '"' || c == '\'') return scan_string(std::move(t));
  if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && std::isdigit(static_cast<unsigned char>(ahead(1))))) {
    return scan_number(std::move(t));
  }
  if (c == '_' && ahead(1) == ':') {
    advance(2);
    std::string label = read_name_chars(false);
    if (label.empty()) fail(t, "empty blank node label");
    t.kind = TokenKind::Blank;
    t.text = std::move(label);
    t.end = pos_;
    return t;
  }
  if ((c == '?' || c == '$') && is_name_char(static_cast<unsigned char>(ahead(1)))) {
    advance();
    std::string name;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(current())) || current() == '_' ||
                                   static_cast<unsigned char>(current()) >= 0x80)) {
      name += current();
      advance();
    }
    t.kind = TokenKind::Var;
    t.text = std::move(name);
    t.end = pos_;
    return t;
  }
  if (c == '@') {
    advance();
    std::string word;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(current())) || current() == '-')) {
      word += current();
      advance();
    }
    if (word.empty()) fail(t, "expected a word after '@'");
    t.kind = TokenKind::AtWord;
    t.text = std::move(word);
    t.end = pos_;
    return t;
  }
  if (c == '^' && ahead(1) == '^') return finish(TokenKind::Punct, "^^", 2);
  if (c == '=' && ahead(1) == '>') return finish(TokenKind::Punct, "=>", 2);
  if (c == '!' && ahead(1) == '=') return finish(TokenKind::Punct, "!=", 2);
  if (c == '>' && ahead(1) == '=') return finish(TokenKind::Punct, ">=", 2);
  if (c == '&' && ahead(1) == '&') return finish(TokenKind::Punct, "&&", 2);
  if (c == '|' && ahead(1) == '|') return finish(TokenKind::Punct, "||", 2);
  if (std::string_view("{}()[].;,+-*/=!>").find(c) != std::string_view::npos) {
    return finish(TokenKind::Punct, std::string(1, c), 1);
  }
  if (is_name_start(static_cast<unsigned char>(c)) || c == ':') return scan_name(std::move(t));
  fail(t, std::string("unexpected character '") + c + "'");
}

Token Lexer::scan_iri_or_less(Token t) {
  std::size_t save_pos = pos_, save_line = line_, save_col = column_;
  advance();  // '<'
  std::string iri;
  bool ok = false;
  while (pos_ < text_.size()) {
    char c = current();
    if (c == '>') {
      advance();
      ok = true;
      break;
    }
    if (c == '\\') {
      advance();
      char kind = current();
      if (kind != 'u' && kind != 'U') break;
      advance();
      append_utf8(iri, read_hex(kind == 'u' ? 4 : 8, t));
      continue;
    }
    if (!iri_char_ok(static_cast<unsigned char>(c))) break;
    iri += c;
    advance();
  }
  if (ok) {
    t.kind = TokenKind::IriRef;
    t.text = std::move(iri);
    t.end = pos_;
    return t;
  }
  // Not an IRI: comparison operator.
  pos_ = save_pos;
  line_ = save_line;
  column_ = save_col;
  std::size_t len = ahead(1) == '=' ? 2 : 1;
  advance(len);
  t.kind = TokenKind::Punct;
  t.text = len == 2 ? "<=" : "<";
  t.end = pos_;
  return t;
}

Token Lexer::scan_string(Token t) {
  char quote = current();
  bool long_form = ahead(1) == quote && ahead(2) == quote;
  advance(long_form ? 3 : 1);
  std::string value;
  while (true) {
    if (pos_ >= text_.size()) fail(t, "unterminated string literal");
    char c = current();
    if (c == quote) {
      if (!long_form) {
        advance();
        break;
      }
      if (ahead(1) == quote && ahead(2) == quote) {
        // A long string may end with up to two extra quote characters.
        while (ahead(3) == quote) {
          value += quote;
          advance();
        }
        advance(3);
        break;
      }
      value += c;
      advance();
      continue;
    }
    if (!long_form && (c == '\n' || c == '\r')) fail(t, "line break in short string literal");
    if (c == '\\') {
      advance();
      char e = current();
      advance();
      switch (e) {
        case 't': value += '\t'; break;
        case 'b': value += '\b'; break;
        case 'n': value += '\n'; break;
        case 'r': value += '\r'; break;
        case 'f': value += '\f'; break;
        case '"': value += '"'; break;
        case '\'': value += '\''; break;
        case '\\': value += '\\'; break;
        case 'u': append_utf8(value, read_hex(4, t)); break;
        case 'U': append_utf8(value, read_hex(8, t)); break;
        default: fail(t, std::string("invalid escape '\\") + e + "'");
      }
      continue;
    }
    value += c;
    advance();
  }
  t.kind = TokenKind::String;
  t.text = std::move(value);
  t.end = pos_;
  return t;
}

Token Lexer::scan_number(Token t) {
  std::string lexical;
  auto digits = [&] {
    while (std::isdigit(static_cast<unsigned char>(current()))) {
      lexical += current();
      advance();
    }
  };
  TokenKind kind = TokenKind::Integer;
  digits();
  if (current() == '.' && std::isdigit(static_cast<unsigned char>(ahead(1)))) {
    kind = TokenKind::Decimal;
    lexical += '.';
    advance();
    digits();
  }
  if (current() == 'e' || current() == 'E') {
    bool sign = ahead(1) == '+' || ahead(1) == '-';
    if (std::isdigit(static_cast<unsigned char>(ahead(sign ? 2 : 1)))) {
      kind = TokenKind::Double;
      lexical += current();
      advance();
      if (sign) {
        lexical += current();
        advance();
      }
      digits();
    }
  }
  t.kind = kind;
  t.text = std::move(lexical);
  t.end = pos_;
  return t;
}

std::string Lexer::read_name_chars(bool local) {
  std::string out;
  std::size_t good_pos = pos_, good_col = column_, good_len = 0;
  while (pos_ < text_.size()) {
    auto c = static_cast<unsigned char>(current());
    bool escaped_or_plain = false;
    if (is_name_char(c) || (local && c == ':')) {
      out += static_cast<char>(c);
      advance();
      escaped_or_plain = true;
    } else if (c == '.') {
      out += '.';
      advance();
    } else if (local && c == '%' && std::isxdigit(static_cast<unsigned char>(ahead(1))) &&
               std::isxdigit(static_cast<unsigned char>(ahead(2)))) {
      out.append(text_.substr(pos_, 3));
      advance(3);
      escaped_or_plain = true;
    } else if (local && c == '\\' && ahead(1) != '\0' &&
               std::string_view("_~.-!$&'()*+,;=/?#@%").find(ahead(1)) != std::string_view::npos) {
      out += ahead(1);
      advance(2);
      escaped_or_plain = true;
    } else {
      break;
    }
    if (escaped_or_plain) {
      good_pos = pos_;
      good_col = column_;
      good_len = out.size();
    }
  }
  // A trailing '.' ends the statement, not the name.
  pos_ = good_pos;
  column_ = good_col;
  out.resize(good_len);
  return out;
}

Token Lexer::scan_name(Token t) {
  std::string prefix;
  if (current() != ':') prefix = read_name_chars(false);
  if (current() == ':') {
    advance();
    t.kind = TokenKind::PName;
    t.text = std::move(prefix);
    t.local = read_name_chars(true);
  } else {
    t.kind = TokenKind::Word;
    t.text = std::move(prefix);
  }
  t.end = pos_;
  return t;
}

// ---------------------------------------------------------------- Nodes

const Formula* Node::formula() const {
  auto* p = std::get_if<std::shared_ptr<Formula>>(&value);
  return p ? p->get() : nullptr;
}

const NodeList* Node::list() const {
  auto* p = std::get_if<std::shared_ptr<NodeList>>(&value);
  return p ? p->get() : nullptr;
}

// ---------------------------------------------------------------- Parser

TriplesParser::TriplesParser(std::string_view text, std::string base, Dialect dialect)
    : lexer_(text), base_(std::move(base)), dialect_(dialect) {}

Token TriplesParser::expect_punct(std::string_view p) {
  Token t = lexer_.next();
  if (!t.is_punct(p)) fail(t, "expected '" + std::string(p) + "' but found " + t.describe());
  return t;
}

bool TriplesParser::at_directive() {
  const Token& t = lexer_.peek();
  if (t.kind == TokenKind::AtWord) return t.text == "prefix" || t.text == "base";
  return t.is_keyword("PREFIX") || t.is_keyword("BASE");
}

void TriplesParser::parse_directive() {
  Token d = lexer_.next();
  bool turtle_style = d.kind == TokenKind::AtWord;
  bool is_prefix = turtle_style ? d.text == "prefix" : d.is_keyword("PREFIX");
  if (is_prefix) {
    Token name = lexer_.next();
    if (name.kind != TokenKind::PName || !name.local.empty()) fail(name, "expected prefix name ending in ':'");
    Token iri = lexer_.next();
    if (iri.kind != TokenKind::IriRef) fail(iri, "expected IRI in prefix declaration");
    prefixes_[name.text] = resolve(iri);
  } else {
    Token iri = lexer_.next();
    if (iri.kind != TokenKind::IriRef) fail(iri, "expected IRI in base declaration");
    base_ = resolve(iri);
  }
  if (turtle_style) expect_punct(".");
}

std::vector<Statement> TriplesParser::parse_document() {
  std::vector<Statement> out;
  while (lexer_.peek().kind != TokenKind::End) {
    if (at_directive()) {
      parse_directive();
      continue;
    }
    parse_triples(out);
    expect_punct(".");
  }
  return out;
}

void TriplesParser::parse_block(std::vector<Statement>& out, std::initializer_list<std::string_view> stop_words) {
  auto stopped = [&](const Token& t) {
    if (t.is_punct("}") || t.kind == TokenKind::End) return true;
    return std::any_of(stop_words.begin(), stop_words.end(), [&](std::string_view w) { return t.is_keyword(w); });
  };
  while (!stopped(lexer_.peek())) {
    parse_triples(out);
    if (lexer_.peek().is_punct(".")) {
      lexer_.next();
      continue;
    }
    if (!stopped(lexer_.peek())) fail(lexer_.peek(), "expected '.' but found " + lexer_.peek().describe());
  }
}

void TriplesParser::parse_triples(std::vector<Statement>& out) {
  bool bracketed = lexer_.peek().is_punct("[");
  Node subject = parse_node(Role::Subject, out);
  if (bracketed) {
    const Token& t = lexer_.peek();
    if (t.is_punct(".") || t.is_punct("}") || t.kind == TokenKind::End) return;
  }
  parse_predicate_object_list(subject, out);
}

void TriplesParser::parse_predicate_object_list(const Node& subject, std::vector<Statement>& out) {
  while (true) {
    Node predicate = parse_predicate();
    while (true) {
      Node object = parse_node(Role::Object, out);
      out.push_back(Statement{subject, predicate, std::move(object)});
      if (!lexer_.peek().is_punct(",")) break;
      lexer_.next();
    }
    if (!lexer_.peek().is_punct(";")) return;
    while (lexer_.peek().is_punct(";")) lexer_.next();
    const Token& t = lexer_.peek();
    bool predicate_follows = t.kind == TokenKind::IriRef || t.kind == TokenKind::PName ||
                             t.is(TokenKind::Word, "a") || (t.kind == TokenKind::Var && dialect_.variables) ||
                             (t.is_punct("=>") && dialect_.formulas);
    if (!predicate_follows) return;
  }
}

Node TriplesParser::parse_predicate() {
  Token t = lexer_.next();
  switch (t.kind) {
    case TokenKind::IriRef:
    case TokenKind::PName: return make(Term::iri(iri_of(t)), t);
    case TokenKind::Var:
      if (dialect_.variables) return Node{Variable{t.text}, t.line, t.column};
      break;
    case TokenKind::Word:
      if (t.text == "a") return make(Term::iri(std::string(rdfns::kType)), t);
      break;
    case TokenKind::Punct:
      if (t.text == "=>" && dialect_.formulas) return make(Term::iri(std::string(log::kImplies)), t);
      break;
    default: break;
  }
  fail(t, "expected a predicate but found " + t.describe());
}

Node TriplesParser::parse_node(Role role, std::vector<Statement>& out) {
  Token t = lexer_.next();
  auto literal_allowed = [&] {
    if (role == Role::Subject && !dialect_.formulas) fail(t, "literal not allowed as subject");
  };
  switch (t.kind) {
    case TokenKind::IriRef:
    case TokenKind::PName: return make(Term::iri(iri_of(t)), t);
    case TokenKind::Blank: return make(Term::blank(blank_label(t.text)), t);
    case TokenKind::Var:
      if (!dialect_.variables) fail(t, "variables are not allowed here");
      return Node{Variable{t.text}, t.line, t.column};
    case TokenKind::String:
    case TokenKind::Integer:
    case TokenKind::Decimal:
    case TokenKind::Double:
      literal_allowed();
      return make(literal_from(t), t);
    case TokenKind::Word:
      if (t.text == "true" || t.text == "false") {
        literal_allowed();
        return make(Term::boolean(t.text == "true"), t);
      }
      break;
    case TokenKind::Punct:
      if (t.text == "[") return parse_blank_property_list(t, out);
      if (t.text == "(") return parse_collection(t, out);
      if (t.text == "{" && dialect_.formulas) return parse_formula(t);
      if (t.text == "+" || t.text == "-") {
        const Token& n = lexer_.peek();
        bool numeric = n.kind == TokenKind::Integer || n.kind == TokenKind::Decimal || n.kind == TokenKind::Double;
        if (numeric && n.begin == t.end) {
          literal_allowed();
          Token num = lexer_.next();
          num.text.insert(0, t.text);
          return make(literal_from(num), t);
        }
      }
      break;
    default: break;
  }
  fail(t, "unexpected " + t.describe());
}

Node TriplesParser::parse_blank_property_list(const Token& open, std::vector<Statement>& out) {
  Node node = make(Term::blank(fresh_blank_label()), open);
  if (lexer_.peek().is_punct("]")) {
    lexer_.next();
    return node;
  }
  parse_predicate_object_list(node, out);
  expect_punct("]");
  return node;
}

Node TriplesParser::parse_collection(const Token& open, std::vector<Statement>& out) {
  NodeList items;
  while (!lexer_.peek().is_punct(")")) {
    if (lexer_.peek().kind == TokenKind::End) fail(open, "unterminated collection");
    items.push_back(parse_node(Role::Object, out));
  }
  lexer_.next();
  if (dialect_.keep_lists) return Node{std::make_shared<NodeList>(std::move(items)), open.line, open.column};
  if (items.empty()) return make(Term::iri(std::string(rdfns::kNil)), open);
  Node head = make(Term::blank(fresh_blank_label()), open);
  Node cell = head;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.push_back(Statement{cell, make(Term::iri(std::string(rdfns::kFirst)), open), items[i]});
    Node rest = i + 1 < items.size() ? make(Term::blank(fresh_blank_label()), open)
                                     : make(Term::iri(std::string(rdfns::kNil)), open);
    out.push_back(Statement{cell, make(Term::iri(std::string(rdfns::kRest)), open), rest});
    cell = rest;
  }
  return head;
}

Node TriplesParser::parse_formula(const Token& open) {
  auto formula = std::make_shared<Formula>();
  parse_block(formula->statements);
  expect_punct("}");
  return Node{std::move(formula), open.line, open.column};
}

Node TriplesParser::make(Term t, const Token& at) const { return Node{std::move(t), at.line, at.column}; }

std::string TriplesParser::blank_label(const std::string& source_label) {
  auto [it, inserted] = blank_labels_.try_emplace(source_label);
  if (inserted) it->second = fresh_blank_label();
  return it->second;
}

std::string TriplesParser::resolve(const Token& iri) {
  if (is_absolute_iri(iri.text)) return iri.text;
  auto resolved = resolve_iri(base_, iri.text);
  if (!resolved) fail(iri, "relative IRI <" + iri.text + "> without an absolute base");
  return *resolved;
}

std::string TriplesParser::expand(const Token& pname) {
  auto it = prefixes_.find(pname.text);
  if (it == prefixes_.end()) fail(pname, "undefined prefix '" + pname.text + ":'");
  return it->second + pname.local;
}

std::string TriplesParser::iri_of(const Token& t) {
  if (t.kind == TokenKind::IriRef) return resolve(t);
  if (t.kind == TokenKind::PName) return expand(t);
  fail(t, "expected an IRI but found " + t.describe());
}

Term TriplesParser::literal_from(const Token& t) {
  switch (t.kind) {
    case TokenKind::Integer: return Term::literal(t.text, xsd::kInteger);
    case TokenKind::Decimal: return Term::literal(t.text, xsd::kDecimal);
    case TokenKind::Double: return Term::literal(t.text, xsd::kDouble);
    default: break;
  }
  const Token& next = lexer_.peek();
  if (next.kind == TokenKind::AtWord) {
    Token lang = lexer_.next();
    return Term::lang_literal(t.text, lang.text);
  }
  if (next.is_punct("^^")) {
    lexer_.next();
    Token dt = lexer_.next();
    return Term::literal(t.text, iri_of(dt));
  }
  return Term::literal(t.text);
}

}  // namespace syntax
}  // namespace virtrep::rdf
