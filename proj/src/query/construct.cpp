#include "virtrep/query/construct.hpp"

#include <map>
#include <set>

namespace virtrep::query {

namespace {

using rdf::syntax::Node;
using rdf::syntax::Token;
using rdf::syntax::TokenKind;

class QueryParser {
 public:
  QueryParser(std::string_view text, std::string_view base)
      : parser_(text, std::string(base), rdf::syntax::Dialect{true, false, false}), lexer_(parser_.lexer()) {}

  ConstructQuery run() {
    while (parser_.at_directive()) parser_.parse_directive();
    expect_keyword("CONSTRUCT");
    parser_.expect_punct("{");
    std::vector<rdf::syntax::Statement> templ;
    parser_.parse_block(templ);
    parser_.expect_punct("}");
    expect_keyword("WHERE");
    parser_.expect_punct("{");
    group();
    parser_.expect_punct("}");
    if (lexer_.peek().kind != TokenKind::End) {
      parser_.fail(lexer_.peek(), "unexpected " + lexer_.peek().describe() + " after the WHERE clause");
    }
    check_binds();
    for (const auto& st : templ) {
      query_.templ.push_back({template_term(st.subject), template_term(st.predicate), template_term(st.object)});
    }
    query_.prefixes = parser_.prefixes();
    return std::move(query_);
  }

 private:
  void expect_keyword(std::string_view word) {
    Token t = lexer_.next();
    if (!t.is_keyword(word)) parser_.fail(t, "expected " + std::string(word) + " but found " + t.describe());
  }

  void group() {
    while (true) {
      std::vector<rdf::syntax::Statement> block;
      parser_.parse_block(block, {"FILTER", "BIND"});
      for (const auto& st : block) {
        rdf::TriplePattern p{where_term(st.subject), where_term(st.predicate), where_term(st.object)};
        for (auto& v : p.variables()) bound_.insert(v);
        query_.where.push_back(std::move(p));
      }
      const Token& t = lexer_.peek();
      if (t.is_keyword("FILTER")) {
        lexer_.next();
        parser_.expect_punct("(");
        query_.filters.push_back(expression());
        parser_.expect_punct(")");
      } else if (t.is_keyword("BIND")) {
        bind();
      } else {
        return;
      }
      if (lexer_.peek().is_punct(".")) lexer_.next();
    }
  }

  void bind() {
    lexer_.next();
    parser_.expect_punct("(");
    Expr e = expression();
    expect_keyword("AS");
    Token v = lexer_.next();
    if (v.kind != TokenKind::Var) parser_.fail(v, "expected a variable after AS");
    parser_.expect_punct(")");
    binds_.push_back({std::move(e), v.text, v});
  }

  rdf::PatternTerm where_term(const Node& n) {
    if (auto* v = n.variable()) return *v;
    const rdf::Term& t = *n.term();
    if (t.is_blank()) return rdf::Variable{"_:" + t.value()};
    return t;
  }

  rdf::PatternTerm template_term(const Node& n) {
    if (auto* v = n.variable()) {
      if (!bound_.contains(v->name) && !bind_targets_.contains(v->name)) {
        throw rdf::SyntaxError("template variable ?" + v->name + " is not bound in WHERE", n.line, n.column);
      }
      return *v;
    }
    return *n.term();
  }

  // Precedence climbing: || < && < comparison < additive < multiplicative < unary.
  Expr expression() { return or_expr(); }

  Expr or_expr() {
    Expr e = and_expr();
    while (lexer_.peek().is_punct("||")) {
      lexer_.next();
      e = Expr::binary(Expr::Op::Or, std::move(e), and_expr());
    }
    return e;
  }

  Expr and_expr() {
    Expr e = relational();
    while (lexer_.peek().is_punct("&&")) {
      lexer_.next();
      e = Expr::binary(Expr::Op::And, std::move(e), relational());
    }
    return e;
  }

  Expr relational() {
    static const std::map<std::string, Expr::Op> ops = {
        {"=", Expr::Op::Equal},  {"!=", Expr::Op::NotEqual},      {"<", Expr::Op::Less},
        {"<=", Expr::Op::LessOrEqual}, {">", Expr::Op::Greater}, {">=", Expr::Op::GreaterOrEqual},
    };
    Expr e = additive();
    const Token& t = lexer_.peek();
    if (t.kind == TokenKind::Punct) {
      if (auto it = ops.find(t.text); it != ops.end()) {
        lexer_.next();
        e = Expr::binary(it->second, std::move(e), additive());
      }
    }
    return e;
  }

  Expr additive() {
    Expr e = multiplicative();
    while (lexer_.peek().is_punct("+") || lexer_.peek().is_punct("-")) {
      auto op = lexer_.next().text == "+" ? Expr::Op::Add : Expr::Op::Subtract;
      e = Expr::binary(op, std::move(e), multiplicative());
    }
    return e;
  }

  Expr multiplicative() {
    Expr e = unary();
    while (lexer_.peek().is_punct("*") || lexer_.peek().is_punct("/")) {
      auto op = lexer_.next().text == "*" ? Expr::Op::Multiply : Expr::Op::Divide;
      e = Expr::binary(op, std::move(e), unary());
    }
    return e;
  }

  Expr unary() {
    const Token& t = lexer_.peek();
    if (t.is_punct("!")) {
      lexer_.next();
      return Expr::unary(Expr::Op::Not, unary());
    }
    if (t.is_punct("-")) {
      lexer_.next();
      return Expr::unary(Expr::Op::Negate, unary());
    }
    if (t.is_punct("+")) {
      lexer_.next();
      return Expr::unary(Expr::Op::Plus, unary());
    }
    return primary();
  }

  Expr primary() {
    Token t = lexer_.next();
    switch (t.kind) {
      case TokenKind::Punct:
        if (t.text == "(") {
          Expr e = expression();
          parser_.expect_punct(")");
          return e;
        }
        break;
      case TokenKind::Var: return Expr::var(t.text);
      case TokenKind::IriRef:
      case TokenKind::PName: return Expr::term(rdf::Term::iri(parser_.iri_of(t)));
      case TokenKind::String:
      case TokenKind::Integer:
      case TokenKind::Decimal:
      case TokenKind::Double: return Expr::term(parser_.literal_from(t));
      case TokenKind::Word:
        if (t.text == "true" || t.text == "false") return Expr::term(rdf::Term::boolean(t.text == "true"));
        break;
      default: break;
    }
    parser_.fail(t, "unexpected " + t.describe() + " in expression");
  }

  // BIND targets are checked after the whole WHERE clause is known, since a
  // later triple pattern may also bind the variable.
  void check_binds() {
    for (auto& b : binds_) {
      if (bound_.contains(b.variable) || bind_targets_.contains(b.variable)) {
        parser_.fail(b.at, "BIND target ?" + b.variable + " is already bound");
      }
      bind_targets_.insert(b.variable);
      query_.binds.push_back({std::move(b.expression), b.variable});
    }
    binds_.clear();
  }

  struct PendingBind {
    Expr expression;
    std::string variable;
    Token at;
  };

  rdf::syntax::TriplesParser parser_;
  rdf::syntax::Lexer& lexer_;
  ConstructQuery query_;
  std::set<std::string> bound_;
  std::set<std::string> bind_targets_;
  std::vector<PendingBind> binds_;
};

}  // namespace

ConstructQuery parse_construct(std::string_view text, std::string_view base) {
  return QueryParser(text, base).run();
}

std::vector<rdf::Binding> solutions(const ConstructQuery& q, const rdf::Graph& g) {
  std::vector<rdf::Binding> out;
  for (auto b : rdf::match_bgp(q.where, g)) {
    for (const auto& bind : q.binds) {
      // An expression error leaves the variable unbound.
      if (auto v = eval_value(bind.expression, b)) b.emplace(bind.variable, std::move(*v));
    }
    bool keep = true;
    for (const auto& f : q.filters) {
      if (eval_expr(f, b) != Truth::True) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(std::move(b));
  }
  return out;
}

rdf::Graph execute_construct(const ConstructQuery& q, const rdf::Graph& g) {
  rdf::Graph out;
  for (const auto& b : solutions(q, g)) {
    std::map<std::string, rdf::Term> fresh;
    for (const auto& p : q.templ) {
      auto mint = [&](const rdf::PatternTerm& t) -> rdf::PatternTerm {
        auto* term = std::get_if<rdf::Term>(&t);
        if (!term || !term->is_blank()) return t;
        auto [it, inserted] = fresh.try_emplace(term->value());
        if (inserted) it->second = rdf::Term::blank(rdf::fresh_blank_label());
        return it->second;
      };
      if (auto t = rdf::instantiate({mint(p.subject), mint(p.predicate), mint(p.object)}, b)) {
        out.insert(std::move(*t));
      }
    }
  }
  return out;
}

}  // namespace virtrep::query
