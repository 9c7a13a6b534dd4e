#include "virtrep/query/expression.hpp"

#include <cmath>

#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::query {

namespace {

using Op = Expr::Op;

bool is_plain_string(const rdf::Term& t) {
  return t.is_literal() && t.datatype() == rdf::xsd::kString;
}

std::optional<rdf::Term> compare(Op op, const rdf::Term& a, const rdf::Term& b) {
  std::partial_ordering order = std::partial_ordering::unordered;
  auto x = a.numeric();
  auto y = b.numeric();
  if (x && y) {
    order = *x <=> *y;
  } else if (is_plain_string(a) && is_plain_string(b)) {
    order = a.value() <=> b.value();
  } else if (auto p = a.boolean_value(), q = b.boolean_value(); p && q) {
    order = *p <=> *q;
  } else if (op == Op::Equal || op == Op::NotEqual) {
    bool same = a == b;
    return rdf::Term::boolean(op == Op::Equal ? same : !same);
  } else {
    return std::nullopt;
  }
  switch (op) {
    case Op::Equal: return rdf::Term::boolean(order == 0);
    case Op::NotEqual: return rdf::Term::boolean(order != 0);
    case Op::Less: return rdf::Term::boolean(order < 0);
    case Op::LessOrEqual: return rdf::Term::boolean(order <= 0);
    case Op::Greater: return rdf::Term::boolean(order > 0);
    case Op::GreaterOrEqual: return rdf::Term::boolean(order >= 0);
    default: return std::nullopt;
  }
}

std::optional<rdf::Term> arithmetic(Op op, const rdf::Term& a, const rdf::Term& b) {
  auto x = a.numeric();
  auto y = b.numeric();
  if (!x || !y) return std::nullopt;
  switch (op) {
    case Op::Add: return rdf::Term::number(*x + *y);
    case Op::Subtract: return rdf::Term::number(*x - *y);
    case Op::Multiply: return rdf::Term::number(*x * *y);
    case Op::Divide: {
      auto q = rdf::Numeric::divide(*x, *y);
      if (!q) return std::nullopt;
      return rdf::Term::number(*q);
    }
    default: return std::nullopt;
  }
}

const char* symbol(Op op) {
  switch (op) {
    case Op::Or: return "||";
    case Op::And: return "&&";
    case Op::Not: return "!";
    case Op::Equal: return "=";
    case Op::NotEqual: return "!=";
    case Op::Less: return "<";
    case Op::LessOrEqual: return "<=";
    case Op::Greater: return ">";
    case Op::GreaterOrEqual: return ">=";
    case Op::Add: return "+";
    case Op::Subtract: case Op::Negate: return "-";
    case Op::Multiply: return "*";
    case Op::Divide: return "/";
    case Op::Plus: return "+";
    default: return "?";
  }
}

}  // namespace

std::string Expr::to_string() const {
  switch (op) {
    case Op::Constant: return constant->to_string();
    case Op::Var: return "?" + variable;
    case Op::Not: case Op::Negate: case Op::Plus: return std::string(symbol(op)) + args[0].to_string();
    default: return "(" + args[0].to_string() + " " + symbol(op) + " " + args[1].to_string() + ")";
  }
}

std::optional<bool> effective_boolean(const rdf::Term& t) {
  if (auto b = t.boolean_value()) return b;
  if (auto n = t.numeric()) {
    if (n->type() == rdf::Numeric::Type::Double && std::isnan(n->as_double())) return false;
    return !n->is_zero();
  }
  if (is_plain_string(t)) return !t.value().empty();
  return std::nullopt;
}

std::optional<rdf::Term> eval_value(const Expr& e, const rdf::Binding& b) {
  switch (e.op) {
    case Op::Constant: return e.constant;
    case Op::Var: {
      auto it = b.find(e.variable);
      if (it == b.end()) return std::nullopt;
      return it->second;
    }
    case Op::Or:
    case Op::And:
    case Op::Not: {
      Truth t = eval_expr(e, b);
      if (t == Truth::Error) return std::nullopt;
      return rdf::Term::boolean(t == Truth::True);
    }
    case Op::Negate:
    case Op::Plus: {
      auto v = eval_value(e.args[0], b);
      if (!v) return std::nullopt;
      auto n = v->numeric();
      if (!n) return std::nullopt;
      return rdf::Term::number(e.op == Op::Negate ? -*n : *n);
    }
    default: break;
  }
  auto lhs = eval_value(e.args[0], b);
  auto rhs = eval_value(e.args[1], b);
  if (!lhs || !rhs) return std::nullopt;
  switch (e.op) {
    case Op::Add:
    case Op::Subtract:
    case Op::Multiply:
    case Op::Divide: return arithmetic(e.op, *lhs, *rhs);
    default: return compare(e.op, *lhs, *rhs);
  }
}

Truth eval_expr(const Expr& e, const rdf::Binding& b) {
  auto truth = [&](const Expr& sub) {
    if (sub.op == Op::Or || sub.op == Op::And || sub.op == Op::Not) return eval_expr(sub, b);
    auto v = eval_value(sub, b);
    if (!v) return Truth::Error;
    auto ebv = effective_boolean(*v);
    if (!ebv) return Truth::Error;
    return *ebv ? Truth::True : Truth::False;
  };
  switch (e.op) {
    case Op::Or: {
      Truth l = truth(e.args[0]);
      Truth r = truth(e.args[1]);
      if (l == Truth::True || r == Truth::True) return Truth::True;
      if (l == Truth::Error || r == Truth::Error) return Truth::Error;
      return Truth::False;
    }
    case Op::And: {
      Truth l = truth(e.args[0]);
      Truth r = truth(e.args[1]);
      if (l == Truth::False || r == Truth::False) return Truth::False;
      if (l == Truth::Error || r == Truth::Error) return Truth::Error;
      return Truth::True;
    }
    case Op::Not: {
      Truth t = truth(e.args[0]);
      if (t == Truth::Error) return t;
      return t == Truth::True ? Truth::False : Truth::True;
    }
    default: return truth(e);
  }
}

}  // namespace virtrep::query
