#pragma once

#include <optional>
#include <string>
#include <vector>

#include "virtrep/rdf/pattern.hpp"

namespace virtrep::query {

/// Expression tree for FILTER and BIND.
struct Expr {
  enum class Op {
    Constant,
    Var,
    Or,
    And,
    Not,
    Equal,
    NotEqual,
    Less,
    LessOrEqual,
    Greater,
    GreaterOrEqual,
    Add,
    Subtract,
    Multiply,
    Divide,
    Negate,
    Plus,
  };

  Op op = Op::Constant;
  std::optional<rdf::Term> constant;
  std::string variable;
  std::vector<Expr> args;

  static Expr term(rdf::Term t) { return Expr{Op::Constant, std::move(t), {}, {}}; }
  static Expr var(std::string name) { return Expr{Op::Var, std::nullopt, std::move(name), {}}; }
  static Expr unary(Op op, Expr a) { return Expr{op, std::nullopt, {}, {std::move(a)}}; }
  static Expr binary(Op op, Expr a, Expr b) { return Expr{op, std::nullopt, {}, {std::move(a), std::move(b)}}; }

  std::string to_string() const;
};

using FilterExpr = Expr;

enum class Truth { True, False, Error };

/// Value of `e` under `b`; nullopt is an evaluation error (unbound variable,
/// type error, division by zero).
std::optional<rdf::Term> eval_value(const Expr& e, const rdf::Binding& b);

/// Effective boolean value of `e` under `b`.
Truth eval_expr(const Expr& e, const rdf::Binding& b);

/// Effective boolean value of a term: booleans as-is, numbers are true
/// unless zero or NaN, plain strings are true unless empty.
std::optional<bool> effective_boolean(const rdf::Term& t);

}  // namespace virtrep::query
