#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "virtrep/rdf/term.hpp"
#include "virtrep/rules/program.hpp"

namespace virtrep::rules {

class TypeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuiltinResult {
  enum class Status { Value, Satisfied, Unsatisfied };

  Status status = Status::Unsatisfied;
  std::optional<rdf::Term> value;  // set for Status::Value

  static BuiltinResult of(rdf::Term t) { return {Status::Value, std::move(t)}; }
  static BuiltinResult satisfied() { return {Status::Satisfied, std::nullopt}; }
  static BuiltinResult unsatisfied() { return {Status::Unsatisfied, std::nullopt}; }
};

/// Applies a builtin to bound numeric inputs. Arithmetic is exact for
/// integers and decimals; a quotient of exact operands is a decimal, and
/// division by zero is Unsatisfied. Comparisons promote integer -> decimal
/// -> double. Throws TypeMismatch on a non-numeric input or wrong arity.
BuiltinResult apply_builtin(Builtin b, std::span<const rdf::Term> inputs);

}  // namespace virtrep::rules
