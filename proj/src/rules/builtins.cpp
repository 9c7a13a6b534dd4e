#include "virtrep/rules/builtins.hpp"

#include <string>

namespace virtrep::rules {

BuiltinResult apply_builtin(Builtin b, std::span<const rdf::Term> inputs) {
  if (inputs.size() != 2) {
    throw TypeMismatch(std::string(builtin_name(b)) + " takes 2 inputs, got " + std::to_string(inputs.size()));
  }
  auto x = inputs[0].numeric();
  auto y = inputs[1].numeric();
  if (!x || !y) {
    const auto& bad = x ? inputs[1] : inputs[0];
    throw TypeMismatch(std::string(builtin_name(b)) + ": non-numeric input " + bad.to_string());
  }
  auto test = [](bool ok) { return ok ? BuiltinResult::satisfied() : BuiltinResult::unsatisfied(); };
  switch (b) {
    case Builtin::Sum: return BuiltinResult::of(rdf::Term::number(*x + *y));
    case Builtin::Difference: return BuiltinResult::of(rdf::Term::number(*x - *y));
    case Builtin::Product: return BuiltinResult::of(rdf::Term::number(*x * *y));
    case Builtin::Quotient: {
      auto q = rdf::Numeric::divide(*x, *y);
      return q ? BuiltinResult::of(rdf::Term::number(*q)) : BuiltinResult::unsatisfied();
    }
    case Builtin::GreaterThan: return test(*x > *y);
    case Builtin::LessThan: return test(*x < *y);
    case Builtin::NotGreaterThan: return test(*x <= *y);
    case Builtin::NotLessThan: return test(*x >= *y);
    case Builtin::EqualTo: return test(*x == *y);
  }
  return BuiltinResult::unsatisfied();
}

}  // namespace virtrep::rules
