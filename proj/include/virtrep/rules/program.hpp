#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "virtrep/rdf/pattern.hpp"

namespace virtrep::rules {

using rdf::PatternTerm;
using rdf::TriplePattern;

inline constexpr std::string_view kProgramMediaType = "text/n3";

/// A seed HTTP request from the program's `http:` facts. Only GET exists.
struct RequestDirective {
  std::string method = "GET";
  std::string target;  // absolute IRI

  friend bool operator==(const RequestDirective&, const RequestDirective&) = default;
};

enum class Builtin {
  Sum,
  Difference,
  Product,
  Quotient,
  GreaterThan,
  LessThan,
  NotGreaterThan,
  NotLessThan,
  EqualTo,
};

std::optional<Builtin> builtin_from_iri(std::string_view iri);
std::string_view builtin_name(Builtin b);
/// Arithmetic builtins bind an output; the rest only test their inputs.
bool is_arithmetic(Builtin b);

/// `( ?a ?b ) math:sum ?c` or `?a math:lessThan ?b`.
struct BuiltinAtom {
  Builtin builtin;
  std::vector<PatternTerm> arguments;
  /// Arithmetic result. A constant, or a variable already bound when the
  /// atom runs, turns the atom into an equality test.
  std::optional<PatternTerm> output;
};

using BodyAtom = std::variant<TriplePattern, BuiltinAtom>;

struct Rule {
  std::vector<BodyAtom> body;
  std::vector<TriplePattern> head;

  std::vector<TriplePattern> patterns() const;
  std::vector<BuiltinAtom> builtins() const;
};

struct Program {
  std::vector<RequestDirective> requests;
  std::vector<Rule> rules;
};

struct Violation {
  enum class Kind { UnsafeHeadVariable, UnboundBuiltinInput, BuiltinArity };

  std::size_t rule = 0;
  Kind kind = Kind::UnsafeHeadVariable;
  std::string variable;  // empty for arity problems
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

/// Empty iff every rule is safe (head variables bound by the body) and its
/// builtins can be ordered so each input is bound before it is used.
std::vector<Violation> validate_program(const Program& p);

/// Builtins of `rule` in an evaluable order; requires a valid rule.
std::vector<BuiltinAtom> evaluation_order(const Rule& rule);

class SafetyError : public std::runtime_error {
 public:
  explicit SafetyError(Violation v);
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

/// Parses the N3 program subset: prefixes, `[] http:mthd httpm:GET ;
/// http:requestURI <iri> .` request facts, `{ body } => { head } .` rules
/// and plain ground facts (kept as one rule with an empty body).
/// Throws rdf::SyntaxError or SafetyError.
Program parse_program(std::string_view text, std::string_view base = {});

}  // namespace virtrep::rules
