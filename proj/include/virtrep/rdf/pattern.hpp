#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "virtrep/rdf/graph.hpp"

namespace virtrep::rdf {

struct Variable {
  std::string name;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;

  bool is_ground() const;
  /// Variable names in subject, predicate, object order (may repeat).
  std::vector<std::string> variables() const;
  std::string to_string() const;

  friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
};

/// Variable name -> term. A variable maps to at most one term.
using Binding = std::map<std::string, Term>;

/// Term bound to `t` under `b`, or nullopt for an unbound variable.
std::optional<Term> resolve(const PatternTerm& t, const Binding& b);

/// Instantiates a pattern; nullopt if any variable is unbound or the result
/// is not a well-formed triple.
std::optional<Triple> instantiate(const TriplePattern& p, const Binding& b);

/// Every binding of the patterns' variables whose instantiation lies in `g`.
/// Sorted and duplicate-free. An empty pattern list yields one empty binding.
std::vector<Binding> match_bgp(std::span<const TriplePattern> patterns, const Graph& g);

namespace detail {

/// Backtracking join where pattern i is matched against sources[i].
/// Calls `emit` once per complete extension of `initial` (may repeat).
void join(std::span<const TriplePattern> patterns, std::span<const Graph* const> sources,
          const Binding& initial, const std::function<void(const Binding&)>& emit);

}  // namespace detail

}  // namespace virtrep::rdf
