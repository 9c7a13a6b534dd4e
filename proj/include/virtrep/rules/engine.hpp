#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

#include "virtrep/rdf/graph.hpp"
#include "virtrep/rules/program.hpp"

namespace virtrep::rules {

/// Executes a program's request directives and returns the merged response
/// graph. Failures are reported by throwing.
using Fetcher = std::function<rdf::Graph(std::span<const RequestDirective>)>;

class NonTermination : public std::runtime_error {
 public:
  explicit NonTermination(std::size_t limit);
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

struct EvaluationOptions {
  /// Rounds that may still add triples before evaluation gives up.
  std::size_t max_rounds = 100;
};

/// Dispatches the program's requests through `fetcher`, merges the
/// responses with `seed` and forward-chains the rules to a fixpoint.
/// Returns fetched ∪ seed ∪ derived.
rdf::Graph evaluate(const Program& program, const rdf::Graph& seed, const Fetcher& fetcher,
                    EvaluationOptions options = {});

/// Semi-naive forward chaining only; request directives are ignored.
rdf::Graph saturate(const Program& program, const rdf::Graph& base, EvaluationOptions options = {});

}  // namespace virtrep::rules
