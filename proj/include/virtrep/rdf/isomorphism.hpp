#pragma once

#include <cstddef>

#include "virtrep/rdf/graph.hpp"

namespace virtrep::rdf {

enum class Isomorphism { Isomorphic, NotIsomorphic, Undecided };

inline constexpr std::size_t kDefaultIsomorphismBlankLimit = 20;

/// Decides whether some bijection between the blank nodes of `a` and `b`
/// maps `a` exactly onto `b`. Graphs with more than `max_blank_nodes` blank
/// nodes each are reported as Undecided unless a cheap invariant already
/// separates them.
Isomorphism graph_isomorphic(const Graph& a, const Graph& b,
                             std::size_t max_blank_nodes = kDefaultIsomorphismBlankLimit);

inline bool isomorphic(const Graph& a, const Graph& b) {
  return graph_isomorphic(a, b) == Isomorphism::Isomorphic;
}

}  // namespace virtrep::rdf
