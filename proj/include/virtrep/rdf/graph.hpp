#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "virtrep/rdf/term.hpp"

namespace virtrep::rdf {

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  /// Subject is an IRI or blank node and predicate is an IRI.
  bool well_formed() const {
    return (subject.is_iri() || subject.is_blank()) && predicate.is_iri();
  }
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// A set of triples, ordered subject-predicate-object.
class Graph {
 public:
  using const_iterator = std::set<Triple>::const_iterator;

  Graph() = default;
  Graph(std::initializer_list<Triple> triples) : triples_(triples) {}

  /// Returns false if the triple was already present.
  bool insert(Triple t) { return triples_.insert(std::move(t)).second; }
  void insert(const Graph& other) { triples_.insert(other.begin(), other.end()); }
  bool erase(const Triple& t) { return triples_.erase(t) > 0; }
  bool contains(const Triple& t) const { return triples_.contains(t); }

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  /// All triples matching the given positions; an empty optional is a wildcard.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;
  /// Objects of (s, p, *).
  std::vector<Term> objects(const Term& s, const Term& p) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::set<Triple> triples_;
};

/// Set union. Blank nodes are standardized apart when parsed, so no renaming
/// is needed.
Graph merge(const Graph& a, const Graph& b);

/// Graph minus every triple matching the predicate IRIs given.
Graph without_predicates(const Graph& g, std::initializer_list<std::string_view> predicates);

}  // namespace virtrep::rdf
