#include "virtrep/rdf/graph.hpp"

#include <algorithm>

namespace virtrep::rdf {

std::string Triple::to_string() const {
  return subject.to_string() + " " + predicate.to_string() + " " + object.to_string() + " .";
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto accept = [&](const Triple& t) {
    return (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  if (s) {
    // Subject-major ordering: scan the contiguous run for this subject.
    Triple probe{*s, Term{}, Term{}};
    for (auto it = triples_.lower_bound(probe); it != triples_.end() && it->subject == *s; ++it) {
      if (accept(*it)) out.push_back(*it);
    }
    return out;
  }
  for (const auto& t : triples_) {
    if (accept(t)) out.push_back(t);
  }
  return out;
}

std::vector<Term> Graph::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  for (auto& t : match(s, p, std::nullopt)) out.push_back(std::move(t.object));
  return out;
}

Graph merge(const Graph& a, const Graph& b) {
  Graph out = a;
  out.insert(b);
  return out;
}

Graph without_predicates(const Graph& g, std::initializer_list<std::string_view> predicates) {
  Graph out;
  for (const auto& t : g) {
    bool drop = std::any_of(predicates.begin(), predicates.end(),
                            [&](std::string_view p) { return t.predicate.is_iri() && t.predicate.value() == p; });
    if (!drop) out.insert(t);
  }
  return out;
}

}  // namespace virtrep::rdf
