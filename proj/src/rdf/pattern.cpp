#include "virtrep/rdf/pattern.hpp"

#include <algorithm>

namespace virtrep::rdf {

namespace {

std::string render(const PatternTerm& t) {
  if (auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
  return std::get<Term>(t).to_string();
}

// Binds `slot` to `value`, or checks consistency when already bound.
bool unify(const PatternTerm& slot, const Term& value, Binding& b) {
  if (auto* term = std::get_if<Term>(&slot)) return *term == value;
  const auto& name = std::get<Variable>(slot).name;
  auto [it, inserted] = b.try_emplace(name, value);
  return inserted || it->second == value;
}

int bound_positions(const TriplePattern& p, const Binding& b) {
  int n = 0;
  for (const auto* slot : {&p.subject, &p.predicate, &p.object}) {
    if (resolve(*slot, b)) ++n;
  }
  return n;
}

void join_step(std::span<const TriplePattern> patterns, std::span<const Graph* const> sources,
               std::vector<bool>& done, std::size_t remaining, Binding& binding,
               const std::function<void(const Binding&)>& emit) {
  if (remaining == 0) {
    emit(binding);
    return;
  }
  // Most-bound pattern first.
  std::size_t best = patterns.size();
  int best_score = -1;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (done[i]) continue;
    int score = bound_positions(patterns[i], binding);
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  const TriplePattern& p = patterns[best];
  done[best] = true;
  auto candidates = sources[best]->match(resolve(p.subject, binding), resolve(p.predicate, binding),
                                         resolve(p.object, binding));
  for (const auto& t : candidates) {
    Binding saved = binding;
    if (unify(p.subject, t.subject, binding) && unify(p.predicate, t.predicate, binding) &&
        unify(p.object, t.object, binding)) {
      join_step(patterns, sources, done, remaining - 1, binding, emit);
    }
    binding = std::move(saved);
  }
  done[best] = false;
}

}  // namespace

bool TriplePattern::is_ground() const { return variables().empty(); }

std::vector<std::string> TriplePattern::variables() const {
  std::vector<std::string> out;
  for (const auto* slot : {&subject, &predicate, &object}) {
    if (auto* v = std::get_if<Variable>(slot)) out.push_back(v->name);
  }
  return out;
}

std::string TriplePattern::to_string() const {
  return render(subject) + " " + render(predicate) + " " + render(object) + " .";
}

std::optional<Term> resolve(const PatternTerm& t, const Binding& b) {
  if (auto* term = std::get_if<Term>(&t)) return *term;
  auto it = b.find(std::get<Variable>(t).name);
  if (it == b.end()) return std::nullopt;
  return it->second;
}

std::optional<Triple> instantiate(const TriplePattern& p, const Binding& b) {
  auto s = resolve(p.subject, b);
  auto pr = resolve(p.predicate, b);
  auto o = resolve(p.object, b);
  if (!s || !pr || !o) return std::nullopt;
  Triple t{std::move(*s), std::move(*pr), std::move(*o)};
  if (!t.well_formed()) return std::nullopt;
  return t;
}

std::vector<Binding> match_bgp(std::span<const TriplePattern> patterns, const Graph& g) {
  std::vector<const Graph*> sources(patterns.size(), &g);
  std::vector<Binding> out;
  detail::join(patterns, sources, Binding{}, [&](const Binding& b) { out.push_back(b); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

void join(std::span<const TriplePattern> patterns, std::span<const Graph* const> sources,
          const Binding& initial, const std::function<void(const Binding&)>& emit) {
  std::vector<bool> done(patterns.size(), false);
  Binding binding = initial;
  join_step(patterns, sources, done, patterns.size(), binding, emit);
}

}  // namespace detail

}  // namespace virtrep::rdf
