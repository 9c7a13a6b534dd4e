#include "virtrep/rdf/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace virtrep::rdf {

namespace {

struct Side {
  const Graph* graph = nullptr;
  std::vector<Term> blanks;             // index -> blank node
  std::map<Term, std::size_t> index;    // blank node -> index
  std::vector<std::vector<const Triple*>> incident;
  std::vector<std::size_t> color;
};

void collect(Side& side, const Graph& g) {
  side.graph = &g;
  auto add = [&](const Term& t, const Triple* tr) {
    if (!t.is_blank()) return;
    auto [it, inserted] = side.index.try_emplace(t, side.blanks.size());
    if (inserted) {
      side.blanks.push_back(t);
      side.incident.emplace_back();
    }
    auto& inc = side.incident[it->second];
    if (inc.empty() || inc.back() != tr) inc.push_back(tr);
  };
  for (const auto& t : g) {
    add(t.subject, &t);
    add(t.object, &t);
  }
}

bool is_ground(const Triple& t) { return !t.subject.is_blank() && !t.object.is_blank(); }

// Renders one position of an incident triple relative to blank node `self`.
std::string slot(const Side& side, const Term& t, std::size_t self, bool use_colors) {
  if (!t.is_blank()) return t.to_string();
  std::size_t i = side.index.at(t);
  if (i == self) return "@self";
  return use_colors ? "@" + std::to_string(side.color[i]) : "@blank";
}

// Iterated colour refinement over both graphs with one shared palette so
// colours are comparable across graphs.
void refine(Side& a, Side& b) {
  std::map<std::string, std::size_t> palette;
  auto signature = [&](const Side& s, std::size_t i, bool use_colors) {
    std::vector<std::string> parts;
    for (const Triple* t : s.incident[i]) {
      parts.push_back(slot(s, t->subject, i, use_colors) + " " + t->predicate.to_string() + " " +
                      slot(s, t->object, i, use_colors));
    }
    std::sort(parts.begin(), parts.end());
    std::string sig = use_colors ? std::to_string(s.color[i]) + "|" : "|";
    for (const auto& p : parts) sig += p + "\n";
    return sig;
  };
  auto recolor = [&](bool use_colors) {
    std::vector<std::string> sa, sb;
    for (std::size_t i = 0; i < a.blanks.size(); ++i) sa.push_back(signature(a, i, use_colors));
    for (std::size_t i = 0; i < b.blanks.size(); ++i) sb.push_back(signature(b, i, use_colors));
    palette.clear();
    auto assign = [&](Side& s, const std::vector<std::string>& sigs) {
      s.color.assign(sigs.size(), 0);
      for (std::size_t i = 0; i < sigs.size(); ++i) {
        s.color[i] = palette.try_emplace(sigs[i], palette.size()).first->second;
      }
    };
    assign(a, sa);
    assign(b, sb);
    return palette.size();
  };
  std::size_t classes = recolor(false);
  for (std::size_t round = 0; round < a.blanks.size(); ++round) {
    std::size_t next = recolor(true);
    if (next == classes) break;
    classes = next;
  }
}

class Matcher {
 public:
  Matcher(const Side& a, const Side& b) : a_(a), b_(b), forward_(a.blanks.size(), kNone), used_(b.blanks.size()) {
    for (std::size_t i = 0; i < a.blanks.size(); ++i) order_.push_back(i);
    std::map<std::size_t, std::size_t> class_size;
    for (auto c : a.color) ++class_size[c];
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return class_size[a.color[x]] < class_size[a.color[y]];
    });
  }

  bool run() { return assign(0); }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::optional<Term> image(const Term& t) const {
    if (!t.is_blank()) return t;
    std::size_t m = forward_[a_.index.at(t)];
    if (m == kNone) return std::nullopt;
    return b_.blanks[m];
  }

  bool consistent(std::size_t x) const {
    for (const Triple* t : a_.incident[x]) {
      auto s = image(t->subject);
      auto o = image(t->object);
      if (!s || !o) continue;
      if (!b_.graph->contains(Triple{*s, t->predicate, *o})) return false;
    }
    return true;
  }

  bool assign(std::size_t depth) {
    if (depth == order_.size()) return true;
    std::size_t x = order_[depth];
    for (std::size_t y = 0; y < b_.blanks.size(); ++y) {
      if (used_[y] || b_.color[y] != a_.color[x]) continue;
      forward_[x] = y;
      used_[y] = true;
      if (consistent(x) && assign(depth + 1)) return true;
      used_[y] = false;
      forward_[x] = kNone;
    }
    return false;
  }

  const Side& a_;
  const Side& b_;
  std::vector<std::size_t> forward_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
};

}  // namespace

Isomorphism graph_isomorphic(const Graph& a, const Graph& b, std::size_t max_blank_nodes) {
  if (a.size() != b.size()) return Isomorphism::NotIsomorphic;
  Side sa, sb;
  collect(sa, a);
  collect(sb, b);
  if (sa.blanks.size() != sb.blanks.size()) return Isomorphism::NotIsomorphic;
  for (const auto& t : a) {
    if (is_ground(t) && !b.contains(t)) return Isomorphism::NotIsomorphic;
  }
  if (sa.blanks.empty()) return Isomorphism::Isomorphic;

  refine(sa, sb);
  std::vector<std::size_t> ca = sa.color, cb = sb.color;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return Isomorphism::NotIsomorphic;
  if (sa.blanks.size() > max_blank_nodes) return Isomorphism::Undecided;

  return Matcher(sa, sb).run() ? Isomorphism::Isomorphic : Isomorphism::NotIsomorphic;
}

}  // namespace virtrep::rdf
