#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support/generators.hpp"
#include "virtrep/rdf/pattern.hpp"

using namespace virtrep::rdf;
using virtrep::test_support::ex;
using virtrep::test_support::Generator;

namespace {

// Enumerates every assignment of the variables to terms of the graph and
// keeps those whose instantiation is contained in the graph.
std::vector<Binding> brute_force_bgp(const std::vector<TriplePattern>& ps, const Graph& g) {
  std::set<std::string> vars;
  for (const auto& p : ps)
    for (auto& v : p.variables()) vars.insert(v);
  std::set<Term> universe;
  for (const auto& t : g) {
    universe.insert(t.subject);
    universe.insert(t.predicate);
    universe.insert(t.object);
  }
  std::vector<std::string> names(vars.begin(), vars.end());
  std::vector<Term> terms(universe.begin(), universe.end());
  std::vector<Binding> out;
  if (terms.empty() && !names.empty()) return out;
  std::vector<std::size_t> idx(names.size(), 0);
  while (true) {
    Binding b;
    for (std::size_t i = 0; i < names.size(); ++i) b[names[i]] = terms[idx[i]];
    bool ok = std::all_of(ps.begin(), ps.end(), [&](const TriplePattern& p) {
      auto t = instantiate(p, b);
      return t && g.contains(*t);
    });
    if (ok) out.push_back(b);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == terms.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

PatternTerm random_position(Generator& gen, const std::vector<std::string>& vars, const std::vector<Term>& consts) {
  if (gen.chance(0.6)) return Variable{gen.pick(vars)};
  return gen.pick(consts);
}

}  // namespace

TEST(Pattern, Instantiate) {
  TriplePattern p{Variable{"s"}, ex("p"), Variable{"o"}};
  EXPECT_FALSE(instantiate(p, {{"s", ex("a")}}));
  EXPECT_EQ(instantiate(p, {{"s", ex("a")}, {"o", Term::integer(1)}}), (Triple{ex("a"), ex("p"), Term::integer(1)}));
  // A literal in subject position is not a well-formed triple.
  EXPECT_FALSE(instantiate(p, {{"s", Term::integer(1)}, {"o", ex("a")}}));
  EXPECT_TRUE((TriplePattern{ex("a"), ex("p"), ex("b")}.is_ground()));
}

TEST(Pattern, MatchExamples) {
  Graph g{{ex("a"), ex("p"), ex("b")}, {ex("b"), ex("p"), ex("c")}, {ex("c"), ex("p"), ex("c")}};
  std::vector<TriplePattern> chain{{Variable{"x"}, ex("p"), Variable{"y"}}, {Variable{"y"}, ex("p"), Variable{"z"}}};
  auto got = match_bgp(chain, g);
  EXPECT_EQ(got.size(), 3u);  // a-b-c, b-c-c, c-c-c
  std::vector<TriplePattern> loop{{Variable{"x"}, ex("p"), Variable{"x"}}};
  ASSERT_EQ(match_bgp(loop, g).size(), 1u);
  EXPECT_EQ(match_bgp(loop, g)[0].at("x"), ex("c"));
  EXPECT_EQ(match_bgp({}, g), std::vector<Binding>{Binding{}});
  EXPECT_TRUE(match_bgp(chain, Graph{}).empty());
}

// Property: the indexed join returns exactly the brute-force solutions.
TEST(Pattern, JoinAgreesWithBruteForce) {
  Generator gen(42);
  std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 150; ++i) {
    Graph g = gen.graph(12, 2);
    std::vector<Term> consts{ex("n0"), ex("n1"), ex("p"), ex("q"), Term::integer(3)};
    std::vector<TriplePattern> ps;
    int n = gen.uniform(1, 3);
    for (int k = 0; k < n; ++k) {
      ps.push_back({random_position(gen, vars, consts), gen.chance(0.3) ? PatternTerm(Variable{gen.pick(vars)})
                                                                        : PatternTerm(gen.pick(consts)),
                    random_position(gen, vars, consts)});
    }
    EXPECT_EQ(match_bgp(ps, g), brute_force_bgp(ps, g)) << "case " << i;
  }
}
