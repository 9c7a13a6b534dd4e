#pragma once

// Random instance generators shared by property tests and the acceptance
// suite. Everything is driven by an explicit seed so failures reproduce.

#include <random>
#include <string>
#include <vector>

#include "virtrep/rdf/graph.hpp"
#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::test_support {

inline const std::string kEx = "http://example.org/";

inline rdf::Term ex(const std::string& local) { return rdf::Term::iri(kEx + local); }

class Generator {
 public:
  explicit Generator(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }
  std::mt19937& engine() { return rng_; }

  /// Literal covering every supported datatype and awkward lexical content.
  rdf::Term literal() {
    switch (uniform(0, 8)) {
      case 0: return rdf::Term::literal("plain " + std::to_string(uniform(0, 9)));
      case 1: return rdf::Term::literal("quote \" back\\slash\nnewline\ttab");
      case 2: return rdf::Term::lang_literal("hallo", pick<std::string>({"de", "en-GB"}));
      case 3: return rdf::Term::integer(uniform(-50, 50));
      case 4: return rdf::Term::literal(std::to_string(uniform(-99, 99)) + "." + std::to_string(uniform(0, 99)),
                                        rdf::xsd::kDecimal);
      case 5: return rdf::Term::literal(std::to_string(uniform(1, 9)) + "." + std::to_string(uniform(0, 9)) + "E" +
                                            std::to_string(uniform(-3, 3)),
                                        rdf::xsd::kDouble);
      case 6: return rdf::Term::boolean(chance(0.5));
      case 7: return rdf::Term::literal("2024-01-0" + std::to_string(uniform(1, 9)),
                                        "http://www.w3.org/2001/XMLSchema#date");
      default: return rdf::Term::literal("ünïcødé ✓");
    }
  }

  /// Graph with up to `max_triples` triples and at most `max_blanks` blank nodes.
  rdf::Graph graph(int max_triples, int max_blanks) {
    int blanks = uniform(0, max_blanks);
    std::vector<rdf::Term> nodes;
    for (int i = 0; i < 5; ++i) nodes.push_back(ex("n" + std::to_string(i)));
    nodes.push_back(rdf::Term::iri("http://other.example/path/with-dash_" + std::to_string(uniform(0, 3))));
    nodes.push_back(rdf::Term::iri("urn:uuid:" + std::to_string(uniform(1000, 9999))));
    std::vector<rdf::Term> blank_nodes;
    for (int i = 0; i < blanks; ++i) blank_nodes.push_back(rdf::Term::blank("g" + std::to_string(i)));
    std::vector<rdf::Term> predicates = {ex("p"), ex("q"), ex("r"), rdf::Term::iri(std::string(rdf::rdfns::kType))};

    rdf::Graph g;
    int n = uniform(0, max_triples);
    auto subject = [&]() -> rdf::Term {
      if (!blank_nodes.empty() && chance(0.5)) return pick(blank_nodes);
      return pick(nodes);
    };
    for (int i = 0; i < n; ++i) {
      rdf::Term s = subject();
      rdf::Term o = chance(0.4) ? literal() : subject();
      g.insert({s, pick(predicates), o});
    }
    // Make every declared blank node appear at least once.
    for (const auto& b : blank_nodes) g.insert({b, ex("p"), pick(nodes)});
    return g;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace virtrep::test_support
