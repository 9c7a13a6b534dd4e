#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "support/generators.hpp"
#include "support/rule_oracle.hpp"
#include "virtrep/rdf/turtle.hpp"
#include "virtrep/rules/builtins.hpp"
#include "virtrep/rules/engine.hpp"

using namespace virtrep;
using namespace virtrep::rules;
using rdf::Graph;
using rdf::Term;
using rdf::Variable;
using test_support::ex;
using test_support::Generator;
using test_support::naive_saturate;
using test_support::random_instance;

namespace {

const std::string kBase = "http://localhost:8080/vr/";
const std::string kDemo = "http://purl.org/virtrep/demo#";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph gripper_state(long long arm_count, long long claw_count) {
  Term arm = Term::iri("http://localhost:8081/gripper/arm/");
  Term claw = Term::iri("http://localhost:8081/gripper/claw/");
  Term type = Term::iri(std::string(rdf::rdfns::kType));
  Term count = Term::iri(kDemo + "actionCount");
  return Graph{{arm, type, Term::iri(kDemo + "Arm")},
               {arm, count, Term::integer(arm_count)},
               {claw, type, Term::iri(kDemo + "Claw")},
               {claw, count, Term::integer(claw_count)}};
}

// Expected wear as a decimal string, computed from integer arithmetic.
std::string thousandths(long long v) {
  std::string s = std::to_string(v / 1000) + "." + std::to_string(1000 + v % 1000).substr(1);
  while (s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}
std::string linear_wear(long long n) { return thousandths(std::min(std::max(n - 10, 0LL), 10LL) * 100); }
std::string cubic_wear(long long n) {
  long long d = std::max(n - 10, 0LL);
  return thousandths(std::min(d * d * d, 1000LL));
}

std::vector<Term> abrasion_of(const Graph& g) {
  return g.objects(Term::iri(kBase + "shaft"), Term::iri(kDemo + "abrasion"));
}

bool subset(const Graph& a, const Graph& b) {
  return std::all_of(a.begin(), a.end(), [&](const rdf::Triple& t) { return b.contains(t); });
}

}  // namespace

TEST(Builtins, Arithmetic) {
  auto run = [](Builtin b, Term x, Term y) {
    std::vector<Term> in{std::move(x), std::move(y)};
    return apply_builtin(b, in);
  };
  EXPECT_EQ(*run(Builtin::Sum, Term::integer(2), Term::integer(3)).value, Term::integer(5));
  EXPECT_EQ(*run(Builtin::Difference, Term::integer(15), Term::integer(10)).value, Term::integer(5));
  EXPECT_EQ(*run(Builtin::Product, Term::integer(5), Term::literal("0.1", rdf::xsd::kDecimal)).value,
            Term::literal("0.5", rdf::xsd::kDecimal));
  EXPECT_EQ(*run(Builtin::Quotient, Term::integer(1), Term::integer(4)).value, Term::literal("0.25", rdf::xsd::kDecimal));
  EXPECT_EQ(run(Builtin::Quotient, Term::integer(1), Term::integer(0)).status, BuiltinResult::Status::Unsatisfied);
  EXPECT_EQ(run(Builtin::LessThan, Term::integer(9), Term::integer(10)).status, BuiltinResult::Status::Satisfied);
  EXPECT_EQ(run(Builtin::NotLessThan, Term::integer(9), Term::integer(10)).status, BuiltinResult::Status::Unsatisfied);
  EXPECT_EQ(run(Builtin::EqualTo, Term::integer(1), Term::literal("1.0", rdf::xsd::kDecimal)).status,
            BuiltinResult::Status::Satisfied);
  EXPECT_EQ(run(Builtin::GreaterThan, Term::literal("1.5E0", rdf::xsd::kDouble), Term::integer(1)).status,
            BuiltinResult::Status::Satisfied);
  EXPECT_THROW(run(Builtin::Sum, Term::literal("x"), Term::integer(1)), TypeMismatch);
  std::vector<Term> one{Term::integer(1)};
  EXPECT_THROW(apply_builtin(Builtin::Sum, one), TypeMismatch);
}

TEST(Program, ParsesRequestsRulesAndFacts) {
  Program p = parse_program(read_file(VIRTREP_DEMO_DIR "/eq1.n3"), kBase);
  ASSERT_EQ(p.requests.size(), 2u);
  EXPECT_EQ(p.requests[0].method, "GET");
  EXPECT_EQ(p.requests[0].target, "http://localhost:8081/gripper/arm/");
  EXPECT_EQ(p.requests[1].target, "http://localhost:8081/gripper/claw/");
  EXPECT_EQ(p.rules.size(), 3u);
  EXPECT_TRUE(validate_program(p).empty());

  Program facts = parse_program("@prefix ex: <http://example.org/> . ex:a ex:p ex:b . ex:b ex:p 3 .");
  ASSERT_EQ(facts.rules.size(), 1u);
  EXPECT_TRUE(facts.rules[0].body.empty());
  EXPECT_EQ(saturate(facts, {}).size(), 2u);
}

TEST(Program, RejectsInvalidPrograms) {
  const std::string prefixes =
      "@prefix ex: <http://example.org/> . @prefix math: <http://www.w3.org/2000/10/swap/math#> .\n"
      "@prefix http: <http://www.w3.org/2011/http#> . @prefix httpm: <http://www.w3.org/2011/http-methods#> .\n";
  try {
    parse_program(prefixes + "{ ?x ex:p ?y . } => { ?x ex:q ?z . } .");
    FAIL();
  } catch (const SafetyError& e) {
    EXPECT_EQ(e.violation().kind, Violation::Kind::UnsafeHeadVariable);
    EXPECT_EQ(e.violation().variable, "z");
  }
  try {
    parse_program(prefixes + "{ ?x ex:p ?y . ?k math:lessThan 3 . } => { ?x ex:q ?y . } .");
    FAIL();
  } catch (const SafetyError& e) {
    EXPECT_EQ(e.violation().kind, Violation::Kind::UnboundBuiltinInput);
    EXPECT_EQ(e.violation().variable, "k");
  }
  EXPECT_THROW(parse_program(prefixes + "[] http:mthd httpm:POST ; http:requestURI <http://x/> ."), rdf::SyntaxError);
  EXPECT_THROW(parse_program(prefixes + "[] http:mthd httpm:GET ."), rdf::SyntaxError);
  EXPECT_THROW(parse_program(prefixes + "[] http:mthd httpm:GET ; http:requestURI <rel> ."), rdf::SyntaxError);
  EXPECT_THROW(parse_program(prefixes + "{ ?x ex:p ?y . } => { (?y 1) math:sum ?z . } ."), rdf::SyntaxError);
  EXPECT_THROW(parse_program(prefixes + "{ ?x ex:p ?y } => { ?x ex:q ?y }"), rdf::SyntaxError);
  EXPECT_THROW(parse_program(prefixes + "{ ?x ex:p ?y . } => { ?x ex:q _:b . } ."), rdf::SyntaxError);
}

// Chained arithmetic is ordered by data dependency, not text order.
TEST(Program, BuiltinsOrderedByDependency) {
  Program p = parse_program(
      "@prefix ex: <http://example.org/> . @prefix math: <http://www.w3.org/2000/10/swap/math#> .\n"
      "{ ?x ex:v ?n . ( ?m 2 ) math:product ?k . ( ?n 1 ) math:sum ?m . } => { ?x ex:w ?k . } .");
  Graph out = saturate(p, {{ex("a"), ex("v"), Term::integer(4)}});
  EXPECT_TRUE(out.contains({ex("a"), ex("w"), Term::integer(10)}));
}

TEST(Engine, LinearWearMatchesHandComputedValues) {
  Program p = parse_program(read_file(VIRTREP_DEMO_DIR "/eq1.n3"), kBase);
  const std::map<long long, std::string> expected = {{0, "0.0"}, {5, "0.0"}, {9, "0.0"}, {10, "0.0"},
                                                     {15, "0.5"}, {20, "1.0"}, {30, "1.0"}};
  for (const auto& [n, value] : expected) {
    EXPECT_EQ(linear_wear(n), value);
    std::size_t calls = 0;
    Graph out = evaluate(p, {}, [&](std::span<const RequestDirective> rs) {
      calls += rs.size();
      return gripper_state(n, 3);
    });
    EXPECT_EQ(calls, 2u);
    auto a = abrasion_of(out);
    ASSERT_EQ(a.size(), 1u) << "n=" << n;
    EXPECT_EQ(a[0], Term::literal(value, rdf::xsd::kDecimal)) << "n=" << n;
  }
}

TEST(Engine, CubicWearMatchesHandComputedValues) {
  Program p = parse_program(read_file(VIRTREP_DEMO_DIR "/eq2.n3"), kBase);
  for (long long n : {0LL, 9LL, 10LL, 11LL, 15LL, 19LL, 20LL, 30LL}) {
    Graph out = evaluate(p, {}, [&](auto) { return gripper_state(n, 0); });
    auto a = abrasion_of(out);
    ASSERT_EQ(a.size(), 1u) << "n=" << n;
    EXPECT_EQ(a[0], Term::literal(cubic_wear(n), rdf::xsd::kDecimal)) << "n=" << n;
  }
  EXPECT_EQ(cubic_wear(15), "0.125");
}

// Property: for every count the linear program agrees with integer arithmetic.
TEST(Engine, LinearWearAgreesWithFormula) {
  Program p = parse_program(read_file(VIRTREP_DEMO_DIR "/eq1.n3"), kBase);
  for (long long n = 0; n <= 40; ++n) {
    Graph out = saturate(p, gripper_state(n, n));
    auto a = abrasion_of(out);
    ASSERT_EQ(a.size(), 1u) << "n=" << n;
    EXPECT_EQ(a[0].value(), linear_wear(n)) << "n=" << n;
  }
}

TEST(Engine, NonNumericDataDoesNotFire) {
  Program p = parse_program(read_file(VIRTREP_DEMO_DIR "/eq1.n3"), kBase);
  Graph g = gripper_state(0, 0);
  g.erase({Term::iri("http://localhost:8081/gripper/arm/"), Term::iri(kDemo + "actionCount"), Term::integer(0)});
  g.insert({Term::iri("http://localhost:8081/gripper/arm/"), Term::iri(kDemo + "actionCount"), Term::literal("many")});
  EXPECT_TRUE(abrasion_of(saturate(p, g)).empty());
}

TEST(Engine, RecursionReachesFixpoint) {
  Program p = parse_program(
      "@prefix ex: <http://example.org/> .\n"
      "{ ?x ex:p ?y . } => { ?x ex:reach ?y . } .\n"
      "{ ?x ex:reach ?y . ?y ex:p ?z . } => { ?x ex:reach ?z . } .");
  Graph g;
  for (int i = 0; i < 30; ++i) g.insert({ex("v" + std::to_string(i)), ex("p"), ex("v" + std::to_string(i + 1))});
  Graph out = saturate(p, g);
  EXPECT_EQ(out.match(std::nullopt, ex("reach"), std::nullopt).size(), 30u * 31u / 2u);
}

TEST(Engine, CounterDoesNotTerminate) {
  Program p = parse_program(
      "@prefix ex: <http://example.org/> . @prefix math: <http://www.w3.org/2000/10/swap/math#> .\n"
      "{ ?x ex:n ?k . ( ?k 1 ) math:sum ?m . } => { ?x ex:n ?m . } .");
  Graph seed{{ex("a"), ex("n"), Term::integer(0)}};
  try {
    saturate(p, seed, {.max_rounds = 25});
    FAIL();
  } catch (const NonTermination& e) {
    EXPECT_EQ(e.limit(), 25u);
  }
}

TEST(Engine, RequestsNeedAFetcher) {
  Program p = parse_program(read_file(VIRTREP_DEMO_DIR "/eq1.n3"), kBase);
  EXPECT_THROW(evaluate(p, {}, nullptr), std::invalid_argument);
  // Fetch failures propagate untouched.
  EXPECT_THROW(evaluate(p, {}, [](auto) -> Graph { throw std::runtime_error("down"); }), std::runtime_error);
}

// Property: semi-naive evaluation equals the naive fixpoint.
TEST(Engine, AgreesWithNaiveOracle) {
  Generator gen(2024);
  int nontrivial = 0;
  for (int i = 0; i < 300; ++i) {
    auto inst = random_instance(gen);
    ASSERT_TRUE(validate_program(inst.program).empty()) << "case " << i;
    Graph expected = naive_saturate(inst.program, inst.seed);
    Graph got = saturate(inst.program, inst.seed);
    nontrivial += expected.size() > inst.seed.size();
    ASSERT_EQ(got, expected) << "case " << i;
  }
  EXPECT_GT(nontrivial, 50);
}

// Properties: saturation is idempotent, monotone in the input, and does not
// depend on rule order.
TEST(Engine, FixpointProperties) {
  Generator gen(77);
  for (int i = 0; i < 200; ++i) {
    auto inst = random_instance(gen);
    Graph out = saturate(inst.program, inst.seed);
    EXPECT_TRUE(subset(inst.seed, out));
    EXPECT_EQ(saturate(inst.program, out), out);

    Graph bigger = inst.seed;
    bigger.insert(random_instance(gen).seed);
    EXPECT_TRUE(subset(out, saturate(inst.program, bigger)));

    Program shuffled = inst.program;
    std::shuffle(shuffled.rules.begin(), shuffled.rules.end(), gen.engine());
    for (auto& r : shuffled.rules) std::shuffle(r.body.begin(), r.body.end(), gen.engine());
    EXPECT_EQ(saturate(shuffled, inst.seed), out);
  }
}
