#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <random>
#include <thread>

#include "support/harness.hpp"
#include "virtrep/collect/collector.hpp"
#include "virtrep/net/rdf_http.hpp"
#include "virtrep/rdf/isomorphism.hpp"

using namespace virtrep;
using namespace virtrep::test_support;
using namespace std::chrono_literals;

namespace {

rdf::Term iri(std::string_view s) { return rdf::Term::iri(std::string(s)); }

std::string state_of(const rdf::Graph& g, const std::string& self) {
  auto v = g.objects(rdf::Term::iri(self), iri(rdf::saref::kHasState));
  return v.size() == 1 ? v[0].value() : "";
}

long long count_of(const rdf::Graph& g, const std::string& self) {
  auto v = g.objects(rdf::Term::iri(self), iri(rdf::demo::kActionCount));
  return v.size() == 1 ? std::stoll(v[0].value()) : -1;
}

/// A server answering every request with a fixed handler.
struct StubServer {
  net::HttpServer http;
  explicit StubServer(net::Handler h) : http(std::move(h)) { http.start(); }
  std::string url(const std::string& path) const { return http.origin() + path; }
};

net::Response turtle(std::string body) {
  net::Response r;
  r.headers.emplace("Content-Type", "text/turtle");
  r.body = std::move(body);
  return r;
}

std::string dead_origin() {
  net::HttpServer s([](const net::Request&) { return net::Response{}; });
  s.bind();
  std::string origin = s.origin();
  s.stop();
  return origin;
}

}  // namespace

// ---- simulator ----

TEST(Gripper, InitialState) {
  SimHarness sim;
  auto arm = parse_body(http_get(sim.component("arm")), sim.component("arm"));
  auto claw = parse_body(http_get(sim.component("claw")), sim.component("claw"));
  EXPECT_EQ(state_of(arm, sim.component("arm")), "up");
  EXPECT_EQ(count_of(arm, sim.component("arm")), 0);
  EXPECT_EQ(state_of(claw, sim.component("claw")), "opened");
  EXPECT_EQ(count_of(claw, sim.component("claw")), 0);
  EXPECT_TRUE(arm.contains({rdf::Term::iri(sim.component("arm")), iri(rdf::rdfns::kType), iri(rdf::demo::kArm)}));
}

TEST(Gripper, ContainerListsComponents) {
  SimHarness sim;
  auto r = http_get(sim.origin() + "/gripper/");
  ASSERT_EQ(r.status, 200);
  auto g = parse_body(r, sim.origin() + "/gripper/");
  auto members = g.objects(rdf::Term::iri(sim.origin() + "/gripper/"), iri(rdf::ldp::kContains));
  EXPECT_EQ(members.size(), 2u);
}

TEST(Gripper, FifteenMovesCountFifteen) {
  SimHarness sim;
  move_arm(sim, 15);
  auto g = parse_body(http_get(sim.component("arm")), sim.component("arm"));
  EXPECT_EQ(count_of(g, sim.component("arm")), 15);
  EXPECT_EQ(state_of(g, sim.component("arm")), "down");
}

TEST(Gripper, SameStateDoesNotCount) {
  SimHarness sim;
  EXPECT_EQ(set_state(sim, "arm", "up"), 204);
  EXPECT_EQ(sim.gripper.get("arm")->action_count, 0);
  EXPECT_EQ(set_state(sim, "claw", "closed"), 204);
  EXPECT_EQ(set_state(sim, "claw", "closed"), 204);
  EXPECT_EQ(sim.gripper.get("claw")->action_count, 1);
}

TEST(Gripper, RejectsBadUpdates) {
  SimHarness sim;
  EXPECT_EQ(set_state(sim, "arm", "sideways"), 422);
  EXPECT_EQ(set_state(sim, "claw", "up"), 422);
  EXPECT_EQ(http_put(sim.component("arm"), "text/turtle", "<> <https://w3id.org/saref#hasState> <http://x/> .").status,
            422);
  EXPECT_EQ(http_put(sim.component("arm"), "text/turtle", "<> <http://x/p> \"down\" .").status, 400);
  EXPECT_EQ(http_put(sim.component("arm"), "text/turtle",
                     "<> <https://w3id.org/saref#hasState> \"up\", \"down\" .")
                .status,
            400);
  EXPECT_EQ(http_put(sim.component("arm"), "text/turtle", "<> <p> ").status, 400);
  EXPECT_EQ(http_put(sim.component("arm"), "application/json", "{}").status, 415);
  EXPECT_EQ(http_get(sim.origin() + "/gripper/wrist/").status, 404);
  EXPECT_EQ(http_get(sim.origin() + "/elsewhere").status, 404);
  EXPECT_EQ(http_delete(sim.component("arm")).status, 405);
  EXPECT_EQ(sim.gripper.get("arm")->state, "up");
  EXPECT_EQ(sim.gripper.get("arm")->action_count, 0);
}

TEST(Gripper, GetHasNoSideEffects) {
  SimHarness sim;
  move_arm(sim, 3);
  auto first = http_get(sim.component("arm")).body;
  for (int i = 0; i < 10; ++i) EXPECT_EQ(http_get(sim.component("arm")).body, first);
  EXPECT_EQ(sim.gripper.get("arm")->action_count, 3);
}

// Concurrent writers: the counter equals the number of Changed updates.
TEST(Gripper, ConcurrentCounterMatchesChanges) {
  sim::Gripper g;
  std::atomic<long long> changed{0};
  std::vector<std::jthread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937 rng(t);
      for (int i = 0; i < 500; ++i) {
        if (g.set_state("arm", rng() % 2 ? "up" : "down") == sim::Gripper::Update::Changed) ++changed;
      }
    });
  }
  threads.clear();
  EXPECT_EQ(g.get("arm")->action_count, changed.load());
}

// ---- collector ----

TEST(Collector, FetchesComponent) {
  SimHarness sim;
  auto [g, entry] = collect::fetch_rdf(sim.component("arm"), {});
  EXPECT_EQ(entry.outcome, collect::FetchOutcome::Ok);
  EXPECT_EQ(entry.status, 200);
  EXPECT_EQ(entry.triple_count, 3u);
  EXPECT_EQ(state_of(g, sim.component("arm")), "up");
}

TEST(Collector, ClassifiesFailures) {
  auto [g1, dead] = collect::fetch_rdf(dead_origin() + "/x", {});
  EXPECT_EQ(dead.outcome, collect::FetchOutcome::ConnectError);
  EXPECT_TRUE(g1.empty());

  StubServer garbage([](const net::Request&) { return turtle("this is not turtle"); });
  auto [g2, bad] = collect::fetch_rdf(garbage.url("/"), {});
  EXPECT_EQ(bad.outcome, collect::FetchOutcome::ParseError);
  EXPECT_TRUE(g2.empty());

  StubServer missing([](const net::Request&) { return net::error_response(404, "NotFound", "gone"); });
  auto [g3, nf] = collect::fetch_rdf(missing.url("/"), {});
  EXPECT_EQ(nf.outcome, collect::FetchOutcome::HttpError);
  EXPECT_EQ(nf.status, 404);

  StubServer slow([](const net::Request&) {
    std::this_thread::sleep_for(600ms);
    return turtle("<a:s> <a:p> <a:o> .");
  });
  collect::FetchPolicy quick;
  quick.timeout = 150ms;
  auto [g4, late] = collect::fetch_rdf(slow.url("/"), quick);
  EXPECT_EQ(late.outcome, collect::FetchOutcome::Timeout);
  EXPECT_LT(late.elapsed, 550ms);

  StubServer big([](const net::Request&) { return turtle("<a:s> <a:p> \"" + std::string(4096, 'x') + "\" ."); });
  collect::FetchPolicy small;
  small.max_body_bytes = 1024;
  auto [g5, huge] = collect::fetch_rdf(big.url("/"), small);
  EXPECT_EQ(huge.outcome, collect::FetchOutcome::ParseError);
}

TEST(Collector, FollowsRedirectsAndUsesFinalBase) {
  StubServer target([](const net::Request&) { return turtle("<> <http://x/p> <rel> ."); });
  std::string final_url = target.url("/doc/");
  StubServer hop([&](const net::Request&) {
    net::Response r;
    r.status = 302;
    r.headers.emplace("Location", final_url);
    return r;
  });
  auto [g, e] = collect::fetch_rdf(hop.url("/start"), {});
  ASSERT_EQ(e.outcome, collect::FetchOutcome::Ok) << e.detail;
  EXPECT_TRUE(g.contains({rdf::Term::iri(final_url), iri("http://x/p"), rdf::Term::iri(final_url + "rel")}));

  StubServer loop([](const net::Request& req) {
    net::Response r;
    r.status = 302;
    r.headers.emplace("Location", req.path + "x");
    return r;
  });
  auto [g2, e2] = collect::fetch_rdf(loop.url("/"), {});
  EXPECT_EQ(e2.outcome, collect::FetchOutcome::HttpError);
}

TEST(Collector, AbortAndPartial) {
  SimHarness sim;
  std::vector<rules::RequestDirective> ds{{"GET", sim.component("arm")},
                                          {"GET", dead_origin() + "/gone"},
                                          {"GET", sim.component("claw")}};
  collect::FetchPolicy abort;
  try {
    collect::fetch_all(ds, abort);
    FAIL() << "expected CollectionFailed";
  } catch (const collect::CollectionFailed& e) {
    ASSERT_EQ(e.report().entries.size(), 3u);
    EXPECT_EQ(e.report().failures(), 1u);
    EXPECT_EQ(e.report().entries[1].outcome, collect::FetchOutcome::ConnectError);
  }

  collect::FetchPolicy partial;
  partial.on_failure = collect::FailurePolicy::Partial;
  auto c = collect::fetch_all(ds, partial);
  EXPECT_EQ(c.graph.size(), 6u);
  ASSERT_EQ(c.report.entries.size(), 3u);
  EXPECT_EQ(c.report.entries[0].target, sim.component("arm"));
  EXPECT_EQ(c.report.entries[2].target, sim.component("claw"));
  EXPECT_NE(c.report.summary().find("ConnectError"), std::string::npos);
  EXPECT_EQ(c.report.summary().find('\n'), std::string::npos);

  auto none = collect::fetch_all({}, abort);
  EXPECT_TRUE(none.graph.empty());
  EXPECT_TRUE(none.report.entries.empty());
}

// Property: the merged graph is the union of the individual fetches, the
// report has one entry per directive in order, and failures match.
TEST(Collector, MergeMatchesIndividualFetches) {
  SimHarness sim;
  StubServer garbage([](const net::Request&) { return turtle("@@@"); });
  StubServer blanks([](const net::Request& req) {
    return turtle("[] <http://x/from> \"" + req.path + "\" ; <http://x/n> 1 .");
  });
  std::vector<std::string> pool{sim.component("arm"), sim.component("claw"), garbage.url("/g"),
                                blanks.url("/a"), blanks.url("/b"), sim.origin() + "/gripper/"};
  std::mt19937 rng(42);
  collect::FetchPolicy policy;
  policy.on_failure = collect::FailurePolicy::Partial;
  for (int round = 0; round < 25; ++round) {
    std::vector<rules::RequestDirective> ds;
    std::size_t n = rng() % 6;
    for (std::size_t i = 0; i < n; ++i) ds.push_back({"GET", pool[rng() % pool.size()]});
    policy.max_parallel = 1 + rng() % 4;

    auto c = collect::fetch_all(ds, policy);
    rdf::Graph expected;
    std::size_t failures = 0;
    for (const auto& d : ds) {
      auto [g, e] = collect::fetch_rdf(d.target, policy);
      expected = rdf::merge(expected, g);
      if (e.outcome != collect::FetchOutcome::Ok) ++failures;
    }
    ASSERT_EQ(c.report.entries.size(), ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_EQ(c.report.entries[i].target, ds[i].target);
    EXPECT_EQ(c.report.failures(), failures);
    EXPECT_TRUE(rdf::isomorphic(c.graph, expected)) << "round " << round;
  }
}

TEST(Collector, BoundsParallelism) {
  std::atomic<int> in_flight{0}, peak{0};
  StubServer slow([&](const net::Request&) {
    int now = ++in_flight;
    for (int p = peak.load(); now > p && !peak.compare_exchange_weak(p, now);) {
    }
    std::this_thread::sleep_for(40ms);
    --in_flight;
    return turtle("<a:s> <a:p> <a:o> .");
  });
  std::vector<rules::RequestDirective> ds;
  for (int i = 0; i < 10; ++i) ds.push_back({"GET", slow.url("/" + std::to_string(i))});
  collect::FetchPolicy policy;
  policy.max_parallel = 3;
  auto c = collect::fetch_all(ds, policy);
  EXPECT_EQ(c.report.failures(), 0u);
  EXPECT_LE(peak.load(), 3);
  EXPECT_GE(peak.load(), 2);
}

TEST(Collector, FetcherRecordsReport) {
  SimHarness sim;
  auto report = std::make_shared<collect::FetchReport>();
  auto fetcher = collect::make_fetcher({}, report);
  std::vector<rules::RequestDirective> ds{{"GET", sim.component("arm")}};
  auto g = fetcher(ds);
  EXPECT_EQ(g.size(), 3u);
  ASSERT_EQ(report->entries.size(), 1u);
  EXPECT_EQ(report->entries[0].outcome, collect::FetchOutcome::Ok);
}

TEST(Collector, PolicyNames) {
  EXPECT_EQ(collect::failure_policy_from("partial"), collect::FailurePolicy::Partial);
  EXPECT_EQ(collect::failure_policy_from("abort"), collect::FailurePolicy::Abort);
  EXPECT_FALSE(collect::failure_policy_from("maybe"));
  EXPECT_EQ(collect::to_string(collect::FailurePolicy::Partial), "partial");
}
