#include "virtrep/collect/collector.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "virtrep/net/http.hpp"
#include "virtrep/rdf/iri.hpp"
#include "virtrep/rdf/turtle.hpp"

namespace virtrep::collect {

std::string_view to_string(FailurePolicy p) { return p == FailurePolicy::Abort ? "abort" : "partial"; }

std::optional<FailurePolicy> failure_policy_from(std::string_view text) {
  if (text == "abort") return FailurePolicy::Abort;
  if (text == "partial") return FailurePolicy::Partial;
  return std::nullopt;
}

std::string_view to_string(FetchOutcome o) {
  switch (o) {
    case FetchOutcome::Ok: return "OK";
    case FetchOutcome::HttpError: return "HTTPError";
    case FetchOutcome::Timeout: return "Timeout";
    case FetchOutcome::ParseError: return "ParseError";
    case FetchOutcome::ConnectError: return "ConnectError";
  }
  return "?";
}

std::size_t FetchReport::failures() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(),
                                                [](const FetchEntry& e) { return e.outcome != FetchOutcome::Ok; }));
}

std::string FetchReport::summary() const {
  std::string out;
  for (const auto& e : entries) {
    if (!out.empty()) out += "; ";
    out += to_string(e.outcome);
    if (e.outcome == FetchOutcome::HttpError) out += "(" + std::to_string(e.status) + ")";
    out += " <" + e.target + "> " + std::to_string(e.triple_count) + " triples " + std::to_string(e.elapsed.count()) +
           "ms";
    if (!e.detail.empty() && e.outcome != FetchOutcome::Ok) out += " (" + e.detail + ")";
  }
  return out;
}

CollectionFailed::CollectionFailed(FetchReport report)
    : std::runtime_error("upstream collection failed: " + report.summary()), report_(std::move(report)) {}

std::pair<rdf::Graph, FetchEntry> fetch_rdf(std::string_view iri, const FetchPolicy& policy) {
  using Clock = std::chrono::steady_clock;
  auto started = Clock::now();
  FetchEntry entry;
  entry.target = std::string(iri);
  auto finish = [&](FetchOutcome outcome, std::string detail, rdf::Graph g = {}) {
    entry.outcome = outcome;
    entry.detail = std::move(detail);
    entry.triple_count = g.size();
    entry.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started);
    return std::pair{std::move(g), entry};
  };

  std::string current(iri);
  for (std::size_t hop = 0;; ++hop) {
    auto left = policy.timeout - std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started);
    if (left.count() <= 0) return finish(FetchOutcome::Timeout, "timed out after redirects");
    net::Response res;
    try {
      res = net::http_request("GET", current, {{"Accept", "text/turtle"}}, {}, {left, policy.max_body_bytes});
    } catch (const net::ClientError& e) {
      switch (e.kind()) {
        case net::ClientError::Kind::Timeout: return finish(FetchOutcome::Timeout, e.what());
        case net::ClientError::Kind::BodyTooLarge: return finish(FetchOutcome::ParseError, e.what());
        default: return finish(FetchOutcome::ConnectError, e.what());
      }
    }
    entry.status = res.status;
    if (res.status >= 300 && res.status < 400 && !res.header("Location").empty()) {
      if (hop == policy.max_redirects) return finish(FetchOutcome::HttpError, "too many redirects");
      auto next = rdf::resolve_iri(current, res.header("Location"));
      if (!next) return finish(FetchOutcome::HttpError, "bad Location header");
      current = std::move(*next);
      continue;
    }
    if (res.status != 200) return finish(FetchOutcome::HttpError, "status " + std::to_string(res.status));
    try {
      return finish(FetchOutcome::Ok, {}, rdf::parse_turtle(res.body, current));
    } catch (const rdf::SyntaxError& e) {
      return finish(FetchOutcome::ParseError, e.what());
    }
  }
}

Collection fetch_all(std::span<const rules::RequestDirective> directives, const FetchPolicy& policy) {
  std::vector<rdf::Graph> graphs(directives.size());
  Collection c;
  c.report.entries.resize(directives.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < directives.size(); i = next++) {
      auto [g, entry] = fetch_rdf(directives[i].target, policy);
      graphs[i] = std::move(g);
      c.report.entries[i] = std::move(entry);
    }
  };
  std::size_t n = std::min(policy.max_parallel, directives.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (c.report.failures() > 0 && policy.on_failure == FailurePolicy::Abort) throw CollectionFailed(c.report);
  for (const auto& g : graphs) c.graph.insert(g);
  return c;
}

rules::Fetcher make_fetcher(FetchPolicy policy, std::shared_ptr<FetchReport> report) {
  return [policy, report](std::span<const rules::RequestDirective> directives) {
    try {
      Collection c = fetch_all(directives, policy);
      if (report) *report = c.report;
      return std::move(c.graph);
    } catch (const CollectionFailed& e) {
      if (report) *report = e.report();
      throw;
    }
  };
}

}  // namespace virtrep::collect
