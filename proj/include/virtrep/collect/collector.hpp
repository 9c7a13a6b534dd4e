#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "virtrep/rdf/graph.hpp"
#include "virtrep/rules/engine.hpp"

namespace virtrep::collect {

enum class FailurePolicy { Abort, Partial };

std::string_view to_string(FailurePolicy p);
std::optional<FailurePolicy> failure_policy_from(std::string_view text);

struct FetchPolicy {
  std::chrono::milliseconds timeout{5000};
  FailurePolicy on_failure = FailurePolicy::Abort;
  std::size_t max_parallel = 4;
  std::size_t max_body_bytes = 1 << 20;
  std::size_t max_redirects = 5;

  bool valid() const { return timeout.count() > 0 && max_parallel > 0 && max_body_bytes > 0; }
};

enum class FetchOutcome { Ok, HttpError, Timeout, ParseError, ConnectError };

std::string_view to_string(FetchOutcome o);

struct FetchEntry {
  std::string target;
  FetchOutcome outcome = FetchOutcome::Ok;
  int status = 0;  // last HTTP status seen, 0 if none
  std::chrono::milliseconds elapsed{0};
  std::size_t triple_count = 0;
  std::string detail;
};

/// One entry per request directive, in directive order.
struct FetchReport {
  std::vector<FetchEntry> entries;

  std::size_t failures() const;
  /// "OK <iri> 3 triples 2ms; ConnectError <iri> ..." on one line.
  std::string summary() const;
};

struct Collection {
  rdf::Graph graph;
  FetchReport report;
};

class CollectionFailed : public std::runtime_error {
 public:
  explicit CollectionFailed(FetchReport report);
  const FetchReport& report() const { return report_; }

 private:
  FetchReport report_;
};

/// GETs one resource as Turtle. Never throws; failures are classified in
/// the entry and come with an empty graph.
std::pair<rdf::Graph, FetchEntry> fetch_rdf(std::string_view iri, const FetchPolicy& policy);

/// Fetches every directive with at most policy.max_parallel in flight and
/// merges the successful graphs. Under Abort any failure throws
/// CollectionFailed carrying the full report.
Collection fetch_all(std::span<const rules::RequestDirective> directives, const FetchPolicy& policy);

/// Adapts fetch_all to the rule engine. The report of the last call is
/// written to `report` when given.
rules::Fetcher make_fetcher(FetchPolicy policy, std::shared_ptr<FetchReport> report = nullptr);

}  // namespace virtrep::collect
