#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "virtrep/collect/collector.hpp"
#include "virtrep/net/http.hpp"
#include "virtrep/rules/engine.hpp"
#include "virtrep/server/resource.hpp"

namespace virtrep::server {

inline constexpr std::string_view kFetchReportHeader = "Virtrep-Fetch-Report";

struct ServerConfig {
  /// "http://host:port"; resource IRIs are origin + path.
  std::string origin = "http://localhost:8080";
  std::string root_name = "ldp";
  collect::FetchPolicy fetch;
  rules::EvaluationOptions evaluation;
};

struct VrResolution {
  rdf::Graph graph;  // query result plus descriptor triples
  collect::FetchReport report;
};

/// Failure of a VR resolution with the HTTP status and error kind to report.
class ResolutionError : public std::runtime_error {
 public:
  ResolutionError(int status, std::string kind, const std::string& detail, collect::FetchReport report = {})
      : std::runtime_error(detail), status_(status), kind_(std::move(kind)), report_(std::move(report)) {}
  int status() const { return status_; }
  const std::string& kind() const { return kind_; }
  const collect::FetchReport& report() const { return report_; }

 private:
  int status_;
  std::string kind_;
  collect::FetchReport report_;
};

/// LDP-subset resource store with virtual representation containers.
/// handle() is safe to call from many threads.
class VrServer {
 public:
  explicit VrServer(ServerConfig config);

  net::Response handle(const net::Request& req);

  /// Computes the VR of a VR container. Throws ResolutionError.
  VrResolution resolve_vr(const std::string& container_path);

  /// The origin may only be known once the listening socket is bound.
  void set_origin(std::string origin);
  std::string origin() const;
  std::string root_path() const { return "/" + config_.root_name + "/"; }
  std::string iri_of(std::string_view path) const { return origin() + std::string(path); }

  /// Snapshot of every resource as a Turtle document.
  std::string snapshot() const;
  void save_snapshot(const std::filesystem::path& file) const;
  /// Replaces the whole store with a snapshot. Throws on malformed input.
  void restore(std::string_view snapshot_text);
  void load_snapshot(const std::filesystem::path& file);

  RecordPtr find(std::string_view path) const;

 private:
  net::Response get(const net::Request& req, const RecordPtr& rec);
  net::Response get_vr(const net::Request& req, const RecordPtr& rec);
  net::Response put(const net::Request& req, const RecordPtr& rec);
  net::Response post(const net::Request& req, const RecordPtr& rec);
  net::Response remove(const RecordPtr& rec);

  rdf::Graph representation(const ResourceRecord& rec) const;
  void add_headers(net::Response& res, const ResourceRecord& rec) const;
  std::uint64_t next_etag() { return ++etag_counter_; }
  /// nullopt when the requested name is taken; no slug gets a fresh name.
  std::optional<std::string> child_path(const ResourceRecord& container, std::string_view slug,
                                        bool container_child) const;

  ServerConfig config_;
  mutable std::mutex origin_mutex_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, RecordPtr, std::less<>> records_;
  std::atomic<std::uint64_t> etag_counter_{0};
  mutable std::atomic<std::uint64_t> name_counter_{0};
};

}  // namespace virtrep::server
