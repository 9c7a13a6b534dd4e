#pragma once

// Client side of the operator commands. Each function is a short, fixed
// sequence of plain HTTP requests against a running server.

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>

#include "virtrep/net/http.hpp"

namespace virtrep::cli {

/// A step that did not get a 2xx answer, or could not be sent at all.
class CommandError : public std::runtime_error {
 public:
  CommandError(std::string step, int status, const std::string& detail)
      : std::runtime_error(step + (status ? " failed with HTTP " + std::to_string(status) : " failed") +
                           (detail.empty() ? "" : ": " + detail)),
        step_(std::move(step)),
        status_(status) {}
  const std::string& step() const { return step_; }
  int status() const { return status_; }  // 0 when no response arrived

 private:
  std::string step_;
  int status_;
};

struct DeployRequest {
  std::string parent;  // container IRI the VR container is created in
  std::string container_name;
  std::string program;  // N3 text
  std::string query;    // SPARQL text
  std::string vr_name = "shaft";
  std::string simulates;  // optional IRI
};

struct Client {
  std::chrono::milliseconds timeout{5000};

  /// POSTs container, program, query and VR marker. Returns the VR IRI.
  std::string deploy(const DeployRequest& req) const;

  /// GET with a Turtle preference. Throws CommandError on non-2xx.
  net::Response get(const std::string& iri) const;

  /// Replaces the program (text/n3) or query (application/sparql-query)
  /// of a VR container. Returns the IRI that was written.
  std::string swap(const std::string& container, std::string_view media_type, std::string text) const;

 private:
  net::Response send(const std::string& step, std::string_view method, const std::string& url,
                     const net::Headers& headers, std::string body) const;
};

}  // namespace virtrep::cli
