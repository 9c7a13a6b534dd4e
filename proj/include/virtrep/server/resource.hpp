#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "virtrep/collect/collector.hpp"
#include "virtrep/rdf/graph.hpp"

namespace virtrep::server {

enum class ResourceKind { RdfSource, NonRdfSource, BasicContainer, VrContainer, VirtualResource };

std::string_view to_string(ResourceKind k);
std::optional<ResourceKind> resource_kind_from(std::string_view name);
inline bool is_container(ResourceKind k) {
  return k == ResourceKind::BasicContainer || k == ResourceKind::VrContainer;
}

/// Stored state of one resource. Records are immutable once published;
/// writers publish a modified copy.
struct ResourceRecord {
  std::string path;  // server-relative, containers end in '/'
  ResourceKind kind = ResourceKind::RdfSource;
  rdf::Graph graph;        // RDF sources and containers, user triples only
  std::string bytes;       // NonRdfSource
  std::string media_type;  // NonRdfSource
  std::vector<std::string> children;
  std::string parent;  // empty for the root
  std::uint64_t etag = 0;
  std::string simulates;  // VirtualResource: IRI of the physical object, may be empty
};

using RecordPtr = std::shared_ptr<const ResourceRecord>;

/// Parent container path of a non-root path.
std::string parent_path(std::string_view path);

struct VrConfiguration {
  RecordPtr vr;
  RecordPtr program;
  RecordPtr query;
};

class ConfigurationIncomplete : public std::runtime_error {
 public:
  explicit ConfigurationIncomplete(std::vector<std::string> missing);
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

class AmbiguousConfiguration : public std::runtime_error {
 public:
  AmbiguousConfiguration(std::string role, std::vector<std::string> paths);
  const std::string& role() const { return role_; }

 private:
  std::string role_;
};

/// Finds the VR, program (text/n3) and query (application/sparql-query)
/// among a VR container's children. Throws ConfigurationIncomplete naming
/// the missing roles ("virtual resource", "program", "query") or
/// AmbiguousConfiguration when a role is filled twice.
VrConfiguration locate_configuration(const std::vector<RecordPtr>& children);

}  // namespace virtrep::server
