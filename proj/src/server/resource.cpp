#include "virtrep/server/resource.hpp"

#include "virtrep/query/construct.hpp"
#include "virtrep/rules/program.hpp"

namespace virtrep::server {

namespace {

struct KindName {
  ResourceKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ResourceKind::RdfSource, "RdfSource"},
    {ResourceKind::NonRdfSource, "NonRdfSource"},
    {ResourceKind::BasicContainer, "BasicContainer"},
    {ResourceKind::VrContainer, "VrContainer"},
    {ResourceKind::VirtualResource, "VirtualResource"},
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
  return out;
}

}  // namespace

std::string_view to_string(ResourceKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

std::optional<ResourceKind> resource_kind_from(std::string_view name) {
  for (const auto& [kind, n] : kKindNames)
    if (n == name) return kind;
  return std::nullopt;
}

std::string parent_path(std::string_view path) {
  std::string_view p = path;
  if (p.ends_with('/')) p.remove_suffix(1);
  auto slash = p.rfind('/');
  return std::string(p.substr(0, slash + 1));
}

ConfigurationIncomplete::ConfigurationIncomplete(std::vector<std::string> missing)
    : std::runtime_error("configuration incomplete, missing: " + join(missing)), missing_(std::move(missing)) {}

AmbiguousConfiguration::AmbiguousConfiguration(std::string role, std::vector<std::string> paths)
    : std::runtime_error("ambiguous configuration: " + role + " provided by " + join(paths)), role_(std::move(role)) {}

VrConfiguration locate_configuration(const std::vector<RecordPtr>& children) {
  std::vector<RecordPtr> vrs, programs, queries;
  for (const auto& c : children) {
    if (c->kind == ResourceKind::VirtualResource) vrs.push_back(c);
    if (c->kind != ResourceKind::NonRdfSource) continue;
    if (c->media_type == rules::kProgramMediaType) programs.push_back(c);
    if (c->media_type == query::kQueryMediaType) queries.push_back(c);
  }
  auto check = [](const std::vector<RecordPtr>& found, const std::string& role) {
    if (found.size() > 1) {
      std::vector<std::string> paths;
      for (const auto& r : found) paths.push_back(r->path);
      throw AmbiguousConfiguration(role, paths);
    }
  };
  check(vrs, "virtual resource");
  check(programs, "program");
  check(queries, "query");
  std::vector<std::string> missing;
  if (vrs.empty()) missing.push_back("virtual resource");
  if (programs.empty()) missing.push_back("program");
  if (queries.empty()) missing.push_back("query");
  if (!missing.empty()) throw ConfigurationIncomplete(missing);
  return {vrs.front(), programs.front(), queries.front()};
}

}  // namespace virtrep::server
