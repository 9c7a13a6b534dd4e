#include "virtrep/server/vr_server.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "virtrep/net/rdf_http.hpp"
#include "virtrep/query/construct.hpp"
#include "virtrep/rdf/turtle.hpp"
#include "virtrep/rdf/vocabulary.hpp"
#include "virtrep/rules/program.hpp"

namespace virtrep::server {

namespace {

using net::Request;
using net::Response;
using rdf::Graph;
using rdf::Term;

Term iri(std::string_view s) { return Term::iri(std::string(s)); }

const std::set<std::string_view>& managed_predicates() {
  static const std::set<std::string_view> p{rdf::ldp::kContains, rdf::vr::kHasProgram, rdf::vr::kHasQuery};
  return p;
}

const std::set<std::string_view>& managed_types() {
  static const std::set<std::string_view> t{rdf::ldp::kResource,       rdf::ldp::kRdfSource,
                                            rdf::ldp::kNonRdfSource,   rdf::ldp::kContainer,
                                            rdf::ldp::kBasicContainer, rdf::vr::kVrContainerClass,
                                            rdf::vr::kVirtualRepresentation};
  return t;
}

// Drops triples the server derives itself.
Graph strip_managed(const Graph& g) {
  Graph out;
  for (const auto& t : g) {
    if (managed_predicates().contains(t.predicate.value())) continue;
    if (t.predicate.value() == rdf::rdfns::kType && t.object.is_iri() && managed_types().contains(t.object.value())) {
      continue;
    }
    out.insert(t);
  }
  return out;
}

std::string quoted_etag(std::uint64_t etag) { return "\"" + std::to_string(etag) + "\""; }

bool etag_matches(std::string_view if_match, std::string_view current) {
  std::stringstream ss{std::string(if_match)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string_view v = item;
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    if (v == "*") return true;
    if (v.starts_with("W/")) v.remove_prefix(2);
    if (v == current) return true;
  }
  return false;
}

Response status_only(int status) {
  Response r;
  r.status = status;
  return r;
}

std::string single_line(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\n' || c == '\r'; }, ' ');
  return s;
}

std::string sanitize_slug(std::string_view slug) {
  std::string out;
  for (char c : slug) {
    unsigned char u = static_cast<unsigned char>(c);
    out += (std::isalnum(u) || c == '-' || c == '_' || c == '.') ? c : '-';
    if (out.size() == 64) break;
  }
  if (out == "." || out == "..") out.clear();
  return out;
}

// Validates a configuration body; returns an error response on failure.
std::optional<Response> validate_config(std::string_view media_type, const std::string& body, const std::string& base) {
  try {
    if (media_type == rules::kProgramMediaType) rules::parse_program(body, base);
    if (media_type == query::kQueryMediaType) query::parse_construct(body, base);
  } catch (const rdf::SyntaxError& e) {
    return net::error_response(400, "SyntaxError", e.what());
  } catch (const rules::SafetyError& e) {
    return net::error_response(400, "UnsafeProgram", e.what());
  }
  return std::nullopt;
}

std::optional<Response> check_failure_policy(const Graph& g, const std::string& self) {
  auto values = g.objects(Term::iri(self), iri(rdf::vr::kOnFailure));
  if (values.size() > 1) return net::error_response(400, "BadRequest", "at most one vr:onFailure value is allowed");
  if (values.size() == 1 && !collect::failure_policy_from(values[0].value())) {
    return net::error_response(400, "BadRequest", "vr:onFailure must be \"abort\" or \"partial\"");
  }
  return std::nullopt;
}

}  // namespace

VrServer::VrServer(ServerConfig config) : config_(std::move(config)) {
  auto root = std::make_shared<ResourceRecord>();
  root->path = root_path();
  root->kind = ResourceKind::BasicContainer;
  root->etag = next_etag();
  records_[root->path] = root;
}

void VrServer::set_origin(std::string origin) {
  std::lock_guard lock(origin_mutex_);
  config_.origin = std::move(origin);
}

std::string VrServer::origin() const {
  std::lock_guard lock(origin_mutex_);
  return config_.origin;
}

RecordPtr VrServer::find(std::string_view path) const {
  std::shared_lock lock(mutex_);
  auto it = records_.find(path);
  return it == records_.end() ? nullptr : it->second;
}

Response VrServer::handle(const Request& req) {
  RecordPtr rec = find(req.path);
  if (!rec && !req.path.ends_with('/')) rec = find(req.path + "/");
  if (!rec) return net::error_response(404, "NotFound", "no resource at " + req.path);

  if (req.method == "GET" || req.method == "HEAD") return get(req, rec);
  if (req.method == "PUT") return put(req, rec);
  if (req.method == "POST") return post(req, rec);
  if (req.method == "DELETE") return remove(rec);
  if (req.method == "OPTIONS") {
    Response r = status_only(204);
    add_headers(r, *rec);
    return r;
  }
  Response r = net::error_response(405, "MethodNotAllowed", req.method + " is not supported");
  add_headers(r, *rec);
  return r;
}

void VrServer::add_headers(Response& res, const ResourceRecord& rec) const {
  std::vector<std::string_view> types{rdf::ldp::kResource};
  switch (rec.kind) {
    case ResourceKind::RdfSource: types.push_back(rdf::ldp::kRdfSource); break;
    case ResourceKind::NonRdfSource: types.push_back(rdf::ldp::kNonRdfSource); break;
    case ResourceKind::BasicContainer:
      types.insert(types.end(), {rdf::ldp::kRdfSource, rdf::ldp::kBasicContainer});
      break;
    case ResourceKind::VrContainer:
      types.insert(types.end(), {rdf::ldp::kRdfSource, rdf::ldp::kBasicContainer, rdf::vr::kVrContainerMarker});
      break;
    case ResourceKind::VirtualResource:
      types.insert(types.end(), {rdf::ldp::kRdfSource, rdf::vr::kVirtualResourceMarker});
      break;
  }
  std::string link;
  for (auto t : types) link += (link.empty() ? "<" : ", <") + std::string(t) + ">; rel=\"type\"";
  res.headers.emplace("Link", link);
  if (rec.kind == ResourceKind::VirtualResource) {
    res.headers.emplace("Allow", "GET, HEAD, DELETE, OPTIONS");
  } else if (is_container(rec.kind)) {
    res.headers.emplace("Allow", "GET, HEAD, PUT, POST, DELETE, OPTIONS");
    res.headers.emplace("Accept-Post", "text/turtle, text/n3, application/sparql-query");
  } else {
    res.headers.emplace("Allow", "GET, HEAD, PUT, DELETE, OPTIONS");
  }
  if (rec.kind != ResourceKind::VirtualResource) res.headers.emplace("ETag", quoted_etag(rec.etag));
}

// Called with the store lock held.
Graph VrServer::representation(const ResourceRecord& rec) const {
  Graph g = rec.graph;
  if (!is_container(rec.kind)) return g;
  Term self = Term::iri(iri_of(rec.path));
  Term type = iri(rdf::rdfns::kType);
  g.insert({self, type, iri(rdf::ldp::kBasicContainer)});
  std::vector<RecordPtr> children;
  for (const auto& c : rec.children) {
    g.insert({self, iri(rdf::ldp::kContains), Term::iri(iri_of(c))});
    if (auto it = records_.find(c); it != records_.end()) children.push_back(it->second);
  }
  if (rec.kind == ResourceKind::VrContainer) {
    g.insert({self, type, iri(rdf::vr::kVrContainerClass)});
    try {
      auto cfg = locate_configuration(children);
      Term vr = Term::iri(iri_of(cfg.vr->path));
      g.insert({vr, iri(rdf::vr::kHasProgram), Term::iri(iri_of(cfg.program->path))});
      g.insert({vr, iri(rdf::vr::kHasQuery), Term::iri(iri_of(cfg.query->path))});
    } catch (const std::runtime_error&) {
      // Incomplete containers list their children only.
    }
  }
  return g;
}

Response VrServer::get(const Request& req, const RecordPtr& rec) {
  std::string accept = req.header("Accept");
  if (rec->kind == ResourceKind::NonRdfSource) {
    if (!net::accepts(accept, rec->media_type)) {
      return net::error_response(406, "NotAcceptable", "available as " + rec->media_type);
    }
    Response r;
    r.headers.emplace("Content-Type", rec->media_type);
    r.body = rec->bytes;
    add_headers(r, *rec);
    return r;
  }
  if (!net::accepts(accept, rdf::kTurtleMediaType)) {
    return net::error_response(406, "NotAcceptable", "available as text/turtle");
  }
  if (rec->kind == ResourceKind::VirtualResource) return get_vr(req, rec);
  Graph g;
  RecordPtr current;
  {
    std::shared_lock lock(mutex_);
    auto it = records_.find(rec->path);
    if (it == records_.end()) return net::error_response(404, "NotFound", "no resource at " + req.path);
    current = it->second;
    g = representation(*current);
  }
  Response r = net::turtle_response(200, g);
  add_headers(r, *current);
  return r;
}

Response VrServer::get_vr(const Request&, const RecordPtr& rec) {
  Response r;
  collect::FetchReport report;
  try {
    VrResolution res = resolve_vr(rec->parent);
    report = std::move(res.report);
    r = net::turtle_response(200, res.graph);
    r.headers.emplace("ETag", "\"vr-" + std::to_string(std::hash<std::string>{}(r.body)) + "\"");
  } catch (const ResolutionError& e) {
    report = e.report();
    r = net::error_response(e.status(), e.kind(), e.what());
  }
  if (!report.entries.empty()) r.headers.emplace(std::string(kFetchReportHeader), single_line(report.summary()));
  add_headers(r, *rec);
  return r;
}

VrResolution VrServer::resolve_vr(const std::string& container_path) {
  VrConfiguration cfg;
  collect::FetchPolicy policy = config_.fetch;
  {
    // Program and query are taken from one consistent snapshot.
    std::shared_lock lock(mutex_);
    auto it = records_.find(container_path);
    if (it == records_.end() || it->second->kind != ResourceKind::VrContainer) {
      throw ResolutionError(404, "NotFound", "no virtual representation container at " + container_path);
    }
    std::vector<RecordPtr> children;
    for (const auto& c : it->second->children) children.push_back(records_.at(c));
    try {
      cfg = locate_configuration(children);
    } catch (const ConfigurationIncomplete& e) {
      throw ResolutionError(409, "ConfigurationIncomplete", e.what());
    } catch (const AmbiguousConfiguration& e) {
      throw ResolutionError(409, "AmbiguousConfiguration", e.what());
    }
    auto values = it->second->graph.objects(Term::iri(iri_of(container_path)), iri(rdf::vr::kOnFailure));
    if (!values.empty()) policy.on_failure = collect::failure_policy_from(values[0].value()).value_or(policy.on_failure);
  }

  std::string base = iri_of(container_path);
  rules::Program program;
  query::ConstructQuery q;
  try {
    program = rules::parse_program(cfg.program->bytes, base);
    q = query::parse_construct(cfg.query->bytes, base);
  } catch (const std::exception& e) {
    throw ResolutionError(500, "ConfigurationInvalid", e.what());
  }

  auto report = std::make_shared<collect::FetchReport>();
  Graph derived;
  try {
    derived = rules::evaluate(program, {}, collect::make_fetcher(policy, report), config_.evaluation);
  } catch (const collect::CollectionFailed& e) {
    throw ResolutionError(502, "UpstreamFailure", e.what(), e.report());
  } catch (const rules::NonTermination& e) {
    throw ResolutionError(500, "NonTermination", e.what(), *report);
  }

  VrResolution out;
  out.graph = query::execute_construct(q, derived);
  Term vr = Term::iri(iri_of(cfg.vr->path));
  out.graph.insert({vr, iri(rdf::vr::kHasProgram), Term::iri(iri_of(cfg.program->path))});
  out.graph.insert({vr, iri(rdf::vr::kHasQuery), Term::iri(iri_of(cfg.query->path))});
  if (!cfg.vr->simulates.empty()) out.graph.insert({vr, iri(rdf::vr::kSimulates), Term::iri(cfg.vr->simulates)});
  out.report = std::move(*report);
  return out;
}

Response VrServer::put(const Request& req, const RecordPtr& rec) {
  if (rec->kind == ResourceKind::VirtualResource) {
    return net::error_response(409, "Conflict", "the state of a virtual resource is computed, not stored");
  }
  std::string type = net::media_type_of(req.header("Content-Type"));
  std::string self = iri_of(rec->path);
  std::string config_base = iri_of(rec->parent.empty() ? rec->path : rec->parent);

  Graph graph;
  if (rec->kind == ResourceKind::NonRdfSource) {
    if (type != rec->media_type) {
      return net::error_response(409, "Conflict", "resource is " + rec->media_type + ", got " +
                                                      (type.empty() ? std::string("no Content-Type") : type));
    }
    if (auto err = validate_config(type, req.body, config_base)) return *err;
  } else {
    if (type != rdf::kTurtleMediaType) {
      return net::error_response(409, "Conflict", "an RDF source can only be replaced with text/turtle");
    }
    try {
      graph = strip_managed(rdf::parse_turtle(req.body, self));
    } catch (const rdf::SyntaxError& e) {
      return net::error_response(400, "SyntaxError", e.what());
    }
    if (rec->kind == ResourceKind::VrContainer) {
      if (auto err = check_failure_policy(graph, self)) return *err;
    }
  }

  std::unique_lock lock(mutex_);
  auto it = records_.find(rec->path);
  if (it == records_.end()) return net::error_response(404, "NotFound", "no resource at " + req.path);
  const auto& current = *it->second;
  std::string if_match = req.header("If-Match");
  if (!if_match.empty() && !etag_matches(if_match, quoted_etag(current.etag))) {
    return net::error_response(412, "PreconditionFailed", "ETag is " + quoted_etag(current.etag));
  }
  auto next = std::make_shared<ResourceRecord>(current);
  if (next->kind == ResourceKind::NonRdfSource) {
    next->bytes = req.body;
  } else {
    next->graph = std::move(graph);
  }
  next->etag = next_etag();
  it->second = next;
  Response r = status_only(204);
  r.headers.emplace("ETag", quoted_etag(next->etag));
  return r;
}

std::optional<std::string> VrServer::child_path(const ResourceRecord& container, std::string_view slug,
                                                bool container_child) const {
  auto taken = [&](const std::string& n) {
    return records_.contains(container.path + n) || records_.contains(container.path + n + "/");
  };
  std::string name = sanitize_slug(slug);
  if (!name.empty() && taken(name)) return std::nullopt;
  while (name.empty() || taken(name)) name = "r" + std::to_string(++name_counter_);
  return container.path + name + (container_child ? "/" : "");
}

Response VrServer::post(const Request& req, const RecordPtr& target) {
  if (!is_container(target->kind)) {
    return net::error_response(404, "NotAContainer", req.path + " is not a container");
  }
  auto links = net::link_targets(req.headers, "type");
  auto has = [&](std::string_view t) { return std::find(links.begin(), links.end(), t) != links.end(); };
  std::string type = net::media_type_of(req.header("Content-Type"));
  bool blank_body = std::all_of(req.body.begin(), req.body.end(), [](unsigned char c) { return std::isspace(c); });

  ResourceKind kind;
  if (has(rdf::vr::kVirtualResourceMarker)) {
    kind = ResourceKind::VirtualResource;
  } else if (has(rdf::vr::kVrContainerMarker)) {
    kind = ResourceKind::VrContainer;
  } else if (has(rdf::ldp::kBasicContainer)) {
    kind = ResourceKind::BasicContainer;
  } else if (type == rdf::kTurtleMediaType) {
    kind = ResourceKind::RdfSource;
  } else if (type.empty()) {
    return net::error_response(400, "BadRequest", "Content-Type is required");
  } else {
    kind = ResourceKind::NonRdfSource;
  }
  bool rdf_body = kind != ResourceKind::NonRdfSource;
  if (rdf_body && !blank_body && type != rdf::kTurtleMediaType) {
    return net::error_response(400, "BadRequest", "expected a text/turtle body");
  }

  std::unique_lock lock(mutex_);
  auto it = records_.find(target->path);
  if (it == records_.end()) return net::error_response(404, "NotFound", "no resource at " + req.path);
  const auto& parent = *it->second;

  std::vector<RecordPtr> siblings;
  for (const auto& c : parent.children) siblings.push_back(records_.at(c));
  auto role_taken = [&](auto pred) { return std::any_of(siblings.begin(), siblings.end(), pred); };
  if (parent.kind == ResourceKind::VrContainer) {
    if (is_container(kind)) {
      return net::error_response(409, "Conflict", "a virtual representation container cannot hold containers");
    }
    if (kind == ResourceKind::VirtualResource &&
        role_taken([](const RecordPtr& r) { return r->kind == ResourceKind::VirtualResource; })) {
      return net::error_response(409, "Conflict", "the container already holds a virtual resource");
    }
    if (kind == ResourceKind::NonRdfSource && (type == rules::kProgramMediaType || type == query::kQueryMediaType) &&
        role_taken([&](const RecordPtr& r) { return r->kind == ResourceKind::NonRdfSource && r->media_type == type; })) {
      return net::error_response(409, "Conflict", "the container already holds a " + type + " configuration");
    }
  } else if (kind == ResourceKind::VirtualResource) {
    return net::error_response(409, "Conflict", "virtual resources live in virtual representation containers");
  }

  auto rec = std::make_shared<ResourceRecord>();
  auto path = child_path(parent, req.header("Slug"), is_container(kind));
  if (!path) return net::error_response(409, "Conflict", "the name " + req.header("Slug") + " is already taken");
  rec->path = *path;
  rec->kind = kind;
  rec->parent = parent.path;
  std::string self = iri_of(rec->path);

  if (kind == ResourceKind::NonRdfSource) {
    if (auto err = validate_config(type, req.body, iri_of(parent.path))) return *err;
    rec->bytes = req.body;
    rec->media_type = type;
  } else if (!blank_body) {
    Graph g;
    try {
      g = strip_managed(rdf::parse_turtle(req.body, self));
    } catch (const rdf::SyntaxError& e) {
      return net::error_response(400, "SyntaxError", e.what());
    }
    if (kind == ResourceKind::VirtualResource) {
      auto sim = g.objects(Term::iri(self), iri(rdf::vr::kSimulates));
      if (sim.size() > 1 || (sim.size() == 1 && !sim[0].is_iri())) {
        return net::error_response(400, "BadRequest", "vr:simulates takes a single IRI");
      }
      if (!sim.empty()) rec->simulates = sim[0].value();
    } else {
      if (kind == ResourceKind::VrContainer) {
        if (auto err = check_failure_policy(g, self)) return *err;
      }
      rec->graph = std::move(g);
    }
  }
  rec->etag = next_etag();

  auto updated_parent = std::make_shared<ResourceRecord>(parent);
  updated_parent->children.push_back(rec->path);
  updated_parent->etag = next_etag();
  it->second = updated_parent;
  records_[rec->path] = rec;

  Response r = status_only(201);
  r.headers.emplace("Location", self);
  add_headers(r, *rec);
  return r;
}

Response VrServer::remove(const RecordPtr& rec) {
  if (rec->path == root_path()) return net::error_response(409, "Conflict", "the root container cannot be deleted");
  std::unique_lock lock(mutex_);
  if (!records_.contains(rec->path)) return net::error_response(404, "NotFound", "no resource at " + rec->path);
  std::vector<std::string> stack{rec->path};
  while (!stack.empty()) {
    std::string p = std::move(stack.back());
    stack.pop_back();
    auto it = records_.find(p);
    if (it == records_.end()) continue;
    for (const auto& c : it->second->children) stack.push_back(c);
    records_.erase(it);
  }
  if (auto it = records_.find(rec->parent); it != records_.end()) {
    auto parent = std::make_shared<ResourceRecord>(*it->second);
    std::erase(parent->children, rec->path);
    parent->etag = next_etag();
    it->second = parent;
  }
  return status_only(204);
}

}  // namespace virtrep::server
