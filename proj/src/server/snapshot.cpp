// Snapshot format: a Turtle document with one blank node per resource.
//
//   @prefix snap: <http://purl.org/virtrep/snapshot#> .
//   [] snap:path "/ldp/x" ; snap:kind "RdfSource" ; snap:position 3 ;
//      snap:etag 7 ; snap:body "<turtle or raw bytes>" ;
//      snap:mediaType "text/n3" ; snap:simulates "http://..." .
//
// Positions give a pre-order walk from the root, so parents come before
// children and container order is kept. RDF bodies are stored as Turtle
// text with absolute IRIs.

#include <fstream>
#include <sstream>

#include "virtrep/rdf/turtle.hpp"
#include "virtrep/server/vr_server.hpp"

namespace virtrep::server {

namespace {

constexpr std::string_view kSnap = "http://purl.org/virtrep/snapshot#";

rdf::Term snap(std::string_view local) { return rdf::Term::iri(std::string(kSnap) + std::string(local)); }

}  // namespace

std::string VrServer::snapshot() const {
  rdf::Graph out;
  std::shared_lock lock(mutex_);
  long long position = 0;
  std::vector<std::string> stack{root_path()};
  while (!stack.empty()) {
    std::string path = std::move(stack.back());
    stack.pop_back();
    const auto& rec = *records_.at(path);
    rdf::Term node = rdf::Term::blank("r" + std::to_string(position));
    out.insert({node, snap("path"), rdf::Term::literal(rec.path)});
    out.insert({node, snap("kind"), rdf::Term::literal(std::string(to_string(rec.kind)))});
    out.insert({node, snap("position"), rdf::Term::integer(position++)});
    out.insert({node, snap("etag"), rdf::Term::integer(static_cast<long long>(rec.etag))});
    if (rec.kind == ResourceKind::NonRdfSource) {
      out.insert({node, snap("body"), rdf::Term::literal(rec.bytes)});
      out.insert({node, snap("mediaType"), rdf::Term::literal(rec.media_type)});
    } else if (!rec.graph.empty()) {
      out.insert({node, snap("body"), rdf::Term::literal(rdf::serialize_turtle(rec.graph))});
    }
    if (!rec.simulates.empty()) out.insert({node, snap("simulates"), rdf::Term::literal(rec.simulates)});
    for (auto it = rec.children.rbegin(); it != rec.children.rend(); ++it) stack.push_back(*it);
  }
  return rdf::serialize_turtle(out, {{"snap", std::string(kSnap)}});
}

void VrServer::restore(std::string_view text) {
  rdf::Graph g = rdf::parse_turtle(text, "");
  std::map<long long, std::shared_ptr<ResourceRecord>> by_position;
  for (const auto& t : g.match(std::nullopt, snap("path"), std::nullopt)) {
    auto one = [&](std::string_view p) -> std::optional<rdf::Term> {
      auto v = g.objects(t.subject, snap(p));
      if (v.size() > 1) throw std::runtime_error("snapshot: duplicate snap:" + std::string(p));
      if (v.empty()) return std::nullopt;
      return v[0];
    };
    auto rec = std::make_shared<ResourceRecord>();
    rec->path = t.object.value();
    auto kind = one("kind");
    auto position = one("position");
    auto etag = one("etag");
    if (!kind || !position || !etag || !position->numeric() || !etag->numeric()) {
      throw std::runtime_error("snapshot: incomplete record for " + rec->path);
    }
    auto k = resource_kind_from(kind->value());
    if (!k) throw std::runtime_error("snapshot: unknown kind " + kind->value());
    rec->kind = *k;
    rec->etag = std::stoull(etag->value());
    if (auto body = one("body")) {
      if (rec->kind == ResourceKind::NonRdfSource) {
        rec->bytes = body->value();
      } else {
        rec->graph = rdf::parse_turtle(body->value(), origin() + rec->path);
      }
    }
    if (auto m = one("mediaType")) rec->media_type = m->value();
    if (auto s = one("simulates")) rec->simulates = s->value();
    if (!by_position.emplace(std::stoll(position->value()), rec).second) {
      throw std::runtime_error("snapshot: duplicate position");
    }
  }

  std::map<std::string, RecordPtr, std::less<>> records;
  std::map<std::string, std::shared_ptr<ResourceRecord>> mutable_records;
  std::uint64_t max_etag = 0;
  for (auto& [_, rec] : by_position) {
    if (rec->path == root_path()) {
      if (!is_container(rec->kind)) throw std::runtime_error("snapshot: root is not a container");
    } else {
      rec->parent = parent_path(rec->path);
      auto parent = mutable_records.find(rec->parent);
      if (parent == mutable_records.end() || !is_container(parent->second->kind)) {
        throw std::runtime_error("snapshot: " + rec->path + " has no parent container");
      }
      parent->second->children.push_back(rec->path);
    }
    max_etag = std::max(max_etag, rec->etag);
    mutable_records[rec->path] = rec;
    records[rec->path] = rec;
  }
  if (!records.contains(root_path())) throw std::runtime_error("snapshot: no root container " + root_path());

  std::unique_lock lock(mutex_);
  records_ = std::move(records);
  if (etag_counter_ < max_etag) etag_counter_ = max_etag;
}

void VrServer::save_snapshot(const std::filesystem::path& file) const {
  std::string text = snapshot();
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

void VrServer::load_snapshot(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  restore(ss.str());
}

}  // namespace virtrep::server
