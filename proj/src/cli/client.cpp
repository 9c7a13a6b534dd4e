#include "virtrep/cli/client.hpp"

#include "virtrep/net/rdf_http.hpp"
#include "virtrep/rdf/turtle.hpp"
#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::cli {

namespace {

rdf::Term iri(std::string_view s) { return rdf::Term::iri(std::string(s)); }

// The server's error detail if the body is an error graph, else the body.
std::string detail_of(const net::Response& r) {
  try {
    auto g = rdf::parse_turtle(r.body, "");
    auto found = g.match(std::nullopt, iri(rdf::vr::kErrorDetail), std::nullopt);
    if (found.size() == 1) return found[0].object.value();
  } catch (const std::exception&) {
  }
  std::string body = r.body;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
  return body;
}

std::string link_type(std::string_view t) { return "<" + std::string(t) + ">; rel=\"type\""; }

}  // namespace

net::Response Client::send(const std::string& step, std::string_view method, const std::string& url,
                           const net::Headers& headers, std::string body) const {
  net::Response r;
  try {
    r = net::http_request(method, url, headers, std::move(body), {timeout, 0});
  } catch (const net::ClientError& e) {
    throw CommandError(step, 0, e.what());
  }
  if (r.status < 200 || r.status > 299) throw CommandError(step, r.status, detail_of(r));
  return r;
}

std::string Client::deploy(const DeployRequest& req) const {
  auto created = [](const net::Response& r, const std::string& step) {
    auto loc = r.header("Location");
    if (loc.empty()) throw CommandError(step, r.status, "no Location header");
    return loc;
  };
  std::string container =
      created(send("create container", "POST", req.parent,
                   {{"Slug", req.container_name}, {"Link", link_type(rdf::vr::kVrContainerMarker)}}, ""),
              "create container");
  send("post program", "POST", container, {{"Slug", "program"}, {"Content-Type", "text/n3"}}, req.program);
  send("post query", "POST", container, {{"Slug", "query"}, {"Content-Type", "application/sparql-query"}},
       req.query);
  net::Headers vr_headers{{"Slug", req.vr_name}, {"Link", link_type(rdf::vr::kVirtualResourceMarker)}};
  std::string body;
  if (!req.simulates.empty()) {
    vr_headers.emplace("Content-Type", "text/turtle");
    body = "<> <" + std::string(rdf::vr::kSimulates) + "> <" + req.simulates + "> .\n";
  }
  return created(send("create virtual resource", "POST", container, vr_headers, body), "create virtual resource");
}

net::Response Client::get(const std::string& target) const {
  return send("GET " + target, "GET", target, {{"Accept", "text/turtle, */*;q=0.1"}}, "");
}

std::string Client::swap(const std::string& container, std::string_view media_type, std::string text) const {
  auto listing = send("read container", "GET", container, {{"Accept", "text/turtle"}}, "");
  rdf::Graph g;
  try {
    g = rdf::parse_turtle(listing.body, container);
  } catch (const rdf::SyntaxError& e) {
    throw CommandError("read container", listing.status, e.what());
  }
  std::string target;
  // A complete container names its configuration; otherwise ask each child.
  auto role = media_type == "text/n3" ? rdf::vr::kHasProgram : rdf::vr::kHasQuery;
  auto named = g.match(std::nullopt, iri(role), std::nullopt);
  if (named.size() == 1) {
    target = named[0].object.value();
  } else {
    for (const auto& child : g.objects(rdf::Term::iri(container), iri(rdf::ldp::kContains))) {
      auto head = send("inspect " + child.value(), "HEAD", child.value(), {{"Accept", "*/*"}}, "");
      if (net::media_type_of(head.header("Content-Type")) == media_type) {
        target = child.value();
        break;
      }
    }
  }
  if (target.empty()) {
    throw CommandError("locate configuration", 0, "no " + std::string(media_type) + " resource in " + container);
  }
  send("replace " + target, "PUT", target, {{"Content-Type", std::string(media_type)}}, std::move(text));
  return target;
}

}  // namespace virtrep::cli
