#include "virtrep/sim/gripper.hpp"

#include <algorithm>

#include "virtrep/net/rdf_http.hpp"
#include "virtrep/rdf/turtle.hpp"
#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::sim {

namespace {

constexpr std::string_view kRoot = "/gripper/";

rdf::Term iri(std::string_view s) { return rdf::Term::iri(std::string(s)); }

}  // namespace

Gripper::Gripper() {
  components_["arm"].state = "up";
  components_["claw"].state = "opened";
}

std::vector<std::string> Gripper::components() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : components_) out.push_back(name);
  return out;
}

const std::vector<std::string>& Gripper::legal_states(std::string_view name) {
  static const std::vector<std::string> arm{"up", "down"};
  static const std::vector<std::string> claw{"opened", "closed"};
  static const std::vector<std::string> none;
  if (name == "arm") return arm;
  if (name == "claw") return claw;
  return none;
}

std::optional<ComponentState> Gripper::get(std::string_view name) const {
  auto it = components_.find(name);
  if (it == components_.end()) return std::nullopt;
  std::lock_guard lock(it->second.mutex);
  return ComponentState{it->first, it->second.state, it->second.action_count};
}

Gripper::Update Gripper::set_state(std::string_view name, std::string_view state) {
  auto it = components_.find(name);
  if (it == components_.end()) return Update::UnknownComponent;
  const auto& legal = legal_states(name);
  if (std::find(legal.begin(), legal.end(), state) == legal.end()) return Update::IllegalState;
  std::lock_guard lock(it->second.mutex);
  if (it->second.state == state) return Update::Unchanged;
  it->second.state = std::string(state);
  ++it->second.action_count;
  return Update::Changed;
}

rdf::Graph describe(const ComponentState& c, const std::string& self) {
  rdf::Term s = rdf::Term::iri(self);
  return rdf::Graph{{s, iri(rdf::rdfns::kType), iri(c.name == "arm" ? rdf::demo::kArm : rdf::demo::kClaw)},
                    {s, iri(rdf::saref::kHasState), rdf::Term::literal(c.state)},
                    {s, iri(rdf::demo::kActionCount), rdf::Term::integer(c.action_count)}};
}

net::Response GripperService::handle(const net::Request& req) {
  if (!req.path.starts_with(kRoot)) return net::error_response(404, "NotFound", "no resource at " + req.path);
  std::string origin = "http://" + (req.header("Host").empty() ? std::string("localhost") : req.header("Host"));
  std::string rest = req.path.substr(kRoot.size());

  if (rest.empty()) {
    if (req.method != "GET") return net::error_response(405, "MethodNotAllowed", "the gripper container is read-only");
    rdf::Term self = rdf::Term::iri(origin + std::string(kRoot));
    rdf::Graph g{{self, iri(rdf::rdfns::kType), iri(rdf::ldp::kBasicContainer)}};
    for (const auto& name : gripper_.components()) {
      g.insert({self, iri(rdf::ldp::kContains), rdf::Term::iri(self.value() + name + "/")});
    }
    return net::turtle_response(200, g);
  }

  if (!rest.ends_with('/')) rest += '/';
  std::string name = rest.substr(0, rest.size() - 1);
  auto current = gripper_.get(name);
  if (!current || name.find('/') != std::string::npos) {
    return net::error_response(404, "NotFound", "no component at " + req.path);
  }
  std::string self = origin + std::string(kRoot) + name + "/";

  if (req.method == "GET") return net::turtle_response(200, describe(*current, self));
  if (req.method != "PUT") return net::error_response(405, "MethodNotAllowed", req.method + " is not supported");

  auto type = net::media_type_of(req.header("Content-Type"));
  if (!type.empty() && type != rdf::kTurtleMediaType) {
    return net::error_response(415, "UnsupportedMediaType", "expected text/turtle");
  }
  rdf::Graph body;
  try {
    body = rdf::parse_turtle(req.body, self);
  } catch (const rdf::SyntaxError& e) {
    return net::error_response(400, "SyntaxError", e.what());
  }
  auto states = body.objects(rdf::Term::iri(self), iri(rdf::saref::kHasState));
  if (states.size() != 1) {
    return net::error_response(400, "BadRequest",
                               "expected exactly one saref:hasState triple for <" + self + ">, found " +
                                   std::to_string(states.size()));
  }
  const rdf::Term& value = states.front();
  if (!value.is_literal() || gripper_.set_state(name, value.value()) == Gripper::Update::IllegalState) {
    std::string legal;
    for (const auto& s : Gripper::legal_states(name)) legal += (legal.empty() ? "" : ", ") + s;
    return net::error_response(422, "IllegalState", name + " accepts only: " + legal);
  }
  net::Response r;
  r.status = 204;
  return r;
}

}  // namespace virtrep::sim
