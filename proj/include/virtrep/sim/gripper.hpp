#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "virtrep/net/http.hpp"
#include "virtrep/rdf/graph.hpp"

namespace virtrep::sim {

struct ComponentState {
  std::string name;   // "arm" or "claw"
  std::string state;  // arm: up/down, claw: opened/closed
  long long action_count = 0;
};

/// The gripper's arm and claw. Every accepted state change bumps the
/// component's action counter by one; writing the current state does not.
class Gripper {
 public:
  Gripper();

  std::vector<std::string> components() const;
  std::optional<ComponentState> get(std::string_view name) const;

  enum class Update { Changed, Unchanged, UnknownComponent, IllegalState };
  Update set_state(std::string_view name, std::string_view state);

  static const std::vector<std::string>& legal_states(std::string_view name);

 private:
  struct Component {
    std::string state;
    long long action_count = 0;
    mutable std::mutex mutex;
  };
  std::map<std::string, Component, std::less<>> components_;
};

/// Description of a component at `self`: type, hasState and actionCount.
rdf::Graph describe(const ComponentState& c, const std::string& self);

/// HTTP face of a Gripper under /gripper/, /gripper/arm/ and /gripper/claw/.
/// Resource IRIs are built from the request's Host header.
class GripperService {
 public:
  explicit GripperService(Gripper& gripper) : gripper_(gripper) {}
  net::Response handle(const net::Request& req);

 private:
  Gripper& gripper_;
};

}  // namespace virtrep::sim
