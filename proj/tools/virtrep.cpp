// virtrep: run the VR server or the gripper simulator, deploy VR
// containers and swap their configuration.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <pthread.h>
#include <sstream>

#include <CLI11.hpp>

#include "virtrep/cli/client.hpp"
#include "virtrep/net/http.hpp"
#include "virtrep/server/vr_server.hpp"
#include "virtrep/sim/gripper.hpp"

using namespace virtrep;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Failure("cannot read " + path);
  return ss.str();
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

int env_int(const char* name, int fallback) {
  std::string v = env_or(name, "");
  if (v.empty()) return fallback;
  try {
    std::size_t used = 0;
    int n = std::stoi(v, &used);
    if (used == v.size()) return n;
  } catch (const std::exception&) {
  }
  throw Failure(std::string(name) + " is not an integer: " + v);
}

// Signals are blocked before any server thread starts, so only sigwait
// below ever sees them.
sigset_t block_shutdown_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return set;
}

int wait_for_shutdown(const sigset_t& set) {
  int sig = 0;
  sigwait(&set, &sig);
  return sig;
}

struct Options {
  int port = 0;
  std::string host = "127.0.0.1";
  std::string base;
  std::string root = "ldp";
  std::string snapshot;
  int timeout_ms = 5000;
  std::string on_failure = "abort";

  std::string container;
  std::string program_file;
  std::string query_file;
  std::string vr_name = "shaft";
  std::string simulates;
  std::string target;
  std::string file;
};

int serve(const Options& o) {
  server::ServerConfig config;
  config.root_name = o.root;
  config.fetch.timeout = std::chrono::milliseconds(o.timeout_ms);
  config.fetch.on_failure = *collect::failure_policy_from(o.on_failure);
  if (!config.fetch.valid()) throw Failure("invalid fetch settings");
  server::VrServer vr(config);

  auto signals = block_shutdown_signals();
  net::HttpServer http([&](const net::Request& r) { return vr.handle(r); }, {o.host, o.port});
  int port = http.bind();
  vr.set_origin(o.base.empty() ? "http://localhost:" + std::to_string(port) : o.base);
  if (!o.snapshot.empty() && std::filesystem::exists(o.snapshot)) {
    vr.load_snapshot(o.snapshot);
    std::cerr << "restored " << o.snapshot << "\n";
  }
  http.start();
  std::cout << vr.iri_of(vr.root_path()) << std::endl;
  std::cerr << "serving on " << o.host << ":" << port << ", Ctrl-C to stop\n";

  wait_for_shutdown(signals);
  http.stop();
  if (!o.snapshot.empty()) {
    vr.save_snapshot(o.snapshot);
    std::cerr << "saved " << o.snapshot << "\n";
  }
  return 0;
}

int sim_gripper(const Options& o) {
  sim::Gripper gripper;
  sim::GripperService service(gripper);
  auto signals = block_shutdown_signals();
  net::HttpServer http([&](const net::Request& r) { return service.handle(r); }, {o.host, o.port});
  int port = http.bind();
  http.start();
  std::cout << "http://localhost:" << port << "/gripper/" << std::endl;
  wait_for_shutdown(signals);
  http.stop();
  return 0;
}

cli::Client client(const Options& o) { return cli::Client{std::chrono::milliseconds(o.timeout_ms)}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual representation server and tools"};
  app.require_subcommand(1, 1);
  Options o;
  try {
    o.timeout_ms = env_int("VIRTREP_TIMEOUT_MS", 5000);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  app.add_option("--timeout-ms", o.timeout_ms, "Request timeout in milliseconds (env VIRTREP_TIMEOUT_MS)")
      ->check(CLI::PositiveNumber);

  auto* serve_cmd = app.add_subcommand("serve", "Run the VR server");
  serve_cmd->add_option("--port", o.port, "Listening port, 0 for any free port (env VIRTREP_PORT, default 8080)");
  serve_cmd->add_option("--host", o.host, "Listening address")->capture_default_str();
  serve_cmd->add_option("--base", o.base, "Public origin of resource IRIs (default http://localhost:<port>)");
  serve_cmd->add_option("--root", o.root, "Name of the root container")->capture_default_str();
  serve_cmd->add_option("--snapshot", o.snapshot, "Snapshot file restored on start and written on shutdown");
  serve_cmd->add_option("--on-failure", o.on_failure, "Default upstream failure policy")
      ->check(CLI::IsMember({"abort", "partial"}))
      ->capture_default_str();
  serve_cmd->add_option("--timeout-ms", o.timeout_ms, "Upstream request timeout in milliseconds")
      ->check(CLI::PositiveNumber);

  auto* sim_cmd = app.add_subcommand("sim-gripper", "Run the gripper simulator");
  sim_cmd->add_option("--port", o.port, "Listening port, 0 for any free port (default 8081)");
  sim_cmd->add_option("--host", o.host, "Listening address")->capture_default_str();

  auto* deploy_cmd = app.add_subcommand("deploy", "Create a VR container with program, query and VR");
  deploy_cmd->add_option("parent", o.target, "Container to deploy into, e.g. http://localhost:8080/ldp/")->required();
  deploy_cmd->add_option("name", o.container, "Name of the new VR container")->required();
  deploy_cmd->add_option("program", o.program_file, "N3 program file")->required();
  deploy_cmd->add_option("query", o.query_file, "SPARQL CONSTRUCT file")->required();
  deploy_cmd->add_option("--vr-name", o.vr_name, "Name of the virtual resource")->capture_default_str();
  deploy_cmd->add_option("--simulates", o.simulates, "IRI of the physical thing the VR stands for");

  auto* get_cmd = app.add_subcommand("get", "Print a resource body");
  get_cmd->add_option("iri", o.target, "Resource IRI")->required();

  auto* swap_program_cmd = app.add_subcommand("swap-program", "Replace the program of a VR container");
  swap_program_cmd->add_option("container", o.target, "VR container IRI")->required();
  swap_program_cmd->add_option("file", o.file, "N3 program file")->required();

  auto* swap_query_cmd = app.add_subcommand("swap-query", "Replace the query of a VR container");
  swap_query_cmd->add_option("container", o.target, "VR container IRI")->required();
  swap_query_cmd->add_option("file", o.file, "SPARQL CONSTRUCT file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*serve_cmd) {
      if (serve_cmd->count("--port") == 0) o.port = env_int("VIRTREP_PORT", 8080);
      return serve(o);
    }
    if (*sim_cmd) {
      if (sim_cmd->count("--port") == 0) o.port = 8081;
      return sim_gripper(o);
    }
    if (*deploy_cmd) {
      // Both files are read before anything is sent.
      cli::DeployRequest req{o.target, o.container, read_file(o.program_file), read_file(o.query_file), o.vr_name,
                             o.simulates};
      std::cout << client(o).deploy(req) << "\n";
      return 0;
    }
    if (*get_cmd) {
      auto r = client(o).get(o.target);
      std::cout.write(r.body.data(), static_cast<std::streamsize>(r.body.size()));
      std::cout.flush();
      return 0;
    }
    if (*swap_program_cmd) {
      client(o).swap(o.target, "text/n3", read_file(o.file));
      return 0;
    }
    if (*swap_query_cmd) {
      client(o).swap(o.target, "application/sparql-query", read_file(o.file));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
