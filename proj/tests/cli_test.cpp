#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support/harness.hpp"
#include "support/process.hpp"

using namespace virtrep;
using namespace virtrep::test_support;

namespace {

const std::string kCli = VIRTREP_CLI;

std::string demo(const std::string& name) { return read_text(std::string(VIRTREP_DEMO_DIR) + "/" + name); }

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("virtrep-cli-" + std::to_string(getpid()) + "-" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string write(const std::string& name, const std::string& content) const {
    auto p = path / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

int free_port() {
  net::HttpServer s([](const net::Request&) { return net::Response{}; });
  int port = s.bind();
  s.stop();
  return port;
}

// Demo files with the simulator address rewritten.
struct DemoFiles {
  TempDir dir;
  std::string eq1, eq2, shaft, identity;
  explicit DemoFiles(const SimHarness& sim) {
    eq1 = dir.write("eq1.n3", replace_all(demo("eq1.n3"), kDemoSimOrigin, sim.origin()));
    eq2 = dir.write("eq2.n3", replace_all(demo("eq2.n3"), kDemoSimOrigin, sim.origin()));
    shaft = dir.write("shaft.rq", demo("shaft.rq"));
    identity = dir.write("identity.rq", demo("identity.rq"));
  }
};

std::string abrasion_value(const std::string& body, const std::string& base) {
  auto a = abrasion(rdf::parse_turtle(body, base));
  return a ? a->value() : "";
}

}  // namespace

TEST(Cli, ServesUntilInterrupted) {
  Process serve({kCli, "serve", "--port", "0"});
  std::string root = serve.read_line();
  ASSERT_FALSE(root.empty());
  EXPECT_TRUE(root.ends_with("/ldp/"));
  auto r = http_get(root);
  EXPECT_EQ(r.status, 200);
  EXPECT_NE(r.body.find("ldp:BasicContainer"), std::string::npos);
  serve.signal(SIGINT);
  EXPECT_EQ(serve.wait().exit_code, 0);
}

TEST(Cli, RootNameAndEnvironmentPort) {
  int port = free_port();
  Process serve({kCli, "serve", "--root", "things"}, {"VIRTREP_PORT=" + std::to_string(port)});
  std::string root = serve.read_line();
  EXPECT_EQ(root, "http://localhost:" + std::to_string(port) + "/things/");
  EXPECT_EQ(http_get(root).status, 200);
  serve.signal(SIGTERM);
  EXPECT_EQ(serve.wait().exit_code, 0);
}

TEST(Cli, OccupiedPortFails) {
  net::HttpServer holder([](const net::Request&) { return net::Response{}; });
  holder.start();
  auto o = run({kCli, "serve", "--port", std::to_string(holder.port())});
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_NE(o.err.find("cannot bind"), std::string::npos) << o.err;
  EXPECT_TRUE(o.out.empty());
}

TEST(Cli, BadArgumentsFail) {
  EXPECT_EQ(run({kCli}).exit_code, 1);
  EXPECT_EQ(run({kCli, "frobnicate"}).exit_code, 1);
  EXPECT_EQ(run({kCli, "serve", "--on-failure", "sometimes"}).exit_code, 1);
  EXPECT_EQ(run({kCli, "serve"}, {"VIRTREP_TIMEOUT_MS=soon"}).exit_code, 1);
  EXPECT_EQ(run({kCli, "get"}).exit_code, 1);
  EXPECT_EQ(run({kCli, "--help"}).exit_code, 0);
}

TEST(Cli, SnapshotSurvivesRestart) {
  TempDir dir;
  std::string snap = dir.file("store.ttl");
  std::string port = std::to_string(free_port());
  std::string resource;
  {
    Process serve({kCli, "serve", "--port", port, "--snapshot", snap});
    std::string root = serve.read_line();
    ASSERT_FALSE(root.empty());
    auto created = http_post(root, "text/turtle", "<> <http://x/p> \"kept\" .", "note");
    ASSERT_EQ(created.status, 201);
    resource = created.header("Location");
    serve.signal(SIGINT);
    ASSERT_EQ(serve.wait().exit_code, 0);
  }
  ASSERT_TRUE(std::filesystem::exists(snap));
  Process serve({kCli, "serve", "--port", port, "--snapshot", snap});
  ASSERT_FALSE(serve.read_line().empty());
  auto r = http_get(resource);
  EXPECT_EQ(r.status, 200);
  EXPECT_NE(r.body.find("\"kept\""), std::string::npos);
  serve.signal(SIGINT);
  EXPECT_EQ(serve.wait().exit_code, 0);
}

TEST(Cli, SimulatorCommand) {
  std::string port = std::to_string(free_port());
  Process sim({kCli, "sim-gripper", "--port", port});
  std::string root = sim.read_line();
  EXPECT_EQ(root, "http://localhost:" + port + "/gripper/");
  EXPECT_EQ(http_put(root + "arm/", "text/turtle", "<> <https://w3id.org/saref#hasState> \"down\" .").status, 204);
  EXPECT_NE(http_get(root + "arm/").body.find("demo:actionCount 1"), std::string::npos);
  sim.signal(SIGINT);
  EXPECT_EQ(sim.wait().exit_code, 0);
}

TEST(Cli, DeployGetAndSwap) {
  SimHarness sim;
  VrHarness vr;
  DemoFiles files(sim);

  auto deployed = run({kCli, "deploy", vr.root(), "ShaftContainer", files.eq1, files.shaft, "--simulates",
                       sim.component("arm")});
  ASSERT_EQ(deployed.exit_code, 0) << deployed.err;
  std::string shaft = vr.root() + "ShaftContainer/shaft";
  EXPECT_EQ(deployed.out, shaft + "\n");
  std::string container = vr.root() + "ShaftContainer/";

  move_arm(sim, 15);
  auto got = run({kCli, "get", shaft});
  ASSERT_EQ(got.exit_code, 0) << got.err;
  EXPECT_NE(got.out.find("demo:abrasion 0.5"), std::string::npos) << got.out;
  // Byte-exact body on stdout.
  EXPECT_EQ(got.out, http_get(shaft).body);

  auto listing = run({kCli, "get", container});
  EXPECT_EQ(listing.exit_code, 0);
  EXPECT_NE(listing.out.find("ldp:contains"), std::string::npos);

  auto missing = run({kCli, "get", vr.root() + "nope"});
  EXPECT_EQ(missing.exit_code, 1);
  EXPECT_TRUE(missing.out.empty());
  EXPECT_NE(missing.err.find("404"), std::string::npos);

  EXPECT_EQ(run({kCli, "swap-program", container, files.eq2}).exit_code, 0);
  EXPECT_EQ(abrasion_value(run({kCli, "get", shaft}).out, shaft), "0.125");

  std::string broken = files.dir.write("broken.n3", "{ ?x <http://x/p> } => { } .");
  auto rejected = run({kCli, "swap-program", container, broken});
  EXPECT_EQ(rejected.exit_code, 1);
  EXPECT_NE(rejected.err.find("400"), std::string::npos) << rejected.err;
  EXPECT_EQ(abrasion_value(run({kCli, "get", shaft}).out, shaft), "0.125");

  EXPECT_EQ(run({kCli, "swap-query", container, files.identity}).exit_code, 0);
  auto reshaped = run({kCli, "get", shaft});
  EXPECT_NE(reshaped.out.find("saref:hasState"), std::string::npos);
  EXPECT_EQ(abrasion_value(reshaped.out, shaft), "0.125");

  auto again = run({kCli, "deploy", vr.root(), "ShaftContainer", files.eq1, files.shaft});
  EXPECT_EQ(again.exit_code, 1);
  EXPECT_NE(again.err.find("409"), std::string::npos) << again.err;
}

TEST(Cli, DeployChecksFilesFirst) {
  // The parent is unreachable; the missing file must be reported instead.
  int port = free_port();
  auto o = run({kCli, "deploy", "http://127.0.0.1:" + std::to_string(port) + "/ldp/", "x", "/no/such/file.n3",
                "/no/such/query.rq"});
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_NE(o.err.find("cannot read /no/such/file.n3"), std::string::npos) << o.err;
}

TEST(Cli, SwapFindsConfigurationWithoutVr) {
  SimHarness sim;
  VrHarness vr;
  DemoFiles files(sim);
  std::string c = http_post(vr.root(), "", "", "partial", std::string(rdf::vr::kVrContainerMarker)).header("Location");
  std::string q = http_post(c, "application/sparql-query", demo("shaft.rq"), "query").header("Location");
  EXPECT_EQ(run({kCli, "swap-query", c, files.identity}).exit_code, 0);
  EXPECT_EQ(http_get(q, "*/*").body, demo("identity.rq"));
  auto none = run({kCli, "swap-program", c, files.eq1});
  EXPECT_EQ(none.exit_code, 1);
  EXPECT_NE(none.err.find("no text/n3 resource"), std::string::npos) << none.err;
}

// The CLI's deploy leaves the store exactly as the documented raw HTTP
// sequence does.
TEST(Cli, DeployEquivalentToRawHttp) {
  SimHarness sim;
  VrHarness by_cli, by_hand;
  DemoFiles files(sim);
  ASSERT_EQ(run({kCli, "deploy", by_cli.root(), "ShaftContainer", files.eq1, files.shaft, "--simulates",
                 sim.component("arm")})
                .exit_code,
            0);
  deploy(by_hand.root(), "ShaftContainer", read_text(files.eq1), demo("shaft.rq"), "shaft", sim.component("arm"));
  EXPECT_EQ(replace_all(by_cli.vr->snapshot(), by_cli.origin(), "ORIGIN"),
            replace_all(by_hand.vr->snapshot(), by_hand.origin(), "ORIGIN"));

  ASSERT_EQ(run({kCli, "swap-program", by_cli.root() + "ShaftContainer/", files.eq2}).exit_code, 0);
  ASSERT_EQ(http_put(by_hand.root() + "ShaftContainer/program", "text/n3", read_text(files.eq2)).status, 204);
  EXPECT_EQ(replace_all(by_cli.vr->snapshot(), by_cli.origin(), "ORIGIN"),
            replace_all(by_hand.vr->snapshot(), by_hand.origin(), "ORIGIN"));
}
