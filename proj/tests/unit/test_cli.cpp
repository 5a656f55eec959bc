#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sdot/cli/job.hpp"
#include "sdot/error.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("sdot_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Run {
  int status;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run cli(const std::string& args, const std::string& env = "") {
  const auto o = scratch() / "stdout", e = scratch() / "stderr";
  const std::string cmd = env + " " + SDOT_CLI_PATH + " " + args + " >" + o.string() + " 2>" + e.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(o), slurp(e)};
}

json load(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("flagship check passes") {
  const auto r = cli("check --builtin vect:2,2 --construction s --checks identities,2segal:all --levels 4 --out " +
                      path("flag.json"));
  CHECK(r.status == 0);
  const auto j = load(path("flag.json"));
  CHECK(j["schema"] == sdot::cli::kReportSchema);
  CHECK(j["pass"] == true);
  CHECK(j["checks"]["identities"]["pass"] == true);
  CHECK(j["checks"]["2segal:all"]["pass"] == true);
  CHECK(j["construction"]["sizes"].size() == 5);
  CHECK(j.contains("timings"));
  CHECK(j["conventions"].contains("tie_break"));
  CHECK(j["conventions"].contains("lower_family"));
}

TEST_CASE("seq fails with a certified witness") {
  const auto r = cli("check --builtin vect:2,2 --construction seq --checks identities --levels 3 --out " + path("seq.json"));
  CHECK(r.status != 0);
  const auto j = load(path("seq.json"));
  CHECK(j["pass"] == false);
  const auto& id = j["checks"]["identities"];
  CHECK(id["pass"] == false);
  CHECK_FALSE(id["violations"].empty());
  CHECK(id["seq_witness"]["verified"] == true);
}

TEST_CASE("configuration errors exit 2") {
  auto r = cli("check --input " + path("does_not_exist.json") + " --out " + path("missing.json"));
  CHECK(r.status == 2);
  const auto j = load(path("missing.json"));
  CHECK(j["error"]["code"] == "configuration");
  CHECK_FALSE(j["error"]["message"].get<std::string>().empty());

  CHECK(cli("check --builtin vect:2,2 --construction nope --out " + path("bad.json")).status == 2);
  CHECK(cli("check --builtin vect:2,2 --checks frobnicate --out " + path("bad.json")).status == 2);
  CHECK(cli("check --builtin vect:2,2 --construction s --levels 9 --out " + path("bad.json")).status == 2);
  CHECK(cli("check --builtin vect:2,2 --input x.json --out " + path("bad.json")).status == 2);
  CHECK(cli("check --builtin vect:2,2 --construction s2 --levels 2 --convention odd --out " + path("bad.json")).status == 2);
}

TEST_CASE("work budget ceiling") {
  const auto r = cli("check --builtin vect:2,2 --construction s --levels 4 --out " + path("budget.json"),
                      "SDOT_WORK_BUDGET=1000");
  CHECK(r.status != 0);
  const auto j = load(path("budget.json"));
  CHECK(j.contains("error"));
  CHECK(j["error"]["code"] == "scale");
}

TEST_CASE("reports are deterministic modulo timings") {
  const std::string args = "check --builtin pointed:3 --construction s --checks identities,2segal:all,row0,k0 --levels 3";
  REQUIRE(cli(args + " --out " + path("d1.json")).status == 0);
  REQUIRE(cli(args + " --out " + path("d2.json")).status == 0);
  auto a = load(path("d1.json")), b = load(path("d2.json"));
  a.erase("timings");
  b.erase("timings");
  CHECK(a.dump() == b.dump());

  const auto d = cli("diff " + path("d1.json") + " " + path("d2.json"));
  CHECK(d.status == 0);
  CHECK(d.out.empty());
}

TEST_CASE("diff lists differing fields and rejects foreign schemas") {
  REQUIRE(cli("check --builtin vect:2,1 --construction s --checks identities --levels 3 --out " + path("a.json")).status ==
          0);
  auto j = load(path("a.json"));
  j["checks"]["identities"]["violations"].push_back({{"cell", 0}});
  j["timings"]["construct"] = 123.0;
  std::ofstream(path("b.json")) << j.dump(2);
  const auto d = cli("diff " + path("a.json") + " " + path("b.json"));
  CHECK(d.status == 1);
  CHECK(d.out.find("violations") != std::string::npos);
  CHECK(d.out.find("timings") == std::string::npos);

  j["schema"] = "sdot-report/0";
  std::ofstream(path("c.json")) << j.dump(2);
  CHECK(cli("diff " + path("a.json") + " " + path("c.json")).status == 7);
  std::ofstream(path("e.json")) << "{ not json";
  CHECK(cli("diff " + path("a.json") + " " + path("e.json")).status == 7);
}

TEST_CASE("json_diff") {
  const json a{{"x", 1}, {"y", {1, 2}}, {"timings", {{"t", 1}}}};
  json b = a;
  CHECK(sdot::cli::json_diff(a, b).empty());
  b["timings"]["t"] = 2;
  CHECK(sdot::cli::json_diff(a, b).empty());
  b["y"][1] = 3;
  b["z"] = true;
  const auto d = sdot::cli::json_diff(a, b);
  CHECK(d.size() == 2);
}

TEST_CASE("generated categories load back") {
  REQUIRE(cli("generate --builtin vect:2,1 --out " + path("v21.json")).status == 0);
  REQUIRE(cli("check --input " + path("v21.json") + " --construction s --checks identities,2segal:all --levels 3 --out " +
               path("in.json"))
              .status == 0);
  REQUIRE(cli("check --builtin vect:2,1 --construction s --checks identities,2segal:all --levels 3 --out " +
               path("bi.json"))
              .status == 0);
  const auto a = load(path("in.json")), b = load(path("bi.json"));
  CHECK(a["construction"]["sizes"] == b["construction"]["sizes"]);
  CHECK(a["checks"] == b["checks"]);
}

TEST_CASE("k0 subcommand") {
  REQUIRE(cli("k0 --builtin vect:2,3 --out " + path("k0.json")).status == 0);
  const auto j = load(path("k0.json"));
  const auto& k = j["checks"]["k0"];
  CHECK(k["rank"] == 1);
  CHECK(k["torsion"].empty());
  CHECK(k["generators"].size() == 4);
}

TEST_CASE("construct s2 under both conventions") {
  REQUIRE(cli("construct --builtin vect:2,1 --construction s2 --levels 1,1 --zero-policy canonical --out " +
               path("w.json"))
              .status == 0);
  REQUIRE(cli("construct --builtin vect:2,1 --construction s2 --levels 1,1 --zero-policy canonical --convention "
               "diagonal --out " +
               path("g.json"))
              .status == 0);
  const auto w = load(path("w.json")), g = load(path("g.json"));
  CHECK(w != g);
}

TEST_CASE("negative control through the CLI") {
  const std::string fixture = std::string(SDOT_DATA_DIR) + "/semi_stable_control.json";
  const auto r = cli("check --input " + fixture +
                      " --construction sigma-s --checks pointed,stable:semi,stable:full,2segal:lower,2segal:upper "
                      "--levels 4 --out " +
                      path("ctl.json"));
  CHECK(r.status == 1);
  const auto j = load(path("ctl.json"));
  CHECK(j["checks"]["pointed"]["pass"] == true);
  CHECK(j["checks"]["stable:semi"]["pass"] == true);
  CHECK(j["checks"]["stable:full"]["pass"] == false);
  CHECK(j["checks"]["2segal:lower"]["pass"] == true);
  CHECK(j["checks"]["2segal:upper"]["pass"] == false);
}
