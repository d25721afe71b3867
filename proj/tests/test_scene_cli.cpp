#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "excalc/commands.hpp"

using namespace excalc;
using nlohmann::ordered_json;

namespace {

std::string scenePath(const std::string& name) {
  return std::string(EXCALC_SCENES_DIR) + "/" + name;
}

ordered_json readScene(const std::string& name) {
  std::ifstream in(scenePath(name));
  REQUIRE(in.good());
  return ordered_json::parse(in);
}

std::string writeTemp(const ordered_json& j, const std::string& name) {
  std::string path = "/tmp/excalc_" + name;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  return path;
}

CliOptions optsFor(std::vector<std::string> cmd) {
  CliOptions o;
  o.command = std::move(cmd);
  return o;
}

}  // namespace

TEST_CASE("p1_od loads with two charts and transition z^d") {
  Scene sc = loadScene(scenePath("p1_od.json"));
  CHECK(sc.charts.size() == 2);
  REQUIRE(sc.bundle);
  CHECK(sc.bundle->rank == 1);
  // default d = 2: g_{w->z} = z^-2 in w coordinates
  const BundleTransition* t = sc.bundle->transition("w", "z");
  REQUIRE(t);
  CHECK(t->g.at(0, 0).sameAs(parseField("z1^-2")));
  // parameter override
  Scene sc3 = loadScene(scenePath("p1_od.json"), {{"d", 3}});
  REQUIRE(sc3.sections);
  CHECK(sc3.sections->comps.at("z")[0][0].sameAs(parseField("z1^3")));
}

TEST_CASE("all packaged scenes load cleanly") {
  for (auto name : {"p1_od.json", "tp1_vector_field.json",
                    "linear_foliation.json", "bloom_herrera.json",
                    "torus_area.json"}) {
    Scene sc = loadScene(scenePath(name));
    CHECK(!sc.name.empty());
  }
}

TEST_CASE("cocycle-violating transition is a named load error") {
  ordered_json j = readScene("p1_od.json");
  j["bundle"]["g"][0]["matrix"][0][0] = "z1^-2 + 1";  // breaks g_zw g_wz = 1
  std::string path = writeTemp(j, "bad_cocycle.json");
  CHECK_THROWS_WITH_AS(loadScene(path),
                       doctest::Contains("bundle"), SceneError);
}

TEST_CASE("missing triangulation is reported by residue-theorem") {
  ordered_json j = readScene("tp1_vector_field.json");
  j.erase("triangulation");
  Scene sc = loadScene(writeTemp(j, "no_tri.json"));
  CHECK_THROWS_WITH_AS(
      runCommand(&sc, optsFor({"verify", "residue-theorem"})),
      doctest::Contains("triangulation required"), SceneError);
}

TEST_CASE("unknown parameter reference fails at load") {
  ordered_json j = readScene("p1_od.json");
  j["sections"]["comps"]["z"][0][0] = "z1^${q}";
  CHECK_THROWS_AS(loadScene(writeTemp(j, "bad_param.json")), SceneError);
}

TEST_CASE("camacho-sad command on linear_foliation") {
  Scene sc = loadScene(scenePath("linear_foliation.json"));
  CommandResult r = runCommand(&sc, optsFor({"residue", "camacho-sad"}));
  CHECK(r.exitCode == 0);
  CHECK(r.report.at("schema") == 1);
  CHECK(r.report.at("pass") == true);
  double re = r.report["results"]["residue"][0].get<double>();
  CHECK(std::abs(re - 1.5) < 1e-8);
  CHECK(r.report.contains("convention_memo_hash"));
}

TEST_CASE("cech verify on the torus area scene is deterministic") {
  Scene sc = loadScene(scenePath("torus_area.json"));
  CommandResult a = runCommand(&sc, optsFor({"cech", "verify"}));
  CommandResult b = runCommand(&sc, optsFor({"cech", "verify"}));
  CHECK(a.exitCode == 0);
  CHECK(a.report.dump() == b.report.dump());
  double area = a.report["results"]["honeycomb_integral"][0].get<double>();
  CHECK(std::abs(area - 1.0) < 1e-9);
}

TEST_CASE("residue index on tp1 is radius invariant") {
  Scene sc = loadScene(scenePath("tp1_vector_field.json"));
  CliOptions o = optsFor({"residue", "index"});
  o.tol = 1e-9;
  CommandResult r = runCommand(&sc, o);
  CHECK(r.exitCode == 0);
  CHECK(r.report["results"]["radius_invariant"] == true);
  for (auto& run : r.report["results"]["runs"])
    CHECK(run["index"].get<long>() == 1);
}

TEST_CASE("bloom-herrera command reports the obstruction") {
  Scene sc = loadScene(scenePath("bloom_herrera.json"));
  CliOptions o = optsFor({"extendability", "bloom-herrera"});
  o.maxDegree = 20;
  CommandResult r = runCommand(&sc, o);
  CHECK(r.exitCode == 0);
  CHECK(r.report["results"]["verdict"] == "INFEASIBLE");
  CHECK(r.report["results"]["obstruction_degree"].get<long>() == 13);
  CHECK(r.report["results"]["first_infeasible_truncation"].get<long>() == 13);
}

TEST_CASE("stokes command passes its trials") {
  CliOptions o = optsFor({"verify", "stokes"});
  o.trials = 10;
  CommandResult r = runCommand(nullptr, o);
  CHECK(r.exitCode == 0);
  CHECK(r.report["results"]["passed"].get<int>() == 10);
  CHECK(r.report["results"]["max_difference"].get<double>() < 1e-8);
}

TEST_CASE("table rendering flattens the report") {
  Scene sc = loadScene(scenePath("linear_foliation.json"));
  CommandResult r = runCommand(&sc, optsFor({"residue", "camacho-sad"}));
  std::string t = renderTable(r.report);
  CHECK(t.find("schema = 1") != std::string::npos);
  CHECK(t.find("results.residue") != std::string::npos);
}
