#pragma once
// Command dispatch: runs a subcommand against a loaded scene and produces a
// deterministic JSON report (schema 1) plus a table rendering.
#include "scene.hpp"

namespace excalc {

struct CliOptions {
  std::vector<std::string> command;  // e.g. {"chern"}, {"verify", "stokes"}
  std::string scenePath;
  std::map<std::string, double> params;  // scene parameter overrides
  double tol = 1e-9;                     // quadrature tolerance
  std::uint64_t seed = 0x5EED;
  int q = 1;          // chern / bott-diff / residue-theorem class degree
  int trials = 30;    // stokes / bott-diff sample count
  int maxDegree = 20; // extendability truncation
  bool table = false; // table rendering instead of JSON
};

struct CommandResult {
  int exitCode = 0;  // 0 pass, 1 numeric fail, 2 input error
  nlohmann::ordered_json report;
};

// Dispatches opt.command against the scene (may be null for commands that
// need no scene data).  Throws SceneError for input errors; numeric
// failures are reported via exitCode 1 and "pass": false.
CommandResult runCommand(const Scene* scene, const CliOptions& opt);

std::string renderTable(const nlohmann::ordered_json& report);

// FNV-1a hash of the convention memo (sign and orientation pinning); the
// memo itself is embedded in every report so numbers are comparable across
// builds only when the conventions match.
const std::string& conventionMemo();
std::string conventionMemoHash();

}  // namespace excalc
