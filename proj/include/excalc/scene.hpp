#pragma once
// Scene files: JSON fixtures bundling charts, transitions, covering,
// honeycomb, triangulation, bundle/section/connection data, foliations and
// expected blocks.  Loading validates every sampled invariant and fails
// with the first violated one named.
#include <json.hpp>
#include <optional>

#include "residues.hpp"
#include "series.hpp"

namespace excalc {

// Input/usage errors (bad scene files, missing sections, bad flags); the
// CLI maps these to exit code 2, numeric failures to 1.
struct SceneError : ExcalcError {
  using ExcalcError::ExcalcError;
};

struct Scene {
  std::string name;
  std::string path;
  std::map<std::string, double> params;  // after overrides

  std::vector<Chart> charts;
  std::vector<TransitionMap> transitions;

  std::optional<BundleData> bundle;
  std::optional<SectionTuple> sections;
  std::map<std::string, Region> v0;
  std::optional<ConnectionData> c1;

  std::vector<PUZone> puZones;
  std::map<std::string, int> puDefaults;
  BumpProfile profile = BumpProfile::Standard;
  std::optional<PartitionOfUnity> pu;

  std::optional<HoneycombSystem> honeycomb;
  std::optional<Triangulation> tri;

  std::optional<SceneForm> globalForm;  // explicit global cochain source

  struct Foliation {
    ScalarField a, b;
    std::string linkChart;
    std::complex<double> linkCenter{0.0, 0.0};
    double linkRadius = 1.0;
    int linkSegments = 16;
  };
  std::optional<Foliation> foliation;

  struct BmIndexSpec {
    std::vector<ScalarField> f;
    int m = 1;
    std::vector<double> radii = {1.0};
    int segments = 16;    // m = 1 link segments
    int refinement = 2;   // m = 2 sphere refinement
  };
  std::optional<BmIndexSpec> bmindex;

  struct Extendability {
    Form omega;  // holomorphic 1-form on C^2, polynomial coefficients
    std::vector<ScalarField> map;
  };
  std::optional<Extendability> ext;

  nlohmann::ordered_json expected;  // per-command expected blocks

  int chartDim(const std::string& id) const;
};

// Loads and validates a scene.  String values may reference parameters as
// "${name}" or "${-name}"; overrides replace the file's "params" defaults.
Scene loadScene(const std::string& path,
                const std::map<std::string, double>& overrides = {});

}  // namespace excalc
