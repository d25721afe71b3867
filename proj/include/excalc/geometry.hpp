#pragma once
// Charts, transition maps, coverings, partitions of unity, honeycombs.
#include <random>

#include "mesh.hpp"

namespace excalc {

// Chart-wise region: union of annuli (r0 <= |z - c| <= r1) per chart.
struct Region {
  struct Prim {
    std::string chart;
    std::complex<double> center{0.0, 0.0};
    double r0 = 0.0;
    double r1 = 0.0;
  };
  std::vector<Prim> prims;

  bool contains(const std::string& chart, std::complex<double> z) const {
    for (auto& p : prims) {
      if (p.chart != chart) continue;
      double r = std::abs(z - p.center);
      if (r >= p.r0 - 1e-12 && r <= p.r1 + 1e-12) return true;
    }
    return false;
  }
  bool empty() const { return prims.empty(); }
};

// Deterministic sample points inside a region (radius capped for unbounded
// annuli).
std::vector<std::pair<std::string, std::complex<double>>> sampleRegion(
    const Region& r, int count, std::uint64_t seed, double radiusCap = 4.0);

struct Chart {
  std::string id;
  int n = 1;
  Region domain;
  std::vector<std::complex<double>> marks;
};

struct TransitionMap {
  std::string from, to;
  std::vector<ScalarField> comp;  // target coords as fields of source coords
  Region overlap;                 // described in the source chart
};

// Checks components are holomorphic (structural dbar = 0).
void checkHolomorphic(const std::vector<ScalarField>& comp, int n,
                      const std::string& what);

struct Covering {
  Region v0, v1, zSet;
};

// A transition zone of the partition of unity: rho transitions from 1
// inside |z-center| < rIn to 0 outside |z-center| > rOut for the set
// `innerSet` (0 or 1).
struct PUZone {
  std::string chart;
  std::complex<double> center{0.0, 0.0};
  double rIn = 0.0, rOut = 0.0;
  int innerSet = 1;
};

struct PartitionOfUnity {
  std::map<std::string, ScalarField> rho0, rho1;
  const ScalarField& rho(int j, const std::string& chart) const {
    auto& m = j == 0 ? rho0 : rho1;
    auto it = m.find(chart);
    if (it == m.end())
      throw ExcalcError("partition of unity has no field on chart " + chart);
    return it->second;
  }
};

enum class BumpProfile { Standard, Cubic };

// rho1 on each chart = sum of zone cutoffs (disjoint supports) or the given
// per-chart constant default; rho0 = 1 - rho1.
PartitionOfUnity buildPartitionOfUnity(
    const std::vector<PUZone>& zones,
    const std::map<std::string, int>& defaults, BumpProfile profile);

struct HoneycombSystem {
  struct Cell {
    std::string chart;
    std::complex<double> center;
    double r;
  };
  std::vector<Cell> cells;  // singular cells R_{1,nu}; R_0 = complement
};

HoneycombSystem honeycombFromMarks(
    const Covering& cov,
    const std::vector<std::pair<std::string, std::complex<double>>>& marks,
    double radius);

}  // namespace excalc
