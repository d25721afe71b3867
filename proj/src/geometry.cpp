#include "excalc/geometry.hpp"

#include <cmath>
#include <numbers>

namespace excalc {

std::vector<std::pair<std::string, std::complex<double>>> sampleRegion(
    const Region& r, int count, std::uint64_t seed, double radiusCap) {
  if (r.prims.empty()) return {};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<std::pair<std::string, std::complex<double>>> out;
  for (int i = 0; i < count; ++i) {
    const auto& p = r.prims[i % r.prims.size()];
    double lo = p.r0, hi = std::min(p.r1, std::max(radiusCap, 2.0 * p.r0));
    // stay strictly inside
    double margin = 1e-3 * (hi - lo);
    double rad = lo + margin + (hi - lo - 2 * margin) * uni(rng);
    double ang = 2.0 * std::numbers::pi * uni(rng);
    out.push_back(
        {p.chart, p.center + std::polar(rad, ang)});
  }
  return out;
}

void checkHolomorphic(const std::vector<ScalarField>& comp, int n,
                      const std::string& what) {
  for (auto& f : comp)
    for (int i = 1; i <= n; ++i)
      if (!f.derivative(Var::zbar(i)).isZero())
        throw ExcalcError(what + ": component " + f.str() +
                          " is not holomorphic (dbar != 0)");
}

namespace {

// One-sided smooth cutoff pair built from the bump primitive composed with
// monotone rational squashes (see the convention memo).  With
// u = (|z-c|^2 - rIn^2) / (rOut^2 - rIn^2):
//   cut  = nInner / (nInner + nOuter)  is 1 for u <= 0, 0 for u >= 1;
//   ccut = nOuter / (nInner + nOuter)  is the exact complement, and
// both vanish *exactly* (a structurally zero factor) on their dead side,
// which lets products with singular forms evaluate to zero there.
struct CutoffPair {
  ScalarField cut, ccut;
};

CutoffPair cutoffField(std::complex<double> center, double rIn, double rOut,
                       BumpProfile profile) {
  if (rIn >= rOut)
    throw ExcalcError("partition of unity: degenerate overlap (rIn >= rOut)");
  ScalarField z = ScalarField::coord(1);
  ScalarField c = ScalarField::constant(CNum::approx(center));
  ScalarField dz = z - c;
  ScalarField r2 = dz * dz.conj();  // |z - c|^2, real
  double denom = rOut * rOut - rIn * rIn;
  ScalarField u =
      (r2 - ScalarField::constant(CNum::approx({rIn * rIn, 0.0}))) *
      ScalarField::constant(CNum::approx({1.0 / denom, 0.0}));
  ScalarField one(1L), two(2L);
  // sInner < 1 iff u < 1 (removable pole only at u = 2)
  ScalarField sInner = u / (two - u);
  // sOuter < 1 iff u > 0 (removable pole only at u = -1)
  ScalarField sOuter = (one - u) / (one + u);
  if (profile == BumpProfile::Cubic) {
    // cubing is odd and monotone, so supports are preserved exactly while
    // the transition profile changes
    sInner = sInner * sInner * sInner;
    sOuter = sOuter * sOuter * sOuter;
  }
  ScalarField nInner = bumpF(sInner);
  ScalarField nOuter = bumpF(sOuter);
  ScalarField total = nInner + nOuter;
  return {nInner / total, nOuter / total};
}

}  // namespace

PartitionOfUnity buildPartitionOfUnity(
    const std::vector<PUZone>& zones,
    const std::map<std::string, int>& defaults, BumpProfile profile) {
  PartitionOfUnity pu;
  std::map<std::string, ScalarField> rho1, rho0;
  for (auto& [chart, v] : defaults) {
    rho1[chart] = ScalarField((long)v);
    rho0[chart] = ScalarField(1L - (long)v);
  }
  for (auto& z : zones) {
    CutoffPair cp = cutoffField(z.center, z.rIn, z.rOut, profile);
    // innerSet==1: rho1 is 1 near the center; innerSet==0: roles swap
    ScalarField piece1 = z.innerSet == 1 ? cp.cut : cp.ccut;
    ScalarField piece0 = z.innerSet == 1 ? cp.ccut : cp.cut;
    auto it = rho1.find(z.chart);
    if (it == rho1.end()) {
      rho1[z.chart] = piece1;
      rho0[z.chart] = piece0;
    } else {
      // zone supports on one chart must be disjoint: the sum/product below
      // then agrees with 1 - sum elsewhere while keeping exact zeros
      it->second = it->second + piece1;
      rho0[z.chart] = rho0[z.chart] * piece0;
    }
  }
  pu.rho1 = std::move(rho1);
  pu.rho0 = std::move(rho0);
  return pu;
}

HoneycombSystem honeycombFromMarks(
    const Covering& cov,
    const std::vector<std::pair<std::string, std::complex<double>>>& marks,
    double radius) {
  HoneycombSystem h;
  for (auto& [chart, p] : marks) {
    for (auto& c : h.cells)
      if (c.chart == chart && std::abs(c.center - p) <= 2 * radius)
        throw ExcalcError("honeycomb: overlapping singular cells at " +
                          chart);
    if (!cov.v1.empty()) {
      // the closed disk must sit inside V1
      for (double ang : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}) {
        std::complex<double> bpt =
            p + std::polar(radius, ang * std::numbers::pi / 3.0);
        if (!cov.v1.contains(chart, bpt))
          throw ExcalcError("honeycomb: singular cell escapes V1 on chart " +
                            chart);
      }
    }
    h.cells.push_back({chart, p, radius});
  }
  return h;
}

}  // namespace excalc
