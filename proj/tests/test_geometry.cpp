#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "excalc/geometry.hpp"

using namespace excalc;
using cplx = std::complex<double>;

namespace {
EvalPoint pt1(cplx z) {
  EvalPoint p;
  p.z = {z};
  return p;
}
}  // namespace

TEST_CASE("partition of unity: exactness on the flat regions") {
  std::vector<PUZone> zones = {{"z", cplx(0, 0), 0.3, 0.95, 1}};
  std::map<std::string, int> defaults = {{"w", 0}};
  for (auto profile : {BumpProfile::Standard, BumpProfile::Cubic}) {
    PartitionOfUnity pu = buildPartitionOfUnity(zones, defaults, profile);
    const ScalarField& r1 = pu.rho(1, "z");
    const ScalarField& r0 = pu.rho(0, "z");
    // rho vanishes *exactly* on its dead side (a structurally zero factor);
    // the value 1 on the flat side is exact up to one rounding of a/a
    CHECK(std::abs(r1.eval(pt1({0.1, 0.2})) - 1.0) < 1e-15);
    CHECK(std::abs(r1.eval(pt1({0.0, 0.0})) - 1.0) < 1e-15);
    CHECK(r1.eval(pt1({0.97, 0.0})) == cplx(0, 0));
    CHECK(r1.eval(pt1({0.0, -2.0})) == cplx(0, 0));
    CHECK(r0.eval(pt1({0.1, 0.2})) == cplx(0, 0));
    CHECK(std::abs(r0.eval(pt1({2.0, 0.0})) - 1.0) < 1e-15);
    // the chart without zones uses its default
    CHECK(pu.rho(1, "w").eval(pt1({0.4, 0.4})) == cplx(0, 0));
    CHECK(pu.rho(0, "w").eval(pt1({0.4, 0.4})) == cplx(1, 0));
  }
}

TEST_CASE("partition of unity: sums to one and stays in [0,1]") {
  std::vector<PUZone> zones = {{"z", cplx(0.2, -0.1), 0.3, 0.95, 1}};
  Region annulus{{{"z", cplx(0.2, -0.1), 0.0, 2.0}}};
  auto pts = sampleRegion(annulus, 100, 0x5EED);
  for (auto profile : {BumpProfile::Standard, BumpProfile::Cubic}) {
    PartitionOfUnity pu = buildPartitionOfUnity(zones, {}, profile);
    for (auto& [chart, z] : pts) {
      cplx v0 = pu.rho(0, chart).eval(pt1(z));
      cplx v1 = pu.rho(1, chart).eval(pt1(z));
      CHECK(std::abs(v0 + v1 - 1.0) < 1e-12);
      CHECK(std::abs(v0.imag()) < 1e-14);
      CHECK(v0.real() > -1e-14);
      CHECK(v0.real() < 1.0 + 1e-14);
    }
  }
}

TEST_CASE("partition of unity: d rho supported in the transition annulus") {
  std::vector<PUZone> zones = {{"z", cplx(0, 0), 0.3, 0.95, 1}};
  PartitionOfUnity pu =
      buildPartitionOfUnity(zones, {}, BumpProfile::Standard);
  ScalarField dr = pu.rho(1, "z").derivative(Var::z(1));
  // inside the flat region the quotient-rule terms cancel to rounding noise
  CHECK(std::abs(dr.eval(pt1({0.1, 0.1}))) < 1e-15);
  CHECK(dr.eval(pt1({1.2, 0.0})) == cplx(0, 0));
  CHECK(std::abs(dr.eval(pt1({0.6, 0.0}))) > 1e-6);
  // d rho0 = -d rho1 numerically in the transition annulus
  ScalarField d0 = pu.rho(0, "z").derivative(Var::z(1));
  for (double x : {0.45, 0.6, 0.8}) {
    cplx a = d0.eval(pt1({x, 0.1})), b = dr.eval(pt1({x, 0.1}));
    CHECK(std::abs(a + b) < 1e-12);
  }
}

TEST_CASE("partition of unity: symbolic derivative matches finite difference") {
  std::vector<PUZone> zones = {{"z", cplx(0, 0), 0.3, 0.95, 1}};
  for (auto profile : {BumpProfile::Standard, BumpProfile::Cubic}) {
    PartitionOfUnity pu = buildPartitionOfUnity(zones, {}, profile);
    const ScalarField& r1 = pu.rho(1, "z");
    ScalarField dx = r1.derivative(Var::z(1)) + r1.derivative(Var::zbar(1));
    for (double x : {0.45, 0.6, 0.8}) {
      double h = 1e-6;
      cplx fd =
          (r1.eval(pt1({x + h, 0.2})) - r1.eval(pt1({x - h, 0.2}))) / (2 * h);
      CHECK(std::abs(dx.eval(pt1({x, 0.2})) - fd) < 1e-5);
    }
  }
}

TEST_CASE("two disjoint zones on one chart") {
  std::vector<PUZone> zones = {{"z", cplx(0, 0), 0.2, 0.4, 1},
                               {"z", cplx(3, 0), 0.2, 0.4, 1}};
  PartitionOfUnity pu =
      buildPartitionOfUnity(zones, {}, BumpProfile::Standard);
  const ScalarField& r1 = pu.rho(1, "z");
  CHECK(std::abs(r1.eval(pt1({0.0, 0.0})) - 1.0) < 1e-15);
  CHECK(std::abs(r1.eval(pt1({3.0, 0.1})) - 1.0) < 1e-15);
  CHECK(r1.eval(pt1({1.5, 0.0})) == cplx(0, 0));
  CHECK(pu.rho(0, "z").eval(pt1({0.0, 0.0})) == cplx(0, 0));
  CHECK(pu.rho(0, "z").eval(pt1({3.0, 0.1})) == cplx(0, 0));
}

TEST_CASE("degenerate zone is rejected") {
  std::vector<PUZone> zones = {{"z", cplx(0, 0), 0.9, 0.9, 1}};
  CHECK_THROWS_AS(buildPartitionOfUnity(zones, {}, BumpProfile::Standard),
                  ExcalcError);
}

TEST_CASE("region sampling: deterministic and contained") {
  Region r{{{"z", cplx(1, 0), 0.5, 2.0}, {"w", cplx(0, 0), 0.0, 1.0}}};
  auto a = sampleRegion(r, 40, 0x5EED);
  auto b = sampleRegion(r, 40, 0x5EED);
  REQUIRE(a.size() == 40);
  CHECK(a == b);
  auto c = sampleRegion(r, 40, 0x5EED + 1);
  CHECK(a != c);
  for (auto& [chart, z] : a) CHECK(r.contains(chart, z));
}

TEST_CASE("holomorphy check of transition maps") {
  CHECK_NOTHROW(checkHolomorphic({parseField("z1^-1")}, 1, "t"));
  CHECK_NOTHROW(checkHolomorphic({parseField("z1*z2"), parseField("z2^3")}, 2,
                                 "t"));
  CHECK_THROWS_AS(checkHolomorphic({parseField("conj(z1)")}, 1, "t"),
                  ExcalcError);
  CHECK_THROWS_AS(checkHolomorphic({parseField("re(z1)")}, 1, "t"),
                  ExcalcError);
}

TEST_CASE("honeycomb construction and validation") {
  Covering cov;
  cov.v1 = Region{{{"z", cplx(0, 0), 0.0, 1.0}, {"w", cplx(0, 0), 0.0, 1.0}}};
  // valid: two marks on different charts
  auto h = honeycombFromMarks(cov, {{"z", cplx(0, 0)}, {"w", cplx(0, 0)}},
                              0.25);
  CHECK(h.cells.size() == 2);
  // overlapping cells on one chart are rejected
  CHECK_THROWS_AS(
      honeycombFromMarks(cov, {{"z", cplx(0, 0)}, {"z", cplx(0.3, 0)}}, 0.25),
      ExcalcError);
  // a cell escaping V1 is rejected
  CHECK_THROWS_AS(honeycombFromMarks(cov, {{"z", cplx(0.9, 0)}}, 0.25),
                  ExcalcError);
}
