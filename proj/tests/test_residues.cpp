#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "excalc/residues.hpp"

using namespace excalc;
using cplx = std::complex<double>;

namespace {

const double PI = std::numbers::pi;

BundleData tangentP1() {
  // TP^1: w = 1/z, d/dz = -w^2 d/dw
  BundleData b;
  b.rank = 1;
  b.n = 1;
  b.charts = {"z", "w"};
  BundleTransition wz{"w", "z", {parseField("z1^-1")}, FieldMatrix(1, 1),
                      Region{{{"w", cplx(0, 0), 0.5, 1.0}}}};
  wz.g.at(0, 0) = parseField("(0-1)*z1^-2");
  BundleTransition zw{"z", "w", {parseField("z1^-1")}, FieldMatrix(1, 1),
                      Region{{{"z", cplx(0, 0), 1.0, 2.0}}}};
  zw.g.at(0, 0) = parseField("(0-1)*z1^-2");
  b.transitions = {wz, zw};
  return b;
}

BundleData lineBundle(int d) {
  BundleData b;
  b.rank = 1;
  b.n = 1;
  b.charts = {"z", "w"};
  BundleTransition wz{"w", "z", {parseField("z1^-1")}, FieldMatrix(1, 1),
                      Region{{{"w", cplx(0, 0), 0.5, 1.0}}}};
  wz.g.at(0, 0) = ScalarField::coord(1).pow(-d);
  BundleTransition zw{"z", "w", {parseField("z1^-1")}, FieldMatrix(1, 1),
                      Region{{{"z", cplx(0, 0), 1.0, 2.0}}}};
  zw.g.at(0, 0) = ScalarField::coord(1).pow(-d);
  b.transitions = {wz, zw};
  return b;
}

// P^1 as two unit polar disks glued along the equator; incidence pairs the
// outer arc of each z-sector with the matching w-sector arc through 1/z.
Triangulation p1Triangulation(int sectors) {
  Triangulation t;
  t.top = diskChain("z", cplx(0, 0), 1.0, sectors);
  Chain wdisk = diskChain("w", cplx(0, 0), 1.0, sectors);
  for (auto& s : wdisk.simplices) t.top.append(s);
  for (int j = 0; j < sectors; ++j) {
    IncidenceEntry e;
    e.simplexA = 2 * j;  // z-sector outer triangle, arc is face 0
    e.faceA = 0;
    e.simplexB = 2 * sectors + 2 * ((sectors - 1 - j) % sectors);
    e.faceB = 0;
    e.transitionBtoA = {parseField("z1^-1")};
    t.incidence.push_back(std::move(e));
  }
  return t;
}

ResidueTheoremInput p1Input(const BundleData& b, const SectionTuple& s,
                            const std::map<std::string, Region>& v0,
                            const std::vector<std::string>& cellCharts) {
  ResidueTheoremInput in;
  in.bundle = b;
  in.sections = s;
  in.v0 = v0;
  in.c1.rank = 1;
  in.c1.theta.emplace("z", FormMatrix::zeroConnection(1, 1, "z"));
  in.c1.theta.emplace("w", FormMatrix::zeroConnection(1, 1, "w"));
  std::vector<PUZone> zones;
  std::map<std::string, int> defaults = {{"z", 0}, {"w", 0}};
  for (auto& ch : cellCharts) {
    zones.push_back({ch, cplx(0, 0), 0.3, 0.95, 1});
    defaults.erase(ch);
    in.honeycomb.cells.push_back({ch, cplx(0, 0), 0.5});
  }
  in.pu = buildPartitionOfUnity(zones, defaults, BumpProfile::Standard);
  in.tri = p1Triangulation(8);
  in.q = 1;
  return in;
}

}  // namespace

TEST_CASE("Bochner-Martinelli kernel, m = 1") {
  Form b1 = bochnerMartinelliKernel(1);
  // beta_1 = (-1/2pi i) dz/z
  for (cplx z : {cplx(0.7, 0.2), cplx(-1.1, 0.4), cplx(0.0, 2.0)}) {
    EvalPoint p;
    p.z = {z};
    Tangent t = Tangent::real({cplx(1.0, 0.3)});
    cplx expect = cplx(1, 0) / z * cplx(1.0, 0.3) * cplx(0, 1) / (2 * PI);
    CHECK(std::abs(b1.eval(p, {t}) - expect) < 1e-12);
  }
  // pole at the origin
  EvalPoint p0;
  p0.z = {cplx(0, 0)};
  CHECK_THROWS(b1.eval(p0, {Tangent::real({cplx(1, 0)})}));
  CHECK_THROWS_AS(bochnerMartinelliKernel(0), ExcalcError);
}

TEST_CASE("Bochner-Martinelli kernel is closed off the origin") {
  for (int m : {1, 2}) {
    Form db = bochnerMartinelliKernel(m).d();
    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 20; ++i) {
      EvalPoint p;
      for (int j = 0; j < m; ++j) p.z.push_back({u(rng), u(rng)});
      if (std::abs(p.z[0]) < 0.2) p.z[0] += 1.0;
      CHECK(formCoeffNorm(db, p) < 1e-9);
    }
  }
}

TEST_CASE("bmIndex winding numbers, m = 1") {
  for (double r : {0.5, 1.0, 2.0}) {
    Chain circle = linkOfPoint("", cplx(0, 0), r, 16);
    for (long k : {1L, 2L, 3L})
      CHECK(bmIndex({ScalarField::coord(1).pow(k)}, circle, 1e-9) == k);
    CHECK(bmIndex({parseField("1")}, circle, 1e-9) == 0);
  }
  // multiplicativity: zeros at 0 and 0.5, both inside the unit circle
  Chain unit = linkOfPoint("", cplx(0, 0), 1.0, 16);
  CHECK(bmIndex({parseField("z1*(z1-1/2)")}, unit, 1e-9) == 2);
  CHECK(bmIndex({parseField("z1-1/2")}, unit, 1e-9) == 1);
}

TEST_CASE("bmIndex of the identity on S^3, m = 2") {
  Chain s3 = sphereChain(2, 1.0, 2);
  long idx = bmIndex({ScalarField::coord(1), ScalarField::coord(2)}, s3, 1e-4);
  CHECK(idx == 1);
}

TEST_CASE("Camacho-Sad residues") {
  Chain link = linkOfPoint("y", cplx(0, 0), 1.0, 16);
  // a = 3, b = 2y -> 3/2
  FoliationGerm lin{parseField("3"), parseField("2*z2")};
  CHECK(std::abs(camachoSadResidue(lin, link, 1e-10) - cplx(1.5, 0)) < 1e-8);
  // radius invariance
  Chain small = linkOfPoint("y", cplx(0, 0), 0.25, 16);
  CHECK(std::abs(camachoSadResidue(lin, small, 1e-10) - cplx(1.5, 0)) < 1e-8);
  // a = 1, b = y(1+y), link radius 1/2 -> 1
  Chain half = linkOfPoint("y", cplx(0, 0), 0.5, 16);
  FoliationGerm two{parseField("1"), parseField("z2*(1+z2)")};
  CHECK(std::abs(camachoSadResidue(two, half, 1e-10) - cplx(1, 0)) < 1e-8);
  // holomorphic a/b -> 0
  FoliationGerm hol{parseField("z2^2+1"), parseField("1")};
  CHECK(std::abs(camachoSadResidue(hol, link, 1e-10)) < 1e-8);
  // b(0,y) structurally zero is rejected
  FoliationGerm bad{parseField("1"), parseField("z1*z2")};
  CHECK_THROWS_AS(camachoSadResidue(bad, link, 1e-10), ExcalcError);
}

TEST_CASE("residue theorem on TP^1 with s = z d/dz") {
  SectionTuple s;
  s.rank = 1;
  s.comps["z"] = {{parseField("z1")}};
  s.comps["w"] = {{parseField("0-z1")}};
  std::map<std::string, Region> v0 = {
      {"z", Region{{{"z", cplx(0, 0), 0.25, 4.0}}}},
      {"w", Region{{{"w", cplx(0, 0), 0.25, 4.0}}}}};
  ResidueTheoremInput in = p1Input(tangentP1(), s, v0, {"z", "w"});
  ResidueReport rep = residueTheoremCheck(in, 1e-6);
  REQUIRE(rep.locals.size() == 2);
  for (auto& l : rep.locals) {
    CHECK(std::abs(l.value - cplx(1, 0)) < 1e-3);
    CHECK(l.points.size() == 1);
  }
  CHECK(std::abs(rep.global - cplx(2, 0)) < 1e-6);
  CHECK(rep.discrepancy < 1e-6);
  CHECK(rep.pass);
}

TEST_CASE("residue theorem on O(3) and O(0)") {
  {
    SectionTuple s;
    s.rank = 1;
    s.comps["z"] = {{parseField("z1^3")}};
    s.comps["w"] = {{parseField("1")}};
    std::map<std::string, Region> v0 = {
        {"z", Region{{{"z", cplx(0, 0), 0.25, 4.0}}}},
        {"w", Region{{{"w", cplx(0, 0), 0.0, 4.0}}}}};
    ResidueTheoremInput in = p1Input(lineBundle(3), s, v0, {"z"});
    ResidueReport rep = residueTheoremCheck(in, 1e-6);
    REQUIRE(rep.locals.size() == 1);
    CHECK(std::abs(rep.locals[0].value - cplx(3, 0)) < 1e-3);
    CHECK(std::abs(rep.global - cplx(3, 0)) < 1e-6);
    CHECK(rep.pass);
  }
  {
    SectionTuple s;
    s.rank = 1;
    s.comps["z"] = {{parseField("1")}};
    s.comps["w"] = {{parseField("1")}};
    std::map<std::string, Region> v0 = {
        {"z", Region{{{"z", cplx(0, 0), 0.0, 4.0}}}},
        {"w", Region{{{"w", cplx(0, 0), 0.0, 4.0}}}}};
    ResidueTheoremInput in = p1Input(lineBundle(0), s, v0, {});
    ResidueReport rep = residueTheoremCheck(in, 1e-6);
    CHECK(rep.locals.empty());
    CHECK(std::abs(rep.global) < 1e-6);
    CHECK(rep.pass);
  }
}
