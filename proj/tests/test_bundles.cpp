#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "excalc/bundle.hpp"

using namespace excalc;
using cplx = std::complex<double>;

namespace {

EvalPoint pt1(cplx z) {
  EvalPoint p;
  p.z = {z};
  return p;
}

// O(d)-style line bundle on two charts z, w with w = 1/z; the transition
// from w to z is g = w^{-d} (so the section (z^d, 1) is compatible).
BundleData lineBundle(int d) {
  BundleData b;
  b.rank = 1;
  b.n = 1;
  b.charts = {"z", "w"};
  BundleTransition wz;
  wz.from = "w";
  wz.to = "z";
  wz.coordMap = {parseField("z1^-1")};
  wz.g = FieldMatrix(1, 1);
  wz.g.at(0, 0) = ScalarField::coord(1).pow(-d);
  // overlaps chosen away from |z| < 1 so that partition-of-unity transition
  // bands (always inside |z| < 1 in these tests) do not intersect them
  wz.overlap = Region{{{"w", cplx(0, 0), 0.5, 1.0}}};
  BundleTransition zw;
  zw.from = "z";
  zw.to = "w";
  zw.coordMap = {parseField("z1^-1")};
  zw.g = FieldMatrix(1, 1);
  zw.g.at(0, 0) = ScalarField::coord(1).pow(-d);
  zw.overlap = Region{{{"z", cplx(0, 0), 1.0, 2.0}}};
  b.transitions = {wz, zw};
  return b;
}

}  // namespace

TEST_CASE("field matrix algebra") {
  FieldMatrix g(2, 2);
  g.at(0, 0) = parseField("z1");
  g.at(0, 1) = parseField("1");
  g.at(1, 0) = parseField("0");
  g.at(1, 1) = parseField("z1^2");
  CHECK(g.det().sameAs(parseField("z1^3")));
  FieldMatrix gi = g.inverse();
  FieldMatrix prod = g.mul(gi);
  EvalPoint p = pt1({1.3, 0.4});
  auto v = prod.eval(p);
  CHECK(std::abs(v[0][0] - 1.0) < 1e-12);
  CHECK(std::abs(v[0][1]) < 1e-12);
  CHECK(std::abs(v[1][0]) < 1e-12);
  CHECK(std::abs(v[1][1] - 1.0) < 1e-12);
}

TEST_CASE("curvature basics") {
  // theta = 0 -> K = 0
  ConnectionData c;
  c.rank = 1;
  c.theta.emplace("z", FormMatrix::zeroConnection(1, 1, "z"));
  CurvatureMatrix K = curvature(c);
  CHECK(K.K.at("z").at(0, 0).isZero());
  // rank 1, theta = f dz with f holomorphic -> K = 0 structurally
  ConnectionData ch;
  ch.rank = 1;
  FormMatrix th(1, 1, 1, 1, "z");
  th.at(0, 0) = parseForm("z1^3 * dz1", 1, "z");
  ch.theta.emplace("z", th);
  CHECK(curvature(ch).K.at("z").at(0, 0).isZero());
  // theta = zbar dz -> K = dzbar ^ dz
  FormMatrix th2(1, 1, 1, 1, "z");
  th2.at(0, 0) = parseForm("conj(z1) * dz1", 1, "z");
  ConnectionData c2;
  c2.rank = 1;
  c2.theta.emplace("z", th2);
  Form K2 = curvature(c2).K.at("z").at(0, 0);
  Form expect = parseForm("dzbar1^dz1", 1, "z");
  CHECK((K2 - expect).isZero());
}

TEST_CASE("Bianchi identity at sample points (rank 2)") {
  FormMatrix th(2, 2, 1, 1, "z");
  th.at(0, 0) = parseForm("conj(z1) * dz1", 1, "z");
  th.at(0, 1) = parseForm("z1*conj(z1) * dzbar1", 1, "z");
  th.at(1, 0) = parseForm("z1^2 * dz1 + conj(z1)^2 * dzbar1", 1, "z");
  th.at(1, 1) = parseForm("(1+z1*conj(z1)) * dz1", 1, "z");
  ConnectionData c;
  c.rank = 2;
  c.theta.emplace("z", th);
  FormMatrix K = curvature(c).K.at("z");
  FormMatrix bianchi = K.d() - K.wedgeMul(th) + th.wedgeMul(K);
  for (cplx z : {cplx(0.3, 0.2), cplx(-1.1, 0.7), cplx(0.9, -0.4)})
    CHECK(formMatrixNorm(bianchi, pt1(z)) < 1e-8);
}

TEST_CASE("gauge covariance of curvature") {
  FormMatrix th(2, 2, 1, 1, "z");
  th.at(0, 1) = parseForm("conj(z1) * dz1", 1, "z");
  th.at(1, 0) = parseForm("z1 * dzbar1", 1, "z");
  ConnectionData c;
  c.rank = 2;
  c.theta.emplace("z", th);
  FieldMatrix g(2, 2);
  g.at(0, 0) = parseField("1");
  g.at(0, 1) = parseField("z1");
  g.at(1, 0) = parseField("0");
  g.at(1, 1) = parseField("1+z1^2");
  FieldMatrix gi = g.inverse();
  // theta' = g^{-1} theta g + g^{-1} dg
  FormMatrix thP =
      th.leftMul(gi).rightMul(g) + dOf(g, 1, "z").leftMul(gi);
  ConnectionData cp;
  cp.rank = 2;
  cp.theta.emplace("z", thP);
  FormMatrix K = curvature(c).K.at("z");
  FormMatrix KP = curvature(cp).K.at("z");
  FormMatrix res = KP - K.leftMul(gi).rightMul(g);
  for (cplx z : {cplx(0.4, 0.1), cplx(-0.8, 0.9), cplx(1.2, -0.5)})
    CHECK(formMatrixNorm(res, pt1(z)) < 1e-8);
}

TEST_CASE("frame-trivial connection annihilates its frame") {
  BundleData b = lineBundle(0);
  SectionTuple frame;
  frame.rank = 1;
  frame.comps["z"] = {{parseField("z1")}};
  std::map<std::string, Region> reg = {
      {"z", Region{{{"z", cplx(0, 0), 0.5, 2.0}}}}};
  ConnectionData c = trivialConnection(b, frame, reg);
  // nabla(z e) = d(z) + theta * z must vanish
  Form resid = Form::scalar(1, parseField("z1"), "z").d() +
               c.on("z").at(0, 0).scaled(parseField("z1"));
  CHECK(resid.isZero());
  // and theta = -dz/z
  Form expect = parseForm("(0-1)*z1^-1 * dz1", 1, "z");
  CHECK((c.on("z").at(0, 0) - expect).isZero());
}

TEST_CASE("frame singular in the region is rejected") {
  BundleData b = lineBundle(0);
  SectionTuple frame;
  frame.rank = 1;
  frame.comps["z"] = {{parseField("z1")}};
  std::map<std::string, Region> reg = {
      {"z", Region{{{"z", cplx(0, 0), 0.0, 1.0}}}}};
  CHECK_THROWS_AS(trivialConnection(b, frame, reg), ExcalcError);
}

TEST_CASE("line bundle data validates and glues") {
  for (int d : {0, 1, 3}) {
    BundleData b = lineBundle(d);
    CHECK_NOTHROW(checkBundle(b));
    SectionTuple s;
    s.rank = 1;
    s.comps["z"] = {{ScalarField::coord(1).pow(d)}};
    s.comps["w"] = {{parseField("1")}};
    CHECK_NOTHROW(checkSections(b, s));
    // s-trivial connection away from z = 0: theta_z = -d dz/z, theta_w = 0
    std::map<std::string, Region> reg = {
        {"z", Region{{{"z", cplx(0, 0), 0.25, 4.0}}}},
        {"w", Region{{{"w", cplx(0, 0), 0.0, 4.0}}}}};
    ConnectionData c0 = trivialConnection(b, s, reg);
    CHECK(c0.on("w").at(0, 0).isZero());
    CHECK_NOTHROW(checkConnection(b, c0));
    CHECK_NOTHROW(checkCurvatureTransform(b, curvature(c0)));
    // glue with the zero connection on the w chart
    ConnectionData c1;
    c1.rank = 1;
    c1.theta.emplace("w", FormMatrix::zeroConnection(1, 1, "w"));
    c1.theta.emplace("z", FormMatrix::zeroConnection(1, 1, "z"));
    std::vector<PUZone> zones = {{"z", cplx(0, 0), 0.3, 0.95, 1}};
    // rho1 = 1 near z = 0 (where c0 is singular), rho0 = 1 far away
    std::map<std::string, int> defaults = {{"w", 0}};
    PartitionOfUnity pu =
        buildPartitionOfUnity(zones, defaults, BumpProfile::Standard);
    ConnectionData glued = glueConnections(pu, c0, c1);
    CHECK_NOTHROW(checkConnection(b, glued, 20, 0x5EED, 1e-7));
    // far from the zone, glued = c0
    Form diff = glued.on("z").at(0, 0) - c0.on("z").at(0, 0);
    CHECK(formCoeffNorm(diff, pt1({2.0, 0.5})) < 1e-13);
  }
}

TEST_CASE("gluing identical connections is the identity") {
  ConnectionData c;
  c.rank = 1;
  FormMatrix th(1, 1, 1, 1, "z");
  th.at(0, 0) = parseForm("conj(z1) * dz1", 1, "z");
  c.theta.emplace("z", th);
  std::vector<PUZone> zones = {{"z", cplx(0, 0), 0.3, 0.95, 1}};
  PartitionOfUnity pu =
      buildPartitionOfUnity(zones, {}, BumpProfile::Standard);
  ConnectionData g = glueConnections(pu, c, c);
  Form diff = g.on("z").at(0, 0) - th.at(0, 0);
  for (cplx z : {cplx(0.1, 0.0), cplx(0.6, 0.2), cplx(2.0, -1.0)})
    CHECK(formCoeffNorm(diff, pt1(z)) < 1e-12);
}

TEST_CASE("singular locus of sections") {
  std::map<std::string, Region> reg = {
      {"z", Region{{{"z", cplx(0.5, 0), 0.0, 2.0}}}}};
  SectionTuple s;
  s.rank = 1;
  s.comps["z"] = {{parseField("z1*(z1-1)")}};
  auto pts = singularLocus(s, reg);
  REQUIRE(pts.size() == 2);
  std::sort(pts.begin(), pts.end(),
            [](auto& a, auto& b) { return a.z.real() < b.z.real(); });
  CHECK(std::abs(pts[0].z - cplx(0, 0)) < 1e-10);
  CHECK(std::abs(pts[1].z - cplx(1, 0)) < 1e-10);
  CHECK(pts[0].residual < 1e-10);
  // nonvanishing section: empty locus
  SectionTuple sn;
  sn.rank = 1;
  sn.comps["z"] = {{parseField("1+z1*0")}};
  CHECK(singularLocus(sn, reg).empty());
  // rank 2, one section vanishing only at 0
  SectionTuple s2;
  s2.rank = 2;
  s2.comps["z"] = {{parseField("z1"), parseField("z1^2")}};
  auto p2 = singularLocus(s2, reg);
  REQUIRE(p2.size() == 1);
  CHECK(std::abs(p2[0].z) < 1e-10);
}
