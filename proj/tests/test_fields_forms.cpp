#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "excalc/form.hpp"

using namespace excalc;
using cplx = std::complex<double>;

namespace {

EvalPoint pt(std::initializer_list<cplx> zs, double sigma = 0.0) {
  EvalPoint p;
  p.z = zs;
  p.sigma = sigma;
  return p;
}

// Deterministic random polynomial in z1..zn, zbar1..zbarn with small
// integer coefficients.
ScalarField randomPoly(std::mt19937_64& rng, int n, int terms = 4,
                       int maxDeg = 3) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, maxDeg);
  ScalarField f(0L);
  for (int t = 0; t < terms; ++t) {
    ScalarField mono(
        ScalarField::constant(CNum(CRat(coef(rng), coef(rng)))));
    for (int i = 1; i <= n; ++i) {
      int d1 = deg(rng), d2 = deg(rng);
      if (d1) mono = mono * ScalarField::coord(i).pow(d1);
      if (d2) mono = mono * ScalarField::coordBar(i).pow(d2);
    }
    f = f + mono;
  }
  return f;
}

cplx randomPoint(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng) + 1.5, u(rng) + 0.5};  // keep away from 0
}

// central finite difference of f along x or y at z
cplx fdiff(const ScalarField& f, std::vector<cplx> z, int idx, bool imagDir,
           double h = 1e-5) {
  auto shift = [&](double s) {
    auto zz = z;
    zz[idx - 1] += imagDir ? cplx(0, s) : cplx(s, 0);
    EvalPoint p;
    p.z = zz;
    return f.eval(p);
  };
  return (shift(h) - shift(-h)) / (2 * h);
}

}  // namespace

TEST_CASE("exact rational constants and parser") {
  ScalarField f = parseField("3/4 + 2*i");
  CHECK(f.eval(pt({})) == cplx(0.75, 2.0));
  CHECK(parseField("1/2*z1^2").eval(pt({{2, 0}})) == cplx(2, 0));
  CHECK(parseField("conj(z1)").eval(pt({{1, 2}})) == cplx(1, -2));
  CHECK(parseField("re(z1)").eval(pt({{3, 4}})) == cplx(3, 0));
  CHECK(parseField("im(z1)").eval(pt({{3, 4}})) == cplx(4, 0));
  CHECK(parseField("0.25*z1").eval(pt({{4, 0}})) == cplx(1, 0));
  CHECK(std::abs(parseField("exp(z1)").eval(pt({{0, 3.14159265358979}})) -
                 cplx(-1, 0)) < 1e-9);
  CHECK(parseField("z1^-2").eval(pt({{2, 0}})) == cplx(0.25, 0));
  CHECK_THROWS_AS(parseField("frob(z1)"), ExcalcError);
}

TEST_CASE("conjugation is a structural involution") {
  std::mt19937_64 rng(0x5EED);
  for (int i = 0; i < 20; ++i) {
    ScalarField f = randomPoly(rng, 2);
    CHECK(f.conj().conj().sameAs(f));
  }
  ScalarField g = parseField("exp(z1*conj(z2)) + bump(re(z1))");
  CHECK(g.conj().conj().sameAs(g));
}

TEST_CASE("Wirtinger derivatives: holomorphic fields have dbar = 0") {
  ScalarField f = parseField("z1^3 + 2*z1*z2 + i*z2^5");
  CHECK(f.derivative(Var::zbar(1)).isZero());
  CHECK(f.derivative(Var::zbar(2)).isZero());
  ScalarField df = f.derivative(Var::z(1));
  CHECK(df.sameAs(parseField("3*z1^2 + 2*z2")));
}

TEST_CASE("derivatives match central finite differences") {
  // d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2
  std::mt19937_64 rng(0x5EED ^ 1);
  std::vector<ScalarField> fields = {
      randomPoly(rng, 2),
      parseField("exp(z1*z2)"),
      parseField("z1/(1+z2*conj(z2))"),
      parseField("bump((z1*conj(z1))/4 - 1/2)"),
      parseField("re(z1^2)*im(z2)"),
  };
  for (auto& f : fields) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<cplx> z = {randomPoint(rng), randomPoint(rng)};
      for (int i = 1; i <= 2; ++i) {
        cplx fx = fdiff(f, z, i, false), fy = fdiff(f, z, i, true);
        cplx dz = 0.5 * (fx - cplx(0, 1) * fy);
        cplx dzb = 0.5 * (fx + cplx(0, 1) * fy);
        EvalPoint p;
        p.z = z;
        cplx sdz = f.derivative(Var::z(i)).eval(p);
        cplx sdzb = f.derivative(Var::zbar(i)).eval(p);
        double scale = std::max({1.0, std::abs(dz), std::abs(dzb)});
        CHECK(std::abs(sdz - dz) / scale < 1e-5);
        CHECK(std::abs(sdzb - dzb) / scale < 1e-5);
      }
    }
  }
}

TEST_CASE("bump primitive: support and derivative closure") {
  ScalarField b = parseField("bump(re(z1))");
  CHECK(b.eval(pt({{2, 0}})) == cplx(0, 0));
  CHECK(b.eval(pt({{1, 0}})) == cplx(0, 0));
  CHECK(std::abs(b.eval(pt({{0, 0}})).real() - std::exp(-1.0)) < 1e-15);
  // derivative vanishes outside the support, including via the product rule
  ScalarField db = b.derivative(Var::z(1));
  CHECK(db.eval(pt({{1.5, 0}})) == cplx(0, 0));
}

TEST_CASE("sigma parameter") {
  ScalarField f = parseField("sigma^2 * z1");
  EvalPoint p = pt({{2, 0}}, 0.5);
  CHECK(f.eval(p) == cplx(0.5, 0));
  CHECK(f.derivative(Var::sigma()).eval(p) == cplx(2, 0));
  CHECK(f.substSigma(0.5).eval(pt({{2, 0}})) == cplx(0.5, 0));
}

TEST_CASE("pole handling") {
  ScalarField f = parseField("1/z1");
  CHECK_THROWS_AS(f.eval(pt({{0, 0}})), PoleError);
  // zero factor annihilates a pole from a vanished bump's rational part
  ScalarField g = parseField("bump(re(z1))/(re(z1)-1)");
  CHECK(g.eval(pt({{1.0 + 1e-9, 0}})) == cplx(0, 0));
}

TEST_CASE("wedge: antisymmetry and repeated index") {
  Form dz1 = Form::dz(2, 1), dz2 = Form::dz(2, 2), dzb1 = Form::dzbar(2, 1);
  CHECK(dz1.wedge(dz1).isZero());
  Form a = dz1.wedge(dzb1), b = dzb1.wedge(dz1);
  CHECK((a + b).isZero());
  // graded commutativity at random points
  std::mt19937_64 rng(0x5EED ^ 2);
  for (int rep = 0; rep < 20; ++rep) {
    Form f1 = Form::term(2, randomPoly(rng, 2), {1}, {});
    Form f2 = Form::term(2, randomPoly(rng, 2), {}, {2});
    Form w1 = f1.wedge(f2), w2 = f2.wedge(f1);
    EvalPoint p = pt({randomPoint(rng), randomPoint(rng)});
    std::vector<Tangent> vs = {Tangent::real({randomPoint(rng), randomPoint(rng)}),
                               Tangent::real({randomPoint(rng), randomPoint(rng)})};
    cplx v1 = w1.eval(p, vs), v2 = w2.eval(p, vs);
    CHECK(std::abs(v1 + v2) / std::max(1.0, std::abs(v1)) < 1e-10);
  }
}

TEST_CASE("wedge equals brute-force antisymmetrization") {
  // (z1 dz1) ^ (z2 dz2) at (1,2) on tangent pairs
  Form a = Form::term(2, ScalarField::coord(1), {1}, {});
  Form b = Form::term(2, ScalarField::coord(2), {2}, {});
  Form w = a.wedge(b);
  EvalPoint p = pt({{1, 0}, {2, 0}});
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    Tangent u = Tangent::real({randomPoint(rng), randomPoint(rng)});
    Tangent v = Tangent::real({randomPoint(rng), randomPoint(rng)});
    // antisymmetrized tensor value: a(u) b(v) - a(v) b(u)
    cplx au = a.eval(p, {u}), av = a.eval(p, {v});
    cplx bu = b.eval(p, {u}), bv = b.eval(p, {v});
    CHECK(std::abs(w.eval(p, {u, v}) - (au * bv - av * bu)) < 1e-12);
  }
}

TEST_CASE("exterior derivative basics") {
  // d(z1 dz2) = dz1 ^ dz2
  Form a = Form::term(2, ScalarField::coord(1), {2}, {});
  Form da = a.d();
  Form expect = Form::dz(2, 1).wedge(Form::dz(2, 2));
  CHECK((da - expect).isZero());
  // d(constant) = 0
  CHECK(Form::scalar(2, ScalarField(5L)).d().isZero());
}

TEST_CASE("d of d vanishes for random polynomial forms (structural)") {
  std::mt19937_64 rng(0x5EED ^ 3);
  for (int rep = 0; rep < 50; ++rep) {
    int pick = rep % 3;
    Form w(2, 0);
    if (pick == 0)
      w = Form::scalar(2, randomPoly(rng, 2));
    else if (pick == 1)
      w = Form::term(2, randomPoly(rng, 2), {1}, {}) +
          Form::term(2, randomPoly(rng, 2), {}, {2});
    else
      w = Form::term(2, randomPoly(rng, 2), {1}, {2});
    CHECK(w.d().d().isZero());
  }
}

TEST_CASE("Leibniz rule at random points") {
  std::mt19937_64 rng(0x5EED ^ 4);
  for (int rep = 0; rep < 10; ++rep) {
    Form a = Form::term(2, randomPoly(rng, 2), {1}, {});
    Form b = Form::term(2, randomPoly(rng, 2), {}, {1});
    Form lhs = a.wedge(b).d();
    Form rhs = a.d().wedge(b) - a.wedge(b.d());  // deg a = 1: sign (-1)^1
    EvalPoint p = pt({randomPoint(rng), randomPoint(rng)});
    std::vector<Tangent> vs;
    for (int i = 0; i < 3; ++i)
      vs.push_back(Tangent::real({randomPoint(rng), randomPoint(rng)}));
    CHECK(std::abs(lhs.eval(p, vs) - rhs.eval(p, vs)) < 1e-9);
  }
}

TEST_CASE("pullback: paper example z -> (z^5, z^6+z^7)") {
  Form w = Form::term(2, ScalarField::coord(1), {2}, {});  // z1 dz2
  std::vector<ScalarField> f = {parseField("z1^5"), parseField("z1^6+z1^7")};
  Form pb = w.pullback(f, 1);
  Form expect = Form::term(1, parseField("6*z1^10+7*z1^11"), {1}, {});
  CHECK((pb - expect).isZero());
}

TEST_CASE("pullback: identity and functoriality") {
  std::mt19937_64 rng(0x5EED ^ 5);
  Form w = Form::term(2, randomPoly(rng, 2), {1}, {2});
  std::vector<ScalarField> id = {ScalarField::coord(1), ScalarField::coord(2)};
  CHECK((w.pullback(id, 2) - w).isZero());
  // m1: u -> (u^2, u+1) ; m2: (a,b) -> (a*b, a-b); check (m2.m1)* = m1*.m2*
  std::vector<ScalarField> m1 = {parseField("z1^2"), parseField("z1+1")};
  std::vector<ScalarField> m2 = {parseField("z1*z2"), parseField("z1-z2")};
  std::vector<ScalarField> m21 = {m2[0].substCoords(m1), m2[1].substCoords(m1)};
  Form lhs = w.pullback(m21, 1);
  Form rhs = w.pullback(m2, 2).pullback(m1, 1);
  CHECK((lhs - rhs).isZero());
}

TEST_CASE("pullback commutes with d numerically") {
  std::mt19937_64 rng(0x5EED ^ 6);
  Form w = Form::term(2, parseField("z1*conj(z2)"), {2}, {}) +
           Form::term(2, parseField("conj(z1)^2"), {}, {1});
  std::vector<ScalarField> f = {parseField("z1^2+z2"), parseField("z1*z2")};
  Form lhs = w.d().pullback(f, 2);
  Form rhs = w.pullback(f, 2).d();
  for (int rep = 0; rep < 20; ++rep) {
    EvalPoint p = pt({randomPoint(rng), randomPoint(rng)});
    std::vector<Tangent> vs;
    for (int i = 0; i < 2; ++i)
      vs.push_back(Tangent::real({randomPoint(rng), randomPoint(rng)}));
    CHECK(std::abs(lhs.eval(p, vs) - rhs.eval(p, vs)) < 1e-9);
  }
}

TEST_CASE("evaluation oracles") {
  // degree-0 field z1 z2 at (2,3)
  Form f0 = Form::scalar(2, parseField("z1*z2"));
  CHECK(f0.eval(pt({{2, 0}, {3, 0}}), {}) == cplx(6, 0));
  // dz on d/dz and d/dzbar
  Form dz = Form::dz(1, 1);
  Tangent ddz;  // holomorphic basis vector d/dz
  ddz.dz = {1.0};
  ddz.dzbar = {0.0};
  Tangent ddzb;
  ddzb.dz = {0.0};
  ddzb.dzbar = {1.0};
  CHECK(dz.eval(pt({{0.3, 0.7}}), {ddz}) == cplx(1, 0));
  CHECK(dz.eval(pt({{0.3, 0.7}}), {ddzb}) == cplx(0, 0));
  // dz ^ dzbar on (d/dx, d/dy) = -2i
  Form w = Form::dz(1, 1).wedge(Form::dzbar(1, 1));
  Tangent ddx = Tangent::real({1.0});
  Tangent ddy = Tangent::real({cplx(0, 1)});
  CHECK(std::abs(w.eval(pt({{0.1, 0.2}}), {ddx, ddy}) - cplx(0, -2)) < 1e-15);
}

TEST_CASE("form parser") {
  Form a = parseForm("z1*dz1^dzbar2 - 2*dz2*dzbar2", 2);
  CHECK(a.degree() == 2);
  CHECK(a.terms().size() == 2);
  Form b = parseForm("z1^3 * dz1", 2);
  Form expectB = Form::term(2, parseField("z1^3"), {1}, {});
  CHECK((b - expectB).isZero());
  Form c = parseForm("dzbar1^dz1", 1);
  Form expectC = -Form::dz(1, 1).wedge(Form::dzbar(1, 1));
  CHECK((c - expectC).isZero());
  CHECK(parseForm("z1+z2", 2).degree() == 0);
}

TEST_CASE("normalization idempotence and merging") {
  Form a = Form::term(2, parseField("z1"), {1}, {}) +
           Form::term(2, parseField("z1"), {1}, {});
  CHECK(a.terms().size() == 1);
  Form b = a - a;
  CHECK(b.isZero());
}
