#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "excalc/series.hpp"

using namespace excalc;

namespace {

std::vector<TruncatedSeries> paperMap(int N) {
  return {seriesOfField(parseField("z1^5"), N),
          seriesOfField(parseField("z1^6+z1^7"), N)};
}

TruncatedSeries paperH(int N) {
  // (6/11) z^11 + (7/12) z^12
  TruncatedSeries h = TruncatedSeries::zero(N);
  h.set(11, CRat(BigRat(6, 11)));
  h.set(12, CRat(BigRat(7, 12)));
  return h;
}

}  // namespace

TEST_CASE("pullbackSeries on the paper's map") {
  auto f = paperMap(13);
  TruncatedSeries u = pullbackSeries(1, 0, f, 13);
  CHECK(u.c == std::map<long, CRat>{{5, CRat(1)}});
  TruncatedSeries v = pullbackSeries(0, 1, f, 13);
  CHECK(v.c == (std::map<long, CRat>{{6, CRat(1)}, {7, CRat(1)}}));
  TruncatedSeries uv = pullbackSeries(1, 1, f, 13);
  CHECK(uv.c == (std::map<long, CRat>{{11, CRat(1)}, {12, CRat(1)}}));
  // truncation drops the z^13 of v^2 = z^12 + 2 z^13 + z^14 at N = 12
  TruncatedSeries v2 = pullbackSeries(0, 2, f, 12);
  CHECK(v2.c == std::map<long, CRat>{{12, CRat(1)}});
  CHECK_THROWS_AS(pullbackSeries(-1, 0, f, 13), ExcalcError);
}

TEST_CASE("primitive1D") {
  Form a(1, 1, "");
  a.addTerm(parseField("6*z1^10+7*z1^11"), {{Covector::DZ, 1}});
  TruncatedSeries h = primitive1D(a);
  CHECK(h.N == 12);
  CHECK(h.sameAs(paperH(12)));

  CHECK(primitive1D(Form(1, 1, "")).isZero());

  Form log1(1, 1, "");
  log1.addTerm(parseField("z1^-1"), {{Covector::DZ, 1}});
  CHECK_THROWS_AS(primitive1D(log1), ExcalcError);

  // z^-2 is allowed Laurent data but has a polynomial-only precondition
  Form neg(1, 1, "");
  neg.addTerm(parseField("z1^-2"), {{Covector::DZ, 1}});
  CHECK_THROWS_AS(primitive1D(neg), ExcalcError);

  Form anti(1, 1, "");
  anti.addTerm(parseField("conj(z1)"), {{Covector::DZBAR, 1}});
  CHECK_THROWS_AS(primitive1D(anti), ExcalcError);
}

TEST_CASE("subalgebraMembership basics") {
  auto f = paperMap(20);
  {
    TruncatedSeries h = TruncatedSeries::zero(20);
    h.set(5, CRat(1));
    MembershipResult r = subalgebraMembership(h, f, 20);
    REQUIRE(r.feasible);
    REQUIRE(r.certificate.size() == 1);
    CHECK(r.certificate[0].a == 1);
    CHECK(r.certificate[0].b == 0);
    CHECK(r.certificate[0].coeff == CRat(1));
    CHECK(r.residual.isZero());
  }
  {
    TruncatedSeries h = TruncatedSeries::zero(20);
    h.set(6, CRat(1));
    h.set(7, CRat(1));
    MembershipResult r = subalgebraMembership(h, f, 20);
    REQUIRE(r.feasible);
    REQUIRE(r.certificate.size() == 1);
    CHECK(r.certificate[0].a == 0);
    CHECK(r.certificate[0].b == 1);
    CHECK(r.certificate[0].coeff == CRat(1));
    CHECK(r.residual.isZero());
  }
  // constants are absorbed: h = 3 + u is still u up to the offset
  {
    TruncatedSeries h = TruncatedSeries::zero(20);
    h.set(0, CRat(3));
    h.set(5, CRat(1));
    MembershipResult r = subalgebraMembership(h, f, 20);
    CHECK(r.feasible);
    CHECK(r.residual.isZero());
  }
  // a generator with a constant term is rejected
  TruncatedSeries unit = TruncatedSeries::zero(20);
  unit.set(0, CRat(1));
  CHECK_THROWS_AS(subalgebraMembership(paperH(20), {unit, unit}, 20),
                  ExcalcError);
}

TEST_CASE("N-sweep pins the obstruction degree at 13") {
  long nStar = -1;
  for (int N = 11; N <= 20; ++N) {
    MembershipResult r = subalgebraMembership(paperH(N), paperMap(N), N);
    if (N <= 12) {
      CHECK(r.feasible);
      CHECK(r.residual.isZero());
    } else {
      CHECK_FALSE(r.feasible);
      CHECK(r.obstructionDegree == 13);
      if (nStar < 0) nStar = N;
    }
  }
  CHECK(nStar == 13);
}

TEST_CASE("bloomHerreraCertificate") {
  ObstructionReport rep = bloomHerreraCertificate(20);
  CHECK(rep.obstruction);
  CHECK(rep.membership.obstructionDegree == 13);
  CHECK(rep.h.sameAs(paperH(20)));

  // exact ambient form: omega = dz2, h = z^6 + z^7 = v, no obstruction
  Form dz2 = Form::term(2, ScalarField(1L), {2}, {});
  ObstructionReport ex =
      bloomHerreraPipeline(dz2, {parseField("z1^5"), parseField("z1^6+z1^7")},
                           20);
  CHECK_FALSE(ex.obstruction);
  CHECK(ex.membership.residual.isZero());

  // smooth embedding z -> (z, 0): every polynomial pulls back feasibly
  Form w(2, 1, "");
  w.addTerm(parseField("3*z1^2+1"), {{Covector::DZ, 1}});
  ObstructionReport sm =
      bloomHerreraPipeline(w, {parseField("z1"), parseField("0")}, 20);
  CHECK_FALSE(sm.obstruction);
  CHECK(sm.membership.residual.isZero());
}
