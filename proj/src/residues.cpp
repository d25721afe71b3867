#include "excalc/residues.hpp"

#include <cmath>
#include <numbers>

#include "excalc/clip.hpp"

namespace excalc {

namespace {

using cplx = std::complex<double>;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Form bochnerMartinelliKernel(int m) {
  if (m < 1) throw ExcalcError("bochnerMartinelliKernel: m must be >= 1");
  // |z|^2 = sum z_h conj(z_h)
  ScalarField norm2(0L);
  for (int h = 1; h <= m; ++h)
    norm2 = norm2 + ScalarField::coord(h) * ScalarField::coordBar(h);
  cplx twoPiI(0.0, 2.0 * std::numbers::pi);
  cplx scale = factorial(m - 1) / std::pow(twoPiI, m);
  if ((m * (m - 1) / 2) % 2) scale = -scale;
  ScalarField pref =
      ScalarField::constant(CNum::approx(scale)) * norm2.pow(-m);

  Form out(m, 2 * m - 1, "");
  for (int h = 1; h <= m; ++h) {
    // conj(Theta_h) ^ Theta with Theta_h = (-1)^h z_h dz_{1..m, skip h}
    std::vector<Covector> basis;
    for (int j = 1; j <= m; ++j)
      if (j != h) basis.push_back({Covector::DZBAR, j});
    for (int j = 1; j <= m; ++j) basis.push_back({Covector::DZ, j});
    ScalarField c = pref * ScalarField::coordBar(h);
    if (h % 2) c = c * ScalarField(-1L);
    out.addTerm(c, basis);
  }
  return out;
}

long bmIndex(const std::vector<ScalarField>& f, const Chain& sphere,
             double tol, QuadStats* st) {
  int m = (int)f.size();
  if (sphere.dim() != 2 * m - 1)
    throw ExcalcError("bmIndex: chain dimension must be 2m-1");
  std::string chart = sphere.simplices.empty() ? std::string()
                                               : sphere.simplices[0].chart;
  int srcN = sphere.simplices.empty() ? m
                                      : (int)sphere.simplices[0].comp.size();
  Form pulled = bochnerMartinelliKernel(m).pullback(f, srcN, chart);
  cplx integral = integrateOverChain(pulled, sphere, tol, st);
  double idx = -integral.real();
  long nearest = std::lround(idx);
  double resid = std::abs(cplx(-integral.real(), -integral.imag()) -
                          cplx((double)nearest, 0.0));
  if (resid > 1e-3)
    throw ExcalcError("bmIndex: integral " + std::to_string(idx) +
                      " is not within 1e-3 of an integer");
  return nearest;
}

cplx camachoSadResidue(const FoliationGerm& g, const Chain& link, double tol,
                       QuadStats* st) {
  checkHolomorphic({g.a, g.b}, 2, "foliation germ");
  // restrict to the divisor h = 0; the link runs in the y coordinate
  std::vector<ScalarField> ontoDivisor = {ScalarField(0L),
                                          ScalarField::coord(1)};
  ScalarField a0 = g.a.substCoords(ontoDivisor);
  ScalarField b0 = g.b.substCoords(ontoDivisor);
  if (b0.isZero())
    throw ExcalcError("camachoSadResidue: b(0,y) is structurally zero");
  Form w(1, 1, link.simplices.empty() ? "" : link.simplices[0].chart);
  w.addTerm(a0 * b0.pow(-1), {{Covector::DZ, 1}});
  cplx integral = integrateOverChain(w, link, tol, st);
  return integral / cplx(0.0, 2.0 * std::numbers::pi);
}

ResidueReport residueTheoremCheck(const ResidueTheoremInput& in, double tol) {
  ResidueReport rep;
  CechCochain coc =
      localizedChernCocycle(in.bundle, in.sections, in.v0, in.c1, in.q);

  // local residues, one honeycomb cell per singular point
  for (auto& cell : in.honeycomb.cells) {
    ResidueLocal loc;
    loc.chart = cell.chart;
    loc.center = cell.center;
    std::map<std::string, Region> cellReg = {
        {cell.chart, Region{{{cell.chart, cell.center, 0.0, cell.r}}}}};
    loc.points = singularLocus(in.sections, cellReg);
    for (auto& p : loc.points)
      if (std::abs(p.z - cell.center) > 0.9 * cell.r)
        throw ExcalcError(
            "residueTheoremCheck: singular point within 0.1 r of the "
            "honeycomb interface");
    cplx v = 0.0;
    for (auto& s : in.tri.top.simplices) {
      if (s.chart != cell.chart) continue;
      ClipResult cr = clipSimplexAgainstDisk(s, cell.center, cell.r);
      v += integrateOverChain(coc.part(coc.w1, s.chart), cr.inside, tol,
                              &rep.stats);
      v -= integrateOverChain(coc.part(coc.w01, s.chart), cr.interface, tol,
                              &rep.stats);
    }
    loc.value = v;
    loc.integerResidual = std::abs(v - cplx(std::round(v.real()), 0.0));
    rep.locals.push_back(std::move(loc));
  }

  // global integral of the glued Chern form over the fundamental class
  ConnectionData c0 =
      trivialConnection(in.bundle, in.sections, in.v0);
  ConnectionData glued = glueConnections(in.pu, c0, in.c1);
  ChernForm cq = chernForm(glued, in.q);
  rep.global = integrateFundamentalClass(cq.comp, in.tri, tol, &rep.stats);

  cplx sum = 0.0;
  for (auto& l : rep.locals) sum += l.value;
  rep.discrepancy = std::abs(rep.global - sum);
  rep.pass = rep.discrepancy < tol;
  return rep;
}

}  // namespace excalc
