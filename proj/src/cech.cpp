#include "excalc/cech.hpp"

#include <algorithm>

#include "excalc/clip.hpp"

namespace excalc {

const Form& SceneForm::on(const std::string& chart) const {
  auto it = comp.find(chart);
  if (it == comp.end())
    throw ExcalcError("scene form has no component on chart " + chart);
  return it->second;
}

CechCochain CechCochain::zero(int deg, int n,
                              const std::vector<std::string>& charts) {
  CechCochain c;
  c.deg = deg;
  for (auto& ch : charts) {
    c.w0.emplace(ch, Form(n, deg, ch));
    c.w1.emplace(ch, Form(n, deg, ch));
    if (deg > 0) c.w01.emplace(ch, Form(n, deg - 1, ch));
  }
  return c;
}

const Form& CechCochain::part(const std::map<std::string, Form>& m,
                              const std::string& chart) const {
  auto it = m.find(chart);
  if (it == m.end())
    throw ExcalcError("cochain has no component on chart " + chart);
  return it->second;
}

namespace {

// collects every chart id appearing in any component map
std::vector<std::string> chartsOf(const CechCochain& c) {
  std::vector<std::string> out;
  for (auto* m : {&c.w0, &c.w1, &c.w01})
    for (auto& [ch, f] : *m)
      if (std::find(out.begin(), out.end(), ch) == out.end()) out.push_back(ch);
  return out;
}

Form getOr(const std::map<std::string, Form>& m, const std::string& chart,
           int n, int deg) {
  auto it = m.find(chart);
  return it == m.end() ? Form(n, deg, chart) : it->second;
}

int nOf(const CechCochain& c) {
  for (auto* m : {&c.w0, &c.w1, &c.w01})
    for (auto& [ch, f] : *m)
      if (f.n() > 0) return f.n();
  return 1;
}

}  // namespace

CechCochain applyD(const CechCochain& c) {
  CechCochain out;
  out.deg = c.deg + 1;
  int n = nOf(c);
  for (auto& ch : chartsOf(c)) {
    Form w0 = getOr(c.w0, ch, n, c.deg);
    Form w1 = getOr(c.w1, ch, n, c.deg);
    out.w0.emplace(ch, w0.d());
    out.w1.emplace(ch, w1.d());
    Form dOverlap = c.deg > 0 ? getOr(c.w01, ch, n, c.deg - 1).d()
                              : Form(n, c.deg, ch);
    out.w01.emplace(ch, w1 - w0 - dOverlap);
  }
  return out;
}

CechCochain restrictGlobal(const SceneForm& w) {
  CechCochain c;
  if (w.comp.empty()) throw ExcalcError("restrictGlobal: empty form");
  c.deg = w.comp.begin()->second.degree();
  int n = w.comp.begin()->second.n();
  for (auto& [ch, f] : w.comp) {
    c.w0.emplace(ch, f);
    c.w1.emplace(ch, f);
    if (c.deg > 0) c.w01.emplace(ch, Form(n, c.deg - 1, ch));
  }
  return c;
}

SceneForm collate(const CechCochain& c, const PartitionOfUnity& pu) {
  SceneForm out;
  int n = nOf(c);
  for (auto& ch : chartsOf(c)) {
    Form w0 = getOr(c.w0, ch, n, c.deg);
    Form w1 = getOr(c.w1, ch, n, c.deg);
    Form v = w0.scaled(pu.rho(0, ch)) + w1.scaled(pu.rho(1, ch));
    if (c.deg > 0) {
      Form drho0 = Form::scalar(n, pu.rho(0, ch), ch).d();
      v = v - drho0.wedge(getOr(c.w01, ch, n, c.deg - 1));
    }
    out.comp.emplace(ch, v);
  }
  return out;
}

std::complex<double> honeycombIntegrate(const CechCochain& c,
                                        const Chain& chain,
                                        const HoneycombSystem& h, double tol,
                                        QuadStats* st) {
  std::complex<double> total = 0.0;
  int dim = chain.dim();
  for (auto& s : chain.simplices) {
    // carve the singular cells of this chart out of the simplex one by one;
    // cells are pairwise disjoint so the order does not matter
    Chain remaining;
    remaining.append(s);
    for (auto& cell : h.cells) {
      if (cell.chart != s.chart) continue;
      Chain next;
      for (auto& piece : remaining.simplices) {
        ClipResult cr = clipSimplexAgainstDisk(piece, cell.center, cell.r);
        total += integrateOverChain(c.part(c.w1, s.chart), cr.inside, tol, st);
        if (c.deg > 0 && dim > 0)
          total -= integrateOverChain(c.part(c.w01, s.chart), cr.interface,
                                      tol, st);
        for (auto& p : cr.outside.simplices) next.append(p);
      }
      remaining = std::move(next);
    }
    total += integrateOverChain(c.part(c.w0, s.chart), remaining, tol, st);
  }
  return total;
}

}  // namespace excalc
