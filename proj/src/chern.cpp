#include "excalc/chern.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace excalc {

const Form& ChernForm::on(const std::string& chart) const {
  auto it = comp.find(chart);
  if (it == comp.end())
    throw ExcalcError("Chern form has no component on chart " + chart);
  return it->second;
}

const Form& DifferenceForm::on(const std::string& chart) const {
  auto it = comp.find(chart);
  if (it == comp.end())
    throw ExcalcError("difference form has no component on chart " + chart);
  return it->second;
}

namespace {

// Wedge determinant of a q x q submatrix of 2-forms (even forms commute,
// so the Laplace expansion is valid verbatim).
Form detWedge(const FormMatrix& m, const std::vector<int>& rowsIdx,
              const std::vector<int>& colsIdx) {
  size_t k = rowsIdx.size();
  if (k == 1) return m.at(rowsIdx[0], colsIdx[0]);
  std::vector<int> subRows(rowsIdx.begin() + 1, rowsIdx.end());
  Form s(m.n(), (int)k * m.degree(), m.a[0].chart());
  for (size_t j = 0; j < k; ++j) {
    std::vector<int> subCols;
    for (size_t l = 0; l < k; ++l)
      if (l != j) subCols.push_back(colsIdx[l]);
    Form term = m.at(rowsIdx[0], colsIdx[j]).wedge(detWedge(m, subRows, subCols));
    s = (j % 2) ? s - term : s + term;
  }
  return s;
}

ScalarField iOver2Pi() {
  double twoPi = 2.0 * std::numbers::pi;
  return ScalarField::constant(CNum::approx({0.0, 1.0 / twoPi}));
}

}  // namespace

Form chernFormOf(const FormMatrix& K, int q) {
  int e = K.rows;
  int n = K.n();
  std::string chart = K.a.empty() ? "" : K.a[0].chart();
  if (q == 0) return Form::scalar(n, ScalarField(1L), chart);
  if (q < 0 || q > e) return Form(n, 2 * q, chart);
  FormMatrix X = K.scaled(iOver2Pi());
  Form total(n, 2 * q, chart);
  // sum of principal q x q minors
  std::vector<int> idx(q);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == q) {
      total = total + detWedge(X, idx, idx);
      return;
    }
    for (int i = start; i < e; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return total;
}

ChernForm chernForm(const ConnectionData& c, int q) {
  ChernForm r;
  r.q = q;
  CurvatureMatrix K = curvature(c);
  for (auto& [chart, k] : K.K) r.comp.emplace(chart, chernFormOf(k, q));
  return r;
}

const std::pair<std::vector<double>, std::vector<double>>& gaussLegendre01(
    int order) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>>
      cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  // Newton iteration on Legendre P_n over [-1,1], then map to [0,1]
  std::vector<double> x(order), w(order);
  for (int i = 0; i < order; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = order * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= order; ++k) {
      double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = order * (t * p1 - p0) / (t * t - 1.0);
    x[i] = 0.5 * (1.0 - t);  // note: cos ordering descends; map to [0,1]
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return cache.emplace(order, std::make_pair(std::move(x), std::move(w)))
      .first->second;
}

DifferenceForm bottDifference(const ConnectionData& c0,
                              const ConnectionData& c1, int q) {
  DifferenceForm r;
  r.q = q;
  ScalarField s = ScalarField::sigma();
  ScalarField oneMinusS = ScalarField(1L) - s;
  for (auto& [chart, th0] : c0.theta) {
    auto it1 = c1.theta.find(chart);
    if (it1 == c1.theta.end()) continue;
    const FormMatrix& th1 = it1->second;
    FormMatrix family = th0.scaled(oneMinusS) + th1.scaled(s);
    FormMatrix K = family.d() + family.wedgeMul(family);
    Form cq = chernFormOf(K, q);
    // fibre orientation: with dsigmaPart defined by w = a ^ dsigma + rest,
    // the sign making d(bott) = c^q(c1) - c^q(c0) is the negative one
    Form fibre = -cq.dsigmaPart();  // degree 2q-1, polynomial in sigma
    int n = fibre.n();
    Form acc(n, fibre.degree(), chart);
    auto& [xs, ws] = gaussLegendre01(16);
    for (size_t i = 0; i < xs.size(); ++i)
      acc = acc + fibre.substSigma(xs[i]).scaled(ScalarField::constant(
                      CNum::approx({ws[i], 0.0})));
    r.comp.emplace(chart, acc);
  }
  return r;
}

CechCochain localizedChernCocycle(const BundleData& b, const SectionTuple& s,
                                  const std::map<std::string, Region>& v0,
                                  const ConnectionData& c1, int q) {
  ConnectionData c0 = trivialConnection(b, s, v0);
  CechCochain c;
  c.deg = 2 * q;
  // w0 = 0 on the charts where the s-trivial connection lives
  for (auto& [chart, th] : c0.theta)
    c.w0.emplace(chart, Form(b.n, 2 * q, chart));
  ChernForm cq = chernForm(c1, q);
  c.w1 = cq.comp;
  DifferenceForm bott = bottDifference(c0, c1, q);
  c.w01 = bott.comp;
  if (c.w01.empty())
    throw ExcalcError(
        "localizedChernCocycle: connections share no chart for the overlap "
        "component");
  return c;
}

}  // namespace excalc
