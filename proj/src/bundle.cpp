#include "excalc/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace excalc {

FieldMatrix FieldMatrix::identity(int e) {
  FieldMatrix m(e, e);
  for (int i = 0; i < e; ++i) m.at(i, i) = ScalarField(1L);
  return m;
}

FieldMatrix FieldMatrix::mul(const FieldMatrix& o) const {
  if (cols != o.rows) throw ExcalcError("matrix product: shape mismatch");
  FieldMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < o.cols; ++j) {
      ScalarField s(0L);
      for (int k = 0; k < cols; ++k) s = s + at(i, k) * o.at(k, j);
      r.at(i, j) = s;
    }
  return r;
}

FieldMatrix FieldMatrix::substCoords(
    const std::vector<ScalarField>& sub) const {
  FieldMatrix r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i].substCoords(sub);
  return r;
}

namespace {

ScalarField detRec(const FieldMatrix& m, std::vector<int> rowsIdx,
                   std::vector<int> colsIdx) {
  size_t k = rowsIdx.size();
  if (k == 1) return m.at(rowsIdx[0], colsIdx[0]);
  ScalarField s(0L);
  std::vector<int> subRows(rowsIdx.begin() + 1, rowsIdx.end());
  for (size_t j = 0; j < k; ++j) {
    std::vector<int> subCols;
    for (size_t l = 0; l < k; ++l)
      if (l != j) subCols.push_back(colsIdx[l]);
    ScalarField term = m.at(rowsIdx[0], colsIdx[j]) * detRec(m, subRows, subCols);
    s = (j % 2) ? s - term : s + term;
  }
  return s;
}

}  // namespace

ScalarField FieldMatrix::det() const {
  if (rows != cols) throw ExcalcError("det: matrix not square");
  if (rows > 4) throw ExcalcError("det: rank > 4 unsupported");
  std::vector<int> idx(rows);
  for (int i = 0; i < rows; ++i) idx[i] = i;
  return detRec(*this, idx, idx);
}

FieldMatrix FieldMatrix::inverse() const {
  if (rows != cols) throw ExcalcError("inverse: matrix not square");
  ScalarField dInv = det().pow(-1);
  FieldMatrix r(rows, cols);
  if (rows == 1) {
    r.at(0, 0) = dInv;
    return r;
  }
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      std::vector<int> ri, ci;
      for (int k = 0; k < rows; ++k)
        if (k != j) ri.push_back(k);
      for (int k = 0; k < cols; ++k)
        if (k != i) ci.push_back(k);
      ScalarField cof = detRec(*this, ri, ci);
      if ((i + j) % 2) cof = -cof;
      r.at(i, j) = cof * dInv;  // adjugate transpose
    }
  return r;
}

std::vector<std::vector<std::complex<double>>> FieldMatrix::eval(
    const EvalPoint& p) const {
  std::vector<std::vector<std::complex<double>>> v(
      rows, std::vector<std::complex<double>>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) v[i][j] = at(i, j).eval(p);
  return v;
}

FormMatrix::FormMatrix(int r, int c, int n, int deg, std::string chart)
    : rows(r), cols(c), a(r * c, Form(n, deg, chart)) {}

FormMatrix FormMatrix::zeroConnection(int e, int n, std::string chart) {
  return FormMatrix(e, e, n, 1, std::move(chart));
}

FormMatrix FormMatrix::operator+(const FormMatrix& o) const {
  if (rows != o.rows || cols != o.cols)
    throw ExcalcError("form matrix add: shape mismatch");
  FormMatrix r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

FormMatrix FormMatrix::operator-(const FormMatrix& o) const {
  if (rows != o.rows || cols != o.cols)
    throw ExcalcError("form matrix sub: shape mismatch");
  FormMatrix r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

FormMatrix FormMatrix::scaled(const ScalarField& f) const {
  FormMatrix r = *this;
  for (auto& e : r.a) e = e.scaled(f);
  return r;
}

FormMatrix FormMatrix::d() const {
  FormMatrix r(rows, cols, n(), degree() + 1, a.empty() ? "" : a[0].chart());
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i].d();
  return r;
}

FormMatrix FormMatrix::wedgeMul(const FormMatrix& o) const {
  if (cols != o.rows) throw ExcalcError("form matrix product: shape mismatch");
  FormMatrix r(rows, o.cols, n(), degree() + o.degree(),
               a.empty() ? "" : a[0].chart());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < o.cols; ++j) {
      Form s = at(i, 0).wedge(o.at(0, j));
      for (int k = 1; k < cols; ++k) s = s + at(i, k).wedge(o.at(k, j));
      r.at(i, j) = s;
    }
  return r;
}

FormMatrix FormMatrix::leftMul(const FieldMatrix& g) const {
  if (g.cols != rows) throw ExcalcError("leftMul: shape mismatch");
  FormMatrix r(g.rows, cols, n(), degree(), a.empty() ? "" : a[0].chart());
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < cols; ++j) {
      Form s(n(), degree(), a[0].chart());
      for (int k = 0; k < rows; ++k) s = s + at(k, j).scaled(g.at(i, k));
      r.at(i, j) = s;
    }
  return r;
}

FormMatrix FormMatrix::rightMul(const FieldMatrix& g) const {
  if (cols != g.rows) throw ExcalcError("rightMul: shape mismatch");
  FormMatrix r(rows, g.cols, n(), degree(), a.empty() ? "" : a[0].chart());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < g.cols; ++j) {
      Form s(n(), degree(), a[0].chart());
      for (int k = 0; k < cols; ++k) s = s + at(i, k).scaled(g.at(k, j));
      r.at(i, j) = s;
    }
  return r;
}

FormMatrix FormMatrix::pullback(const std::vector<ScalarField>& comp,
                                int srcN, std::string srcChart) const {
  FormMatrix r(rows, cols, srcN, degree(), srcChart);
  for (size_t i = 0; i < a.size(); ++i)
    r.a[i] = a[i].pullback(comp, srcN, srcChart);
  return r;
}

FormMatrix FormMatrix::substSigma(double value) const {
  FormMatrix r = *this;
  for (auto& e : r.a) e = e.substSigma(value);
  return r;
}

Form FormMatrix::trace() const {
  if (rows != cols) throw ExcalcError("trace: matrix not square");
  Form s = at(0, 0);
  for (int i = 1; i < rows; ++i) s = s + at(i, i);
  return s;
}

FormMatrix dOf(const FieldMatrix& m, int n, std::string chart) {
  FormMatrix r(m.rows, m.cols, n, 1, chart);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      r.at(i, j) = Form::scalar(n, m.at(i, j), chart).d();
  return r;
}

const BundleTransition* BundleData::transition(const std::string& from,
                                               const std::string& to) const {
  for (auto& t : transitions)
    if (t.from == from && t.to == to) return &t;
  return nullptr;
}

const FormMatrix& ConnectionData::on(const std::string& chart) const {
  auto it = theta.find(chart);
  if (it == theta.end())
    throw ExcalcError("connection has no matrix on chart " + chart);
  return it->second;
}

CurvatureMatrix curvature(const ConnectionData& c) {
  CurvatureMatrix K;
  K.rank = c.rank;
  for (auto& [chart, th] : c.theta)
    K.K.emplace(chart, th.d() + th.wedgeMul(th));
  return K;
}

ConnectionData glueConnections(const PartitionOfUnity& pu,
                               const ConnectionData& c0,
                               const ConnectionData& c1) {
  ConnectionData r;
  r.rank = c0.rank ? c0.rank : c1.rank;
  std::vector<std::string> charts;
  for (auto& [ch, m] : c0.theta) charts.push_back(ch);
  for (auto& [ch, m] : c1.theta)
    if (!c0.theta.count(ch)) charts.push_back(ch);
  for (auto& ch : charts) {
    auto i0 = c0.theta.find(ch), i1 = c1.theta.find(ch);
    if (i0 != c0.theta.end() && i1 != c1.theta.end())
      r.theta.emplace(ch, i0->second.scaled(pu.rho(0, ch)) +
                              i1->second.scaled(pu.rho(1, ch)));
    else if (i0 != c0.theta.end())
      r.theta.emplace(ch, i0->second);
    else
      r.theta.emplace(ch, i1->second);
  }
  return r;
}

ConnectionData trivialConnection(const BundleData& b,
                                 const SectionTuple& frame,
                                 const std::map<std::string, Region>& region,
                                 std::uint64_t seed) {
  ConnectionData c;
  c.rank = b.rank;
  int e = b.rank;
  for (auto& [chart, reg] : region) {
    auto it = frame.comps.find(chart);
    if (it == frame.comps.end())
      throw ExcalcError("trivialConnection: frame missing on chart " + chart);
    const auto& rows = it->second;
    if ((int)rows.size() != e)
      throw ExcalcError(
          "trivialConnection: frame is not square (complete it first)");
    FieldMatrix F(e, e);  // column j = section j in chart components
    for (int j = 0; j < e; ++j)
      for (int i = 0; i < e; ++i) F.at(i, j) = rows[j].at(i);
    // nonsingularity on the region: locate zeros of det F numerically
    SectionTuple detSec;
    detSec.rank = 1;
    detSec.comps[chart] = {{F.det()}};
    auto zeros = singularLocus(detSec, {{chart, reg}}, 200, seed);
    if (!zeros.empty())
      throw ExcalcError("trivialConnection: frame singular on chart " +
                        chart + " near " + std::to_string(zeros[0].z.real()) +
                        "+" + std::to_string(zeros[0].z.imag()) + "i");
    FormMatrix dF = dOf(F, b.n, chart);
    FormMatrix theta = dF.rightMul(F.inverse());
    // theta = -dF F^{-1} annihilates the frame: d(Fc) + theta Fc = 0
    FormMatrix zero(e, e, b.n, 1, chart);
    c.theta.emplace(chart, zero - theta);
  }
  return c;
}

std::vector<SingularPoint> singularLocus(
    const SectionTuple& s, const std::map<std::string, Region>& region,
    int samples, std::uint64_t seed) {
  std::vector<SingularPoint> out;
  for (auto& [chart, reg] : region) {
    auto it = s.comps.find(chart);
    if (it == s.comps.end()) continue;
    const auto& rows = it->second;
    int r = (int)rows.size(), e = s.rank;
    if (r > e) throw ExcalcError("singularLocus: more sections than rank");
    // all r x r minors of the r x e component matrix
    FieldMatrix M(r, e);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < e; ++j) M.at(i, j) = rows[i].at(j);
    std::vector<ScalarField> minors, dminors;
    std::vector<int> cols(r);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == r) {
        std::vector<int> ri(r);
        for (int i = 0; i < r; ++i) ri[i] = i;
        FieldMatrix sub(r, r);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) sub.at(i, j) = M.at(i, cols[j]);
        ScalarField m = sub.det();
        minors.push_back(m);
        dminors.push_back(m.derivative(Var::z(1)));
        return;
      }
      for (int c = start; c < e; ++c) {
        cols[depth] = c;
        rec(c + 1, depth + 1);
      }
    };
    rec(0, 0);
    auto normAt = [&](std::complex<double> z) {
      EvalPoint p;
      p.z = {z};
      double n2 = 0.0;
      for (auto& m : minors) n2 += std::norm(m.eval(p));
      return std::sqrt(n2);
    };
    std::vector<std::complex<double>> found;
    for (auto& [ch, z0] : sampleRegion(reg, samples, seed)) {
      std::complex<double> z = z0;
      bool ok = false;
      for (int iter = 0; iter < 60; ++iter) {
        EvalPoint p;
        p.z = {z};
        std::complex<double> num = 0.0;
        double den = 0.0;
        double n2 = 0.0;
        for (size_t i = 0; i < minors.size(); ++i) {
          std::complex<double> mv = minors[i].eval(p);
          std::complex<double> dv = dminors[i].eval(p);
          num += std::conj(dv) * mv;
          den += std::norm(dv);
          n2 += std::norm(mv);
        }
        if (std::sqrt(n2) < 1e-10) ok = true;
        // keep iterating even once small: multiple zeros converge linearly,
        // and extra steps tighten the cluster below the dedup radius
        if (den < 1e-30) break;  // stationary but nonzero: not a root path
        std::complex<double> step = num / den;
        z -= step;
        if (std::abs(step) < 1e-14) break;
        if (std::abs(z) > 1e6) {
          ok = false;
          break;
        }
      }
      if (!ok || !reg.contains(chart, z)) continue;
      bool dup = false;
      for (auto& f : found)
        if (std::abs(f - z) < 1e-5) dup = true;
      if (dup) continue;
      found.push_back(z);
      out.push_back({chart, z, normAt(z)});
    }
    if (found.size() > 16)
      throw ExcalcError(
          "singularLocus: zero set does not look isolated on chart " + chart);
  }
  return out;
}

double formCoeffNorm(const Form& f, const EvalPoint& p) {
  double m = 0.0;
  for (auto& t : f.terms()) m = std::max(m, std::abs(t.c.eval(p)));
  return m;
}

double formMatrixNorm(const FormMatrix& m, const EvalPoint& p) {
  double v = 0.0;
  for (auto& e : m.a) v = std::max(v, formCoeffNorm(e, p));
  return v;
}

namespace {

EvalPoint pointOf(std::complex<double> z) {
  EvalPoint p;
  p.z = {z};
  return p;
}

EvalPoint mapPoint(const std::vector<ScalarField>& coordMap,
                   std::complex<double> z) {
  EvalPoint p = pointOf(z);
  EvalPoint q;
  for (auto& c : coordMap) q.z.push_back(c.eval(p));
  return q;
}

}  // namespace

void checkBundle(const BundleData& b, int samples, std::uint64_t seed,
                 double tol) {
  for (auto& t : b.transitions) {
    checkHolomorphic(t.coordMap, b.n, "transition " + t.from + "->" + t.to);
    for (auto& g : t.g.a)
      for (int i = 1; i <= b.n; ++i)
        if (!g.derivative(Var::zbar(i)).isZero())
          throw ExcalcError("bundle transition " + t.from + "->" + t.to +
                            " is not holomorphic");
    const BundleTransition* back = b.transition(t.to, t.from);
    ScalarField detG = t.g.det();
    for (auto& [ch, z] : sampleRegion(t.overlap, samples, seed)) {
      EvalPoint p = pointOf(z);
      if (std::abs(detG.eval(p)) < 1e-9)
        throw ExcalcError("bundle transition " + t.from + "->" + t.to +
                          " is singular at a sample point");
      if (!back) continue;
      // g_{alpha beta}(z) * g_{beta alpha}(phi(z)) = I
      EvalPoint q = mapPoint(t.coordMap, z);
      auto G = t.g.eval(p);
      auto H = back->g.eval(q);
      int e = b.rank;
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) {
          std::complex<double> s = 0.0;
          for (int k = 0; k < e; ++k) s += G[i][k] * H[k][j];
          double expect = (i == j) ? 1.0 : 0.0;
          if (std::abs(s - expect) > tol)
            throw ExcalcError("bundle cocycle residual too large on " +
                              t.from + "->" + t.to);
        }
    }
  }
}

void checkSections(const BundleData& b, const SectionTuple& s, int samples,
                   std::uint64_t seed, double tol) {
  for (auto& t : b.transitions) {
    auto iF = s.comps.find(t.from);
    auto iT = s.comps.find(t.to);
    if (iF == s.comps.end() || iT == s.comps.end()) continue;
    for (auto& [ch, z] : sampleRegion(t.overlap, samples, seed)) {
      EvalPoint p = pointOf(z);
      EvalPoint q = mapPoint(t.coordMap, z);
      auto G = t.g.eval(p);
      for (size_t r = 0; r < iF->second.size(); ++r) {
        for (int i = 0; i < b.rank; ++i) {
          std::complex<double> lhs = iT->second[r][i].eval(q);
          std::complex<double> rhs = 0.0;
          for (int k = 0; k < b.rank; ++k)
            rhs += G[i][k] * iF->second[r][k].eval(p);
          double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
          if (std::abs(lhs - rhs) > tol * scale)
            throw ExcalcError("section incompatible across " + t.from +
                              "->" + t.to);
        }
      }
    }
  }
}

namespace {

// residual matrix theta_beta - (g^{-1} (phi^* theta_alpha) g + g^{-1} dg),
// as forms in the beta chart
FormMatrix compatResidual(const BundleData& b, const BundleTransition& t,
                          const FormMatrix& thBeta,
                          const FormMatrix& thAlpha) {
  FieldMatrix gInv = t.g.inverse();
  FormMatrix pulled = thAlpha.pullback(t.coordMap, b.n, t.from);
  FormMatrix rhs = pulled.leftMul(gInv).rightMul(t.g) +
                   dOf(t.g, b.n, t.from).leftMul(gInv);
  return thBeta - rhs;
}

}  // namespace

void checkConnection(const BundleData& b, const ConnectionData& c,
                     int samples, std::uint64_t seed, double tol) {
  for (auto& t : b.transitions) {
    auto iB = c.theta.find(t.from);
    auto iA = c.theta.find(t.to);
    if (iB == c.theta.end() || iA == c.theta.end()) continue;
    FormMatrix res = compatResidual(b, t, iB->second, iA->second);
    for (auto& [ch, z] : sampleRegion(t.overlap, samples, seed))
      if (formMatrixNorm(res, pointOf(z)) > tol)
        throw ExcalcError("connection compatibility residual too large on " +
                          t.from + "->" + t.to);
  }
}

void checkCurvatureTransform(const BundleData& b, const CurvatureMatrix& K,
                             int samples, std::uint64_t seed, double tol) {
  for (auto& t : b.transitions) {
    auto iB = K.K.find(t.from);
    auto iA = K.K.find(t.to);
    if (iB == K.K.end() || iA == K.K.end()) continue;
    FieldMatrix gInv = t.g.inverse();
    FormMatrix rhs =
        iA->second.pullback(t.coordMap, b.n, t.from).leftMul(gInv).rightMul(
            t.g);
    FormMatrix res = iB->second - rhs;
    for (auto& [ch, z] : sampleRegion(t.overlap, samples, seed))
      if (formMatrixNorm(res, pointOf(z)) > tol)
        throw ExcalcError("curvature transform residual too large on " +
                          t.from + "->" + t.to);
  }
}

}  // namespace excalc
