#include "excalc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace excalc {

namespace {

ScalarField cf(std::complex<double> v) {
  return ScalarField::constant(CNum::approx(v));
}
ScalarField rf(double v) { return cf({v, 0.0}); }

ScalarField affineField(const AffineReal& a) {
  ScalarField f = rf(a.c0);
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != 0.0) f = f + rf(a.c[i]) * ScalarField::coord((int)i + 1);
  return f;
}

// 8-point Gauss-Legendre on [0,1].
constexpr int GLN = 8;
const double GLX[GLN] = {0.01985507175123188, 0.10166676129318664,
                         0.2372337950418355,  0.40828267875217505,
                         0.59171732124782495, 0.7627662049581645,
                         0.89833323870681336, 0.98014492824876812};
const double GLW[GLN] = {0.05061426814518813, 0.11119051722668724,
                         0.15685332293894364, 0.18134189168918099,
                         0.18134189168918099, 0.15685332293894364,
                         0.11119051722668724, 0.05061426814518813};

struct QuadRule {
  // barycentric-like simplex coordinates (t_1..t_k) and weights
  std::vector<std::vector<double>> pts;
  std::vector<double> w;
};

const QuadRule& simplexRule(int k) {
  static std::vector<QuadRule> rules = [] {
    std::vector<QuadRule> r(4);
    // k = 0: single point
    r[0].pts.push_back({});
    r[0].w.push_back(1.0);
    for (int i = 0; i < GLN; ++i) {
      r[1].pts.push_back({GLX[i]});
      r[1].w.push_back(GLW[i]);
      for (int j = 0; j < GLN; ++j) {
        double t1 = GLX[i], t2 = GLX[j] * (1 - GLX[i]);
        r[2].pts.push_back({t1, t2});
        r[2].w.push_back(GLW[i] * GLW[j] * (1 - GLX[i]));
        for (int l = 0; l < GLN; ++l) {
          double t3 = GLX[l] * (1 - GLX[i]) * (1 - GLX[j]);
          r[3].pts.push_back({t1, t2, t3});
          r[3].w.push_back(GLW[i] * GLW[j] * GLW[l] * (1 - GLX[i]) *
                           (1 - GLX[i]) * (1 - GLX[j]));
        }
      }
    }
    return r;
  }();
  if (k < 0 || k > 3) throw QuadratureError("unsupported simplex dimension");
  return rules[k];
}

using Vert = std::vector<double>;  // point in parameter space, length k

std::vector<std::vector<Vert>> splitSimplex(const std::vector<Vert>& W) {
  int k = (int)W.size() - 1;
  auto mid = [&](int a, int b) {
    Vert m(W[a].size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (W[a][i] + W[b][i]);
    return m;
  };
  if (k == 1) {
    Vert m = mid(0, 1);
    return {{W[0], m}, {m, W[1]}};
  }
  if (k == 2) {
    Vert m01 = mid(0, 1), m02 = mid(0, 2), m12 = mid(1, 2);
    return {{W[0], m01, m02},
            {m01, W[1], m12},
            {m02, m12, W[2]},
            {m01, m12, m02}};
  }
  if (k == 3) {
    Vert m01 = mid(0, 1), m02 = mid(0, 2), m03 = mid(0, 3);
    Vert m12 = mid(1, 2), m13 = mid(1, 3), m23 = mid(2, 3);
    // 4 corner tetrahedra + central octahedron cut along the m03-m12 axis
    return {{W[0], m01, m02, m03}, {m01, W[1], m12, m13},
            {m02, m12, W[2], m23}, {m03, m13, m23, W[3]},
            {m03, m12, m01, m02},  {m03, m12, m13, m01},
            {m03, m12, m23, m13},  {m03, m12, m02, m23}};
  }
  throw QuadratureError("unsupported split dimension");
}

struct Integrator {
  const Form& form;
  const Simplex& s;
  int n, k;
  std::vector<std::vector<ScalarField>> dcomp;  // [n][k]
  long cells = 0;
  double errAccum = 0.0;
  static constexpr long kBudget = 1 << 16;

  Integrator(const Form& a, const Simplex& sx) : form(a), s(sx) {
    n = a.n();
    k = s.k;
    dcomp.resize(s.comp.size());
    for (size_t i = 0; i < s.comp.size(); ++i)
      for (int j = 1; j <= k; ++j)
        dcomp[i].push_back(s.comp[i].derivative(Var::z(j)) +
                           s.comp[i].derivative(Var::zbar(j)));
  }

  std::complex<double> quadCell(const std::vector<Vert>& W) {
    if (++cells > kBudget)
      throw QuadratureError("quadrature subdivision budget exhausted");
    const QuadRule& rule = simplexRule(k);
    std::complex<double> acc = 0.0;
    std::vector<std::complex<double>> edge(k * std::max<size_t>(1, k));
    for (size_t q = 0; q < rule.pts.size(); ++q) {
      const auto& lam = rule.pts[q];
      Vert t(W[0]);
      for (int j = 0; j < k; ++j)
        for (int m = 0; m < k; ++m)
          t[m] += lam[j] * (W[j + 1][m] - W[0][m]);
      EvalPoint p;
      p.z.reserve(k);
      for (int m = 0; m < k; ++m) p.z.push_back({t[m], 0.0});
      EvalScope scope;  // comp and dcomp all evaluated at the same point
      EvalPoint chartPt;
      chartPt.z.reserve(s.comp.size());
      for (auto& c : s.comp) chartPt.z.push_back(scope.eval(c, p));
      std::vector<Tangent> vecs(k);
      for (int j = 0; j < k; ++j) {
        std::vector<std::complex<double>> v(s.comp.size(), 0.0);
        for (size_t i = 0; i < s.comp.size(); ++i) {
          std::complex<double> di = 0.0;
          for (int m = 0; m < k; ++m) {
            double dt = W[j + 1][m] - W[0][m];
            if (dt != 0.0) di += scope.eval(dcomp[i][m], p) * dt;
          }
          v[i] = di;
        }
        vecs[j] = Tangent::real(std::move(v));
      }
      acc += rule.w[q] * form.eval(chartPt, vecs);
    }
    return acc * s.sign;
  }

  std::complex<double> adapt(const std::vector<Vert>& W, double tolLocal,
                             int depth,
                             std::optional<std::complex<double>> known = {}) {
    std::complex<double> coarse = known ? *known : quadCell(W);
    if (k == 0) return coarse;
    auto children = splitSimplex(W);
    std::vector<std::complex<double>> vals;
    vals.reserve(children.size());
    std::complex<double> fine = 0.0;
    for (auto& c : children) {
      vals.push_back(quadCell(c));
      fine += vals.back();
    }
    // |coarse - fine| estimates the error of `coarse`; the refined value is
    // at least an order-4 improvement, so credit `fine` with a factor 16.
    constexpr double kGain = 16.0;
    double err = std::abs(coarse - fine) / kGain;
    if (err < tolLocal || depth >= 24) {
      errAccum += err;
      return fine;
    }
    std::complex<double> total = 0.0;
    for (size_t i = 0; i < children.size(); ++i)
      total += adapt(children[i], tolLocal / (double)children.size(),
                     depth + 1, vals[i]);
    return total;
  }
};

std::vector<Vert> standardVerts(int k) {
  std::vector<Vert> W(k + 1, Vert(k, 0.0));
  for (int j = 0; j < k; ++j) W[j + 1][j] = 1.0;
  return W;
}

}  // namespace

Simplex Simplex::affineSimplex(
    std::string chart, std::vector<std::vector<std::complex<double>>> verts,
    double sign) {
  Simplex s;
  s.chart = std::move(chart);
  s.k = (int)verts.size() - 1;
  s.sign = sign;
  size_t n = verts[0].size();
  for (size_t i = 0; i < n; ++i) {
    ScalarField f = cf(verts[0][i]);
    for (int j = 1; j <= s.k; ++j) {
      std::complex<double> d = verts[j][i] - verts[0][i];
      if (d != 0.0) f = f + cf(d) * ScalarField::coord(j);
    }
    s.comp.push_back(f);
  }
  s.affine = std::move(verts);
  return s;
}

Simplex Simplex::arc(std::string chart, std::complex<double> center, double r,
                     double a0, double a1, double sign) {
  Simplex s;
  s.chart = std::move(chart);
  s.k = 1;
  s.sign = sign;
  ScalarField ang = rf(a0) + rf(a1 - a0) * ScalarField::coord(1);
  s.comp.push_back(cf(center) + rf(r) * expF(ScalarField::i() * ang));
  return s;
}

Simplex Simplex::point(std::string chart, std::vector<std::complex<double>> p,
                       double sign) {
  Simplex s;
  s.chart = std::move(chart);
  s.k = 0;
  s.sign = sign;
  for (auto& c : p) s.comp.push_back(cf(c));
  return s;
}

Simplex Simplex::polarTriangle(std::string chart, std::complex<double> center,
                               AffineReal R, AffineReal A, double sign) {
  Simplex s;
  s.chart = std::move(chart);
  s.k = 2;
  s.sign = sign;
  s.comp.push_back(cf(center) +
                   affineField(R) * expF(ScalarField::i() * affineField(A)));
  s.polar = PolarInfo{center, std::move(R), std::move(A)};
  return s;
}

Simplex Simplex::coneOverArc(std::string chart, std::complex<double> apex,
                             std::complex<double> center, double r, double a0,
                             double a1, double sign) {
  Simplex s;
  s.chart = std::move(chart);
  s.k = 2;
  s.sign = sign;
  ScalarField t1 = ScalarField::coord(1), t2 = ScalarField::coord(2);
  ScalarField u = t1 + t2;          // radial blend, > 0 at quadrature nodes
  ScalarField sParam = t2 / u;      // position along the arc
  ScalarField ang = rf(a0) + rf(a1 - a0) * sParam;
  ScalarField gamma = cf(center) + rf(r) * expF(ScalarField::i() * ang);
  s.comp.push_back(cf(apex) + u * (gamma - cf(apex)));
  return s;
}

Chain Chain::reversed() const {
  Chain c;
  for (auto& s : simplices) c.append(s.reversed());
  return c;
}

std::complex<double> integrateOverSimplex(const Form& a, const Simplex& s,
                                          double tol, QuadStats* st) {
  if (a.degree() != s.k)
    throw ExcalcError("integrate: form degree != simplex dimension");
  if (!a.chart().empty() && !s.chart.empty() && a.chart() != s.chart)
    throw ExcalcError("integrate: chart mismatch (" + a.chart() + " vs " +
                      s.chart + ")");
  Integrator integ(a, s);
  std::complex<double> v = integ.adapt(standardVerts(s.k), tol, 0);
  if (st) {
    st->cells += integ.cells;
    st->errorEstimate += integ.errAccum;
  }
  return v;
}

std::complex<double> integrateOverChain(const Form& a, const Chain& c,
                                        double tol, QuadStats* st) {
  std::complex<double> total = 0.0;
  for (auto& s : c.simplices) total += integrateOverSimplex(a, s, tol, st);
  return total;
}

std::complex<double> integrateOverChain(const std::map<std::string, Form>& fs,
                                        const Chain& c, double tol,
                                        QuadStats* st) {
  std::complex<double> total = 0.0;
  for (auto& s : c.simplices) {
    auto it = fs.find(s.chart);
    if (it == fs.end())
      throw ExcalcError("integrate: no form component for chart " + s.chart);
    total += integrateOverSimplex(it->second, s, tol, st);
  }
  return total;
}

Chain boundary(const Simplex& s) {
  Chain out;
  int k = s.k;
  if (k < 1) throw ExcalcError("boundary: dimension must be >= 1");
  auto std_ = standardVerts(k);
  for (int j = 0; j <= k; ++j) {
    std::vector<Vert> F;
    for (int m = 0; m <= k; ++m)
      if (m != j) F.push_back(std_[m]);
    // substitution fields: source param z_m = affine function of face params
    std::vector<ScalarField> sub;
    for (int m = 0; m < k; ++m) {
      ScalarField f = rf(F[0][m]);
      for (int l = 1; l < k; ++l) {
        double d = F[l][m] - F[0][m];
        if (d != 0.0) f = f + rf(d) * ScalarField::coord(l);
      }
      sub.push_back(f);
    }
    Simplex face;
    face.chart = s.chart;
    face.k = k - 1;
    face.sign = s.sign * ((j % 2) ? -1.0 : 1.0);
    for (auto& c : s.comp) face.comp.push_back(c.substCoords(sub));
    if (s.affine) {
      auto verts = *s.affine;
      verts.erase(verts.begin() + j);
      face.affine = std::move(verts);
    }
    out.append(std::move(face));
  }
  return out;
}

Chain boundary(const Chain& c) {
  Chain out;
  for (auto& s : c.simplices) {
    Chain b = boundary(s);
    for (auto& f : b.simplices) out.append(std::move(f));
  }
  return out;
}

StokesReport stokesCheck(const Form& a, const Chain& c, double tol) {
  StokesReport r;
  r.interior = integrateOverChain(a.d(), c, tol);
  r.boundaryVal = integrateOverChain(a, boundary(c), tol);
  return r;
}

namespace {

// Parametrization-independent signature of an oriented 1-face: integrals of
// dz_i, z_i dz_i, z_i^2 dz_i for each chart coordinate.
std::vector<std::complex<double>> faceMoments(const Simplex& face, int n,
                                              double tol) {
  std::vector<std::complex<double>> m;
  for (int i = 1; i <= n; ++i)
    for (int p = 0; p <= 2; ++p) {
      Form f = Form::term(n, ScalarField::coord(i).pow(p), {i}, {});
      m.push_back(integrateOverSimplex(f, face, tol));
    }
  return m;
}

}  // namespace

void checkCoherence(const Triangulation& t, double tol) {
  for (auto& e : t.incidence) {
    const Simplex& A = t.top.simplices.at(e.simplexA);
    const Simplex& B = t.top.simplices.at(e.simplexB);
    Chain bA = boundary(A), bB = boundary(B);
    Simplex fA = bA.simplices.at(e.faceA);
    Simplex fB = bB.simplices.at(e.faceB);
    if (e.transitionBtoA) {
      Simplex mapped;
      mapped.chart = A.chart;
      mapped.k = fB.k;
      mapped.sign = fB.sign;
      for (auto& comp : *e.transitionBtoA)
        mapped.comp.push_back(comp.substCoords(fB.comp));
      fB = std::move(mapped);
    }
    int n = (int)A.comp.size();
    auto mA = faceMoments(fA, n, 1e-10);
    auto mB = faceMoments(fB, n, 1e-10);
    double scale = 1.0, diff = 0.0;
    for (size_t i = 0; i < mA.size(); ++i) {
      scale = std::max({scale, std::abs(mA[i]), std::abs(mB[i])});
      diff = std::max(diff, std::abs(mA[i] + mB[i]));
    }
    if (diff > tol * scale)
      throw ExcalcError(
          "triangulation not coherently oriented: face pair (" +
          std::to_string(e.simplexA) + "," + std::to_string(e.faceA) + ")/(" +
          std::to_string(e.simplexB) + "," + std::to_string(e.faceB) +
          ") mismatch " + std::to_string(diff));
  }
}

std::complex<double> integrateFundamentalClass(
    const std::map<std::string, Form>& forms, const Triangulation& t,
    double tol, QuadStats* st) {
  checkCoherence(t);
  return integrateOverChain(forms, t.top, tol, st);
}

Chain linkOfPoint(std::string chart, std::complex<double> p, double radius,
                  int segments) {
  if (segments < 8) throw ExcalcError("linkOfPoint: need >= 8 segments");
  if (radius <= 0) throw ExcalcError("linkOfPoint: radius must be positive");
  Chain c;
  const double twoPi = 2.0 * std::numbers::pi;
  for (int j = 0; j < segments; ++j)
    c.append(Simplex::arc(chart, p, radius, twoPi * j / segments,
                          twoPi * (j + 1) / segments));
  return c;
}

Chain diskChain(std::string chart, std::complex<double> center, double radius,
                int sectors) {
  Chain c;
  const double twoPi = 2.0 * std::numbers::pi;
  for (int j = 0; j < sectors; ++j) {
    double a0 = twoPi * j / sectors, a1 = twoPi * (j + 1) / sectors;
    // parameter rectangle (r, phi): (0,a0) (R,a0) (R,a1) (0,a1)
    AffineReal R1{0.0, {radius, radius}}, A1{a0, {0.0, a1 - a0}};
    c.append(Simplex::polarTriangle(chart, center, R1, A1));
    AffineReal R2{0.0, {radius, 0.0}}, A2{a0, {a1 - a0, a1 - a0}};
    c.append(Simplex::polarTriangle(chart, center, R2, A2));
  }
  return c;
}

Chain sphereChain(int m, double radius, int refinement) {
  const double pi = std::numbers::pi;
  if (m == 1) return linkOfPoint("", 0.0, radius, std::max(8, 4 * refinement));
  if (m != 2) throw ExcalcError("sphereChain: only m in {1,2} supported");
  // S^3: z1 = R cos(psi) e^{i theta}, z2 = R sin(psi) e^{i phi},
  // psi in [0, pi/2], theta/phi in [0, 2pi]; boxes split into 6 Kuhn tets.
  int np = std::max(1, refinement), na = std::max(2, 2 * refinement);
  Chain c;
  auto cosF = [](const ScalarField& x) {
    ScalarField e = expF(ScalarField::i() * x);
    return (e + e.conj()) * ScalarField::constant(CNum(CRat(BigRat(1, 2))));
  };
  auto sinF = [](const ScalarField& x) {
    ScalarField e = expF(ScalarField::i() * x);
    return (e - e.conj()) *
           ScalarField::constant(CNum(CRat(0, BigRat(-1, 2))));
  };
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  // Kuhn tet signs, globally negated so the chain carries the boundary
  // orientation of the unit ball in C^2 (pinned by bmIndex(id) = +1).
  const double psign[6] = {-1, 1, 1, -1, -1, 1};
  for (int ip = 0; ip < np; ++ip)
    for (int it = 0; it < na; ++it)
      for (int iq = 0; iq < na; ++iq) {
        double p0 = (pi / 2) * ip / np, dp = (pi / 2) / np;
        double t0 = 2 * pi * it / na, dt = 2 * pi / na;
        double q0 = 2 * pi * iq / na, dq = 2 * pi / na;
        for (int pe = 0; pe < 6; ++pe) {
          // Kuhn tetrahedron vertices in the unit cube
          double v[4][3] = {{0, 0, 0}};
          for (int step = 0; step < 3; ++step) {
            for (int d = 0; d < 3; ++d) v[step + 1][d] = v[step][d];
            v[step + 1][perms[pe][step]] = 1.0;
          }
          // affine angles over the tet: x(t) = v0 + sum t_j (v_j - v0)
          auto ang = [&](int d, double base, double delta) {
            AffineReal a;
            a.c0 = base + delta * v[0][d];
            for (int j = 1; j <= 3; ++j)
              a.c.push_back(delta * (v[j][d] - v[0][d]));
            return affineField(a);
          };
          ScalarField psi = ang(0, p0, dp), th = ang(1, t0, dt),
                      ph = ang(2, q0, dq);
          Simplex s;
          s.chart = "";
          s.k = 3;
          s.sign = psign[pe];
          s.comp.push_back(rf(radius) * cosF(psi) *
                           expF(ScalarField::i() * th));
          s.comp.push_back(rf(radius) * sinF(psi) *
                           expF(ScalarField::i() * ph));
          c.append(std::move(s));
        }
      }
  return c;
}

}  // namespace excalc
