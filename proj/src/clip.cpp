#include "excalc/clip.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace excalc {

namespace {

using cplx = std::complex<double>;

cplx evalAt(const Simplex& s, const std::vector<double>& t) {
  EvalPoint p;
  p.z.reserve(t.size());
  for (double x : t) p.z.push_back({x, 0.0});
  return s.comp[0].eval(p);
}

// signed distance proxy to the circle at a chart point
double gOf(cplx v, cplx center, double r) { return std::abs(v - center) - r; }

// Faces of the inside chain that lie on the circle carry the interface, with
// the boundary orientation induced from the inside pieces.
Chain circleFaces(const Chain& inside, cplx center, double r) {
  Chain out;
  double tolC = 1e-7 * std::max(1.0, r);
  for (auto& f : boundary(inside).simplices) {
    bool on = true;
    for (double t : {0.1, 0.35, 0.65, 0.9})
      if (std::abs(gOf(evalAt(f, {t}), center, r)) > tolC) {
        on = false;
        break;
      }
    if (on) out.append(f);
  }
  return out;
}

// ---- polar-concentric 2-simplices: exact clip in parameter space ----------

struct P2 {
  double x, y;
};

double affVal(const AffineReal& a, P2 p) {
  return a.c0 + a.c[0] * p.x + a.c[1] * p.y;
}

// Sutherland-Hodgman against the half-plane keep * g(p) <= 0, where
// g(p) = R(p) - r is affine in the parameters.
std::vector<P2> clipPoly(const std::vector<P2>& poly, const AffineReal& R,
                         double r, double keep) {
  std::vector<P2> out;
  size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    P2 P = poly[i], Q = poly[(i + 1) % m];
    double gP = keep * (affVal(R, P) - r), gQ = keep * (affVal(R, Q) - r);
    if (gP <= 0) out.push_back(P);
    if ((gP < 0 && gQ > 0) || (gP > 0 && gQ < 0)) {
      double t = gP / (gP - gQ);
      out.push_back({P.x + t * (Q.x - P.x), P.y + t * (Q.y - P.y)});
    }
  }
  return out;
}

void fanPolar(const Simplex& s, const std::vector<P2>& poly, Chain& dest) {
  const PolarInfo& pi = *s.polar;
  for (size_t i = 1; i + 1 < poly.size(); ++i) {
    P2 p0 = poly[0], p1 = poly[i], p2 = poly[i + 1];
    double det = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    if (std::abs(det) < 1e-14) continue;
    AffineReal R{affVal(pi.R, p0),
                 {affVal(pi.R, p1) - affVal(pi.R, p0),
                  affVal(pi.R, p2) - affVal(pi.R, p0)}};
    AffineReal A{affVal(pi.A, p0),
                 {affVal(pi.A, p1) - affVal(pi.A, p0),
                  affVal(pi.A, p2) - affVal(pi.A, p0)}};
    dest.append(Simplex::polarTriangle(s.chart, pi.center, R, A, s.sign));
  }
}

ClipResult clipPolarConcentric(const Simplex& s, double r, double tolV) {
  ClipResult res;
  const AffineReal& R = s.polar->R;
  std::vector<P2> tri = {{0, 0}, {1, 0}, {0, 1}};
  double gmin = 1e300, gmax = -1e300;
  for (P2 p : tri) {
    double g = affVal(R, p) - r;
    gmin = std::min(gmin, g);
    gmax = std::max(gmax, g);
  }
  if (gmax <= tolV) {
    res.inside.append(s);
  } else if (gmin >= -tolV) {
    res.outside.append(s);
  } else {
    fanPolar(s, clipPoly(tri, R, r, +1.0), res.inside);
    fanPolar(s, clipPoly(tri, R, r, -1.0), res.outside);
  }
  res.interface = circleFaces(res.inside, s.polar->center, r);
  return res;
}

// ---- affine 2-simplices: boundary loop + cone decomposition ---------------

double cross2(cplx a, cplx b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

bool pointInTriangle(cplx p, cplx a, cplx b, cplx c) {
  double d1 = cross2(b - a, p - a);
  double d2 = cross2(c - b, p - b);
  double d3 = cross2(a - c, p - c);
  return d1 > 0 && d2 > 0 && d3 > 0;  // verts assumed ccw
}

struct Crossing {
  cplx pt;
  double angle;
  bool exit;  // true if the walk leaves the disk here
};

ClipResult clipAffineTriangle(const Simplex& s, cplx center, double r,
                              double tolV) {
  ClipResult res;
  cplx a0 = (*s.affine)[0][0], a1 = (*s.affine)[1][0], a2 = (*s.affine)[2][0];
  double g0 = gOf(a0, center, r), g1 = gOf(a1, center, r),
         g2 = gOf(a2, center, r);
  double gmax = std::max({g0, g1, g2}), gmin = std::min({g0, g1, g2});
  if (gmax <= tolV) {
    res.inside.append(s);
    res.interface = circleFaces(res.inside, center, r);
    return res;
  }

  // work with a ccw copy; a reversed map reverses the region orientation
  double orient = cross2(a1 - a0, a2 - a0);
  double sgn = s.sign;
  if (orient < 0) {
    std::swap(a1, a2);
    std::swap(g1, g2);
    sgn = -sgn;
  }
  const double twoPi = 2.0 * std::numbers::pi;

  std::vector<std::pair<cplx, cplx>> segs;  // inside edge sub-segments
  std::vector<Crossing> crossings;
  cplx verts[3] = {a0, a1, a2};
  for (int e = 0; e < 3; ++e) {
    cplx p = verts[e], q = verts[(e + 1) % 3], v = q - p;
    // |p + t v - center|^2 = r^2
    double A = std::norm(v);
    double B = 2.0 * ((v * std::conj(p - center)).real());
    double C = std::norm(p - center) - r * r;
    std::vector<double> ts = {0.0};
    if (A > 0) {
      double disc = B * B - 4 * A * C;
      if (disc > 0) {
        double sq = std::sqrt(disc);
        for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)})
          if (t > 1e-12 && t < 1.0 - 1e-12) ts.push_back(t);
      }
    }
    ts.push_back(1.0);
    std::sort(ts.begin(), ts.end());
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
      double tm = 0.5 * (ts[i] + ts[i + 1]);
      bool in = gOf(p + tm * v, center, r) <= 0;
      if (in) segs.emplace_back(p + ts[i] * v, p + ts[i + 1] * v);
      if (i + 2 < ts.size()) {
        double tn = 0.5 * (ts[i + 1] + ts[i + 2]);
        bool inNext = gOf(p + tn * v, center, r) <= 0;
        if (in != inNext) {
          cplx x = p + ts[i + 1] * v;
          crossings.push_back({x, std::arg(x - center), in});
        }
      }
    }
  }

  if (crossings.empty()) {
    if (segs.empty()) {
      // either disjoint or the disk lies entirely inside the triangle
      if (pointInTriangle(center, a0, a1, a2)) {
        for (int j = 0; j < 8; ++j)
          res.inside.append(Simplex::coneOverArc(s.chart, center, center, r,
                                                 twoPi * j / 8,
                                                 twoPi * (j + 1) / 8, sgn));
        res.outside.append(s);
        for (auto& p : res.inside.reversed().simplices) res.outside.append(p);
        res.interface = circleFaces(res.inside, center, r);
      } else {
        res.outside.append(s);
      }
      return res;
    }
    throw ClipError("clip: affine triangle intersects the circle tangentially");
  }

  // cone decomposition of the inside region from the disk center
  for (auto& [x, y] : segs)
    if (std::abs(cross2(x - center, y - center)) > 1e-14)
      res.inside.append(
          Simplex::affineSimplex(s.chart, {{center}, {x}, {y}}, sgn));
  // circle arcs of the inside boundary: ccw from each exit to the nearest
  // enter crossing
  size_t nExit = 0;
  for (auto& c : crossings) nExit += c.exit ? 1 : 0;
  if (2 * nExit != crossings.size())
    throw ClipError("clip: unbalanced circle crossings on triangle boundary");
  for (auto& cx : crossings) {
    if (!cx.exit) continue;
    double best = twoPi + 1.0;
    for (auto& cy : crossings) {
      if (cy.exit) continue;
      double d = std::fmod(cy.angle - cx.angle + 2 * twoPi, twoPi);
      if (d < 1e-12) d = twoPi;
      best = std::min(best, d);
    }
    if (best > twoPi) throw ClipError("clip: no matching enter crossing");
    res.inside.append(Simplex::coneOverArc(s.chart, center, center, r,
                                           cx.angle, cx.angle + best, sgn));
  }
  res.outside.append(s);
  for (auto& p : res.inside.reversed().simplices) res.outside.append(p);
  res.interface = circleFaces(res.inside, center, r);
  return res;
}

// ---- 1-simplices: crossings by sampling + bisection -----------------------

ClipResult clipCurve(const Simplex& s, cplx center, double r, double tolV) {
  ClipResult res;
  auto f = [&](double t) { return gOf(evalAt(s, {t}), center, r); };
  const int N = 128;
  const double zeroTol = 1e-13 * std::max(1.0, r);
  std::vector<double> cuts = {0.0};
  // samples landing exactly on the circle are roots themselves; sign changes
  // between the last clearly-nonzero samples are refined by bisection
  double prevT = 0.0, prevV = f(0.0);
  bool havePrev = std::abs(prevV) > zeroTol;
  for (int i = 1; i <= N; ++i) {
    double t = (double)i / N, cur = f(t);
    if (std::abs(cur) <= zeroTol) {
      if (t > 1e-10 && t < 1.0 - 1e-10) cuts.push_back(t);
      continue;
    }
    if (havePrev && (prevV < 0) != (cur < 0)) {
      double lo = prevT, hi = t, flo = prevV;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi), fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      double root = 0.5 * (lo + hi);
      if (root > 1e-10 && root < 1.0 - 1e-10) cuts.push_back(root);
    }
    prevT = t;
    prevV = cur;
    havePrev = true;
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-9; }),
             cuts.end());
  if (cuts.back() < 1.0 - 1e-9) cuts.push_back(1.0);
  else cuts.back() = 1.0;

  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double t0 = cuts[i], t1 = cuts[i + 1];
    double gm = f(0.5 * (t0 + t1));
    bool in = gm <= 0;
    Simplex piece = s;
    if (t0 != 0.0 || t1 != 1.0) {
      ScalarField sub = ScalarField::constant(CNum::approx({t0, 0.0})) +
                        ScalarField::constant(CNum::approx({t1 - t0, 0.0})) *
                            ScalarField::coord(1);
      piece.comp.clear();
      for (auto& c : s.comp) piece.comp.push_back(c.substCoords({sub}));
      piece.affine.reset();
    }
    (in ? res.inside : res.outside).append(std::move(piece));
    if (i + 2 < cuts.size()) {
      // crossing at t1: +1 where the curve exits the disk, -1 where it enters
      bool inNext = f(0.5 * (t1 + cuts[i + 2])) <= 0;
      if (in != inNext) {
        std::vector<cplx> pt = {evalAt(s, {t1})};
        res.interface.append(
            Simplex::point(s.chart, pt, (in ? 1.0 : -1.0) * s.sign));
      }
    }
  }
  (void)tolV;
  return res;
}

}  // namespace

ClipResult clipSimplexAgainstDisk(const Simplex& s, cplx center, double r,
                                  double tol) {
  if (s.comp.size() != 1)
    throw ClipError("clip: only 1-dimensional charts are supported");
  double tolV = tol * std::max(1.0, r);
  ClipResult res;
  if (s.k == 0) {
    (gOf(evalAt(s, {}), center, r) <= 0 ? res.inside : res.outside).append(s);
    return res;
  }
  if (s.k == 1) return clipCurve(s, center, r, tolV);
  if (s.k == 2 && s.polar &&
      std::abs(s.polar->center - center) < 1e-12 * std::max(1.0, r))
    return clipPolarConcentric(s, r, tolV);
  if (s.k == 2 && s.affine) return clipAffineTriangle(s, center, r, tolV);

  // generic simplices: classify by interior sampling; a genuine crossing is
  // not supported for this parametrization kind
  double gmin = 1e300, gmax = -1e300;
  std::function<void(std::vector<double>&, int)> rec =
      [&](std::vector<double>& t, int depth) {
        if (depth == s.k) {
          double rem = 1.0;
          std::vector<double> tv(s.k);
          for (int j = 0; j < s.k; ++j) {
            tv[j] = t[j] * rem;
            rem -= tv[j];
          }
          double g = gOf(evalAt(s, tv), center, r);
          gmin = std::min(gmin, g);
          gmax = std::max(gmax, g);
          return;
        }
        for (double x : {0.05, 0.25, 0.5, 0.75, 0.95}) {
          t.push_back(x);
          rec(t, depth + 1);
          t.pop_back();
        }
      };
  std::vector<double> t;
  rec(t, 0);
  if (gmax <= tolV) {
    res.inside.append(s);
    res.interface = circleFaces(res.inside, center, r);
  } else if (gmin >= -tolV) {
    res.outside.append(s);
  } else {
    throw ClipError(
        "clip: simplex crosses the circle but is neither polar-concentric, "
        "affine, nor a curve");
  }
  return res;
}

}  // namespace excalc
