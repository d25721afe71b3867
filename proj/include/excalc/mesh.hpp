#pragma once
// Parametrized simplices, chains, adaptive quadrature, boundary operator,
// Stokes checks, and fundamental-class integrals.
#include <array>
#include <functional>
#include <optional>

#include "form.hpp"

namespace excalc {

struct QuadratureError : ExcalcError {
  using ExcalcError::ExcalcError;
};

// Affine function of the simplex parameters t_1..t_k (real).
struct AffineReal {
  double c0 = 0.0;
  std::vector<double> c;  // length k
  double operator()(const std::vector<double>& t) const {
    double v = c0;
    for (size_t i = 0; i < c.size(); ++i) v += c[i] * t[i];
    return v;
  }
};

// Metadata marking a 2-simplex of the "polar" kind: point = center +
// R(t) e^{i A(t)} with R, A affine in the parameters.  Used for exact
// parameter-space clipping against concentric circles.
struct PolarInfo {
  std::complex<double> center;
  AffineReal R, A;
};

struct Simplex {
  std::string chart;
  int k = 0;                      // parameter dimension
  std::vector<ScalarField> comp;  // chart components in params z1..zk (real)
  double sign = 1.0;
  std::optional<std::vector<std::vector<std::complex<double>>>> affine;
  std::optional<PolarInfo> polar;

  static Simplex affineSimplex(
      std::string chart, std::vector<std::vector<std::complex<double>>> verts,
      double sign = 1.0);
  // Arc t in [0,1] -> center + r e^{i(a0 + (a1-a0) t)}.
  static Simplex arc(std::string chart, std::complex<double> center, double r,
                     double a0, double a1, double sign = 1.0);
  // Point (0-simplex).
  static Simplex point(std::string chart, std::vector<std::complex<double>> p,
                       double sign = 1.0);
  // Polar triangle: image of the standard 2-simplex under
  // t -> center + R(t) e^{i A(t)}.
  static Simplex polarTriangle(std::string chart, std::complex<double> center,
                               AffineReal R, AffineReal A, double sign = 1.0);
  // Cone from apex over an arc of the circle (center, r), angles a0..a1.
  static Simplex coneOverArc(std::string chart, std::complex<double> apex,
                             std::complex<double> center, double r, double a0,
                             double a1, double sign = 1.0);

  Simplex reversed() const {
    Simplex s = *this;
    s.sign = -s.sign;
    return s;
  }
};

struct Chain {
  std::vector<Simplex> simplices;
  int dim() const { return simplices.empty() ? -1 : simplices[0].k; }
  void append(Simplex s) { simplices.push_back(std::move(s)); }
  Chain reversed() const;
};

struct QuadStats {
  long cells = 0;
  double errorEstimate = 0.0;
};

std::complex<double> integrateOverSimplex(const Form& a, const Simplex& s,
                                          double tol, QuadStats* st = nullptr);
std::complex<double> integrateOverChain(const Form& a, const Chain& c,
                                        double tol, QuadStats* st = nullptr);
// Chart-wise form: picks the component matching each simplex's chart.
std::complex<double> integrateOverChain(
    const std::map<std::string, Form>& forms, const Chain& c, double tol,
    QuadStats* st = nullptr);

Chain boundary(const Chain& c);
Chain boundary(const Simplex& s);

struct StokesReport {
  std::complex<double> interior, boundaryVal;
  double difference() const { return std::abs(interior - boundaryVal); }
};
StokesReport stokesCheck(const Form& a, const Chain& c, double tol);

struct IncidenceEntry {
  int simplexA, faceA, simplexB, faceB;
  // optional transition mapping chart of B into chart of A
  std::optional<std::vector<ScalarField>> transitionBtoA;
};

struct Triangulation {
  Chain top;
  std::vector<IncidenceEntry> incidence;
};

// Verifies each incidence pair: induced face orientations are opposite
// (checked via parametrization-independent moment integrals).
void checkCoherence(const Triangulation& t, double tol = 1e-7);

std::complex<double> integrateFundamentalClass(
    const std::map<std::string, Form>& forms, const Triangulation& t,
    double tol, QuadStats* st = nullptr);

// Build the circle |y - p| = radius as a closed ccw chain of arcs.
Chain linkOfPoint(std::string chart, std::complex<double> p, double radius,
                  int segments);

// Closed polar disk of the given radius around center, as polar triangles.
Chain diskChain(std::string chart, std::complex<double> center, double radius,
                int sectors);

// Discretized sphere S^{2m-1} of given radius (m = 1: circle; m = 2: S^3 via
// the Hopf-style parametrization), oriented per the project convention.
Chain sphereChain(int m, double radius, int refinement);

}  // namespace excalc
