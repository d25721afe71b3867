#pragma once
// Vector bundles via transition matrices, sections, connections (chart-wise
// matrices of 1-forms) and curvature.
#include "geometry.hpp"

namespace excalc {

// Dense matrix of scalar fields.
struct FieldMatrix {
  int rows = 0, cols = 0;
  std::vector<ScalarField> a;  // row-major

  FieldMatrix() = default;
  FieldMatrix(int r, int c) : rows(r), cols(c), a(r * c, ScalarField(0L)) {}
  static FieldMatrix identity(int e);

  ScalarField& at(int i, int j) { return a[i * cols + j]; }
  const ScalarField& at(int i, int j) const { return a[i * cols + j]; }

  FieldMatrix mul(const FieldMatrix& o) const;
  FieldMatrix substCoords(const std::vector<ScalarField>& sub) const;
  ScalarField det() const;         // Leibniz expansion, rows == cols <= 4
  FieldMatrix inverse() const;     // adjugate / det
  std::vector<std::vector<std::complex<double>>> eval(const EvalPoint& p)
      const;
};

// Dense matrix of forms, all entries of one degree on one chart.
struct FormMatrix {
  int rows = 0, cols = 0;
  std::vector<Form> a;

  FormMatrix() = default;
  FormMatrix(int r, int c, int n, int deg, std::string chart = "");
  static FormMatrix zeroConnection(int e, int n, std::string chart = "");

  Form& at(int i, int j) { return a[i * cols + j]; }
  const Form& at(int i, int j) const { return a[i * cols + j]; }
  int degree() const { return a.empty() ? 0 : a[0].degree(); }
  int n() const { return a.empty() ? 0 : a[0].n(); }

  FormMatrix operator+(const FormMatrix& o) const;
  FormMatrix operator-(const FormMatrix& o) const;
  FormMatrix scaled(const ScalarField& f) const;
  FormMatrix d() const;
  FormMatrix wedgeMul(const FormMatrix& o) const;  // matrix product, wedge
  FormMatrix leftMul(const FieldMatrix& g) const;   // g * this
  FormMatrix rightMul(const FieldMatrix& g) const;  // this * g
  FormMatrix pullback(const std::vector<ScalarField>& comp, int srcN,
                      std::string srcChart = "") const;
  FormMatrix substSigma(double value) const;
  Form trace() const;
};

// d applied entry-wise to a matrix of scalars, producing 1-forms.
FormMatrix dOf(const FieldMatrix& m, int n, std::string chart = "");

// Transition of a bundle from chart `from` (beta) to chart `to` (alpha):
// v_alpha = g v_beta, with g and the coordinate map written in beta coords.
struct BundleTransition {
  std::string from, to;
  std::vector<ScalarField> coordMap;  // alpha coords as fields of beta coords
  FieldMatrix g;
  Region overlap;  // in beta coordinates
};

struct BundleData {
  int rank = 0;
  int n = 1;  // chart dimension
  std::vector<std::string> charts;
  std::vector<BundleTransition> transitions;

  const BundleTransition* transition(const std::string& from,
                                     const std::string& to) const;
};

// r sections of rank e, stored per chart as r rows of e components.
struct SectionTuple {
  int rank = 0;  // e
  std::map<std::string, std::vector<std::vector<ScalarField>>> comps;
};

struct ConnectionData {
  int rank = 0;
  std::map<std::string, FormMatrix> theta;
  const FormMatrix& on(const std::string& chart) const;
};

struct CurvatureMatrix {
  int rank = 0;
  std::map<std::string, FormMatrix> K;
};

// K = d theta + theta ^ theta, chart-wise.
CurvatureMatrix curvature(const ConnectionData& c);

// theta = rho0 theta0 + rho1 theta1 where both exist, else the one defined.
ConnectionData glueConnections(const PartitionOfUnity& pu,
                               const ConnectionData& c0,
                               const ConnectionData& c1);

// Connection that annihilates the given square frame F (columns = frame
// sections in chart components): theta = -dF F^{-1}.  `region` is the
// chart region where the frame must be nonsingular (checked at samples).
ConnectionData trivialConnection(const BundleData& b,
                                 const SectionTuple& frame,
                                 const std::map<std::string, Region>& region,
                                 std::uint64_t seed = 0x5EED);

struct SingularPoint {
  std::string chart;
  std::complex<double> z;
  double residual;
};

// Zeros of the top-minor norm of the section tuple, located numerically on
// each chart region by grid sampling + Gauss-Newton refinement.
std::vector<SingularPoint> singularLocus(
    const SectionTuple& s, const std::map<std::string, Region>& region,
    int samples = 400, std::uint64_t seed = 0x5EED);

// ---- sampled invariant checks (throw ExcalcError on failure) --------------

// Evaluates every coefficient field of a form at a point and returns the
// max modulus (a parametrization-free size proxy used by sampled checks).
double formCoeffNorm(const Form& f, const EvalPoint& p);
double formMatrixNorm(const FormMatrix& m, const EvalPoint& p);

void checkBundle(const BundleData& b, int samples = 20,
                 std::uint64_t seed = 0x5EED, double tol = 1e-9);
void checkSections(const BundleData& b, const SectionTuple& s,
                   int samples = 20, std::uint64_t seed = 0x5EED,
                   double tol = 1e-9);
void checkConnection(const BundleData& b, const ConnectionData& c,
                     int samples = 20, std::uint64_t seed = 0x5EED,
                     double tol = 1e-8);
void checkCurvatureTransform(const BundleData& b, const CurvatureMatrix& K,
                             int samples = 20, std::uint64_t seed = 0x5EED,
                             double tol = 1e-8);

}  // namespace excalc
