#pragma once
// Bloom-Herrera extendability obstruction: exact truncated power series in
// one variable and membership in the subalgebra generated by pullbacks.
#include <map>
#include <vector>

#include "form.hpp"

namespace excalc {

// sum_{0 <= k <= N} c_k z^k with exact Gaussian-rational coefficients;
// only nonzero coefficients are stored.
struct TruncatedSeries {
  int N = 0;
  std::map<long, CRat> c;

  static TruncatedSeries zero(int N) { return {N, {}}; }
  CRat coeff(long k) const;
  void set(long k, CRat v);  // drops exact zeros and degrees beyond N
  bool isZero() const { return c.empty(); }
  long order() const;  // lowest nonzero degree; -1 for the zero series
  long maxDegree() const;  // highest nonzero degree; -1 for the zero series

  TruncatedSeries add(const TruncatedSeries& o) const;  // N = min
  TruncatedSeries mul(const TruncatedSeries& o) const;  // N = min
  TruncatedSeries scaled(const CRat& s) const;
  TruncatedSeries powi(long k) const;  // k >= 0
  TruncatedSeries truncated(int N) const;
  bool sameAs(const TruncatedSeries& o) const;  // coefficient-wise
  std::string str() const;
};

// Exact Laurent expansion of a polynomial (or monomial-inverse) field in
// z1..znvars: map from exponent vectors to coefficients.  Throws on
// conjugates, sigma, exp/bump, non-exact constants, and on negative powers
// of anything but a single monomial.
std::map<std::vector<long>, CRat> laurentCoeffs(const ScalarField& f,
                                                int nvars);

// One-variable polynomial field as a series truncated at N (negative
// exponents rejected).
TruncatedSeries seriesOfField(const ScalarField& f, int N);

// The series of u^a v^b truncated at N, where (u, v) are the components of
// the parametrization map f (each a series in z).
TruncatedSeries pullbackSeries(long a, long b,
                               const std::vector<TruncatedSeries>& f, int N);

// Coefficient-wise antiderivative of a one-variable 1-form with polynomial
// (Laurent) coefficient, constant term 0; truncation degree is one more
// than the input's top degree.  Throws if a z^-1 term (logarithm) arises.
TruncatedSeries primitive1D(const Form& a);

struct CertTerm {
  long a = 0, b = 0;
  CRat coeff;
};

struct MembershipResult {
  bool feasible = false;
  // INFEASIBLE: lowest degree at which the linear system is inconsistent.
  long obstructionDegree = -1;
  // FEASIBLE: h = sum coeff * u^a v^b + const mod z^{N+1}.
  std::vector<CertTerm> certificate;
  // h minus the certificate reconstruction, degree-0 term dropped;
  // exactly the zero series whenever feasible.
  TruncatedSeries residual;
};

// Exact rational feasibility of h = sum_{(a,b) != (0,0)} c_ab u^a v^b up to
// an additive constant, mod z^{N+1}.  The constant is absorbed by excluding
// degree 0 from the matching constraints.  Nonzero generators must vanish
// at 0.  The obstruction degree is found by sweeping the constraint degree
// upward, so FEASIBLE at N implies FEASIBLE at every smaller truncation.
MembershipResult subalgebraMembership(const TruncatedSeries& h,
                                      const std::vector<TruncatedSeries>& f,
                                      int N);

struct ObstructionReport {
  int N = 0;
  TruncatedSeries h;  // primitive of the pulled-back form, mod z^{N+1}
  MembershipResult membership;
  bool obstruction = false;  // infeasible => the class [omega] is nonzero
};

// omega (a holomorphic 1-form on C^2 with polynomial coefficients) pulled
// back through the polynomial map z -> (fmap[0](z), fmap[1](z)), integrated
// by primitive1D, then tested for membership mod z^{N+1}.
ObstructionReport bloomHerreraPipeline(const Form& omega,
                                       const std::vector<ScalarField>& fmap,
                                       int N);

// The paper's example: omega = z1 dz2 on X = image of z -> (z^5, z^6+z^7).
ObstructionReport bloomHerreraCertificate(int N);

}  // namespace excalc
