#pragma once
// Chern forms from curvature and Bott difference forms via the family
// connection and fibre integration over the interval parameter.
#include "bundle.hpp"
#include "cech.hpp"

namespace excalc {

struct ChernForm {
  int q = 0;
  std::map<std::string, Form> comp;
  const Form& on(const std::string& chart) const;
};

struct DifferenceForm {
  int q = 0;
  std::map<std::string, Form> comp;
  const Form& on(const std::string& chart) const;
};

// Degree-2q part of det(I + (i/2pi) K), computed by principal-minor
// expansion of the curvature matrix.
ChernForm chernForm(const ConnectionData& c, int q);

// Chern form of a curvature matrix directly (used for family connections).
Form chernFormOf(const FormMatrix& K, int q);

// Bott difference form: family theta(s) = (1-s) theta0 + s theta1 over
// chart x [0,1], dsigma-component of c^q of the family curvature, fibre
// integration by 16-point Gauss-Legendre (exact for the polynomial degree).
DifferenceForm bottDifference(const ConnectionData& c0,
                              const ConnectionData& c1, int q);

// Localized Chern cocycle (0, c^q(conn1), bott(conn0, conn1)) where conn0
// is the s-trivial connection on the region v0.
CechCochain localizedChernCocycle(const BundleData& b, const SectionTuple& s,
                                  const std::map<std::string, Region>& v0,
                                  const ConnectionData& c1, int q);

// Gauss-Legendre nodes/weights on [0,1] (computed once per order).
const std::pair<std::vector<double>, std::vector<double>>& gaussLegendre01(
    int order);

}  // namespace excalc
