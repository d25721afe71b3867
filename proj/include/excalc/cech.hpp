#pragma once
// Two-set Cech-de Rham complex: D, restriction, collation, and honeycomb
// integration of cocycles.
#include "geometry.hpp"

namespace excalc {

// A global form given chart-wise.
struct SceneForm {
  std::map<std::string, Form> comp;
  const Form& on(const std::string& chart) const;
};

// Cochain of the two-set covering {V0, V1}: components of total degree r,
// with the overlap component one degree lower.
struct CechCochain {
  int deg = 0;  // r
  std::map<std::string, Form> w0, w1, w01;

  static CechCochain zero(int deg, int n,
                          const std::vector<std::string>& charts);
  const Form& part(const std::map<std::string, Form>& m,
                   const std::string& chart) const;
};

// D(c) = (d w0, d w1, w1|01 - w0|01 - d w01); c is a cocycle iff this is 0.
CechCochain applyD(const CechCochain& c);

// P(omega) = (omega|V0, omega|V1, 0).
CechCochain restrictGlobal(const SceneForm& w);

// phi(c) = rho0 w0 + rho1 w1 - d rho0 ^ w01.
SceneForm collate(const CechCochain& c, const PartitionOfUnity& pu);

// Integral of the cochain against the chain relative to the honeycomb:
//   int_{chain ∩ R0} w0 + int_{chain ∩ R1} w1 - int_{chain ∩ dR1} w01,
// the interface dR1 carrying the boundary orientation of the singular cells.
std::complex<double> honeycombIntegrate(const CechCochain& c,
                                        const Chain& chain,
                                        const HoneycombSystem& h, double tol,
                                        QuadStats* st = nullptr);

}  // namespace excalc
