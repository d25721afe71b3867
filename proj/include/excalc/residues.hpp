#pragma once
// Bochner-Martinelli indices, Camacho-Sad foliation residues, and the
// residue-theorem verification harness.
#include "chern.hpp"

namespace excalc {

// Holomorphic foliation germ a(h,y) h d/dh + b(h,y) d/dy on a two-variable
// chart (z1 = h, z2 = y) with invariant divisor {h = 0}.
struct FoliationGerm {
  ScalarField a, b;
};

// The Bochner-Martinelli kernel beta_m, a closed (2m-1)-form on C^m \ {0}:
//   beta_m = ((m-1)!/(2 pi i)^m) (-1)^{m(m-1)/2} / |z|^{2m}
//            sum_h conj(Theta_h) ^ Theta,
// Theta = dz_1^...^dz_m, Theta_h = (-1)^h z_h dz_1^...^(no dz_h)^...^dz_m.
Form bochnerMartinelliKernel(int m);

// Index of the map f : chart -> C^m over the sphere chain, computed as
// -int f*(beta_m) (the sign pins bmIndex(z) = +1 on the ccw unit circle;
// see the convention memo).  Throws if the integral is farther than 1e-3
// from an integer.
long bmIndex(const std::vector<ScalarField>& f, const Chain& sphere,
             double tol, QuadStats* st = nullptr);

// Camacho-Sad residue (1/2 pi i) oint_link a(0,y)/b(0,y) dy.
std::complex<double> camachoSadResidue(const FoliationGerm& g,
                                       const Chain& link, double tol,
                                       QuadStats* st = nullptr);

struct ResidueLocal {
  std::string chart;
  std::complex<double> center;       // honeycomb cell center
  std::vector<SingularPoint> points; // singular points inside the cell
  std::complex<double> value;
  double integerResidual = 0.0;
};

struct ResidueReport {
  std::vector<ResidueLocal> locals;
  std::complex<double> global{0.0, 0.0};
  double discrepancy = 0.0;
  QuadStats stats;
  bool pass = false;
};

// Data for a residue-theorem check: compact model (closed triangulation),
// bundle with section tuple framing it away from the singular set, smooth
// comparison connection c1, and one honeycomb disk per singular point.
struct ResidueTheoremInput {
  BundleData bundle;
  SectionTuple sections;
  std::map<std::string, Region> v0;  // where the section frame is regular
  ConnectionData c1;
  PartitionOfUnity pu;
  HoneycombSystem honeycomb;
  Triangulation tri;
  int q = 1;
};

// local_nu = int_{R1,nu} c^q(c1) - int_{dR1,nu} bott(c0,c1);
// global = int of c^q of the glued connection over the fundamental class;
// passes iff |global - sum local| < tol.
ResidueReport residueTheoremCheck(const ResidueTheoremInput& in, double tol);

}  // namespace excalc
