#pragma once
// Clipping of parametrized simplices against honeycomb disks.
#include "mesh.hpp"

namespace excalc {

struct ClipError : ExcalcError {
  using ExcalcError::ExcalcError;
};

// Decomposition of a simplex relative to the disk |z - center| <= r:
//   inside  - chain covering simplex ∩ disk (as signed parametrized pieces)
//   outside - chain with integral = simplex - inside (signed)
//   interface - for 2-simplices: arcs of the circle inside the simplex,
//               oriented as the boundary of the inside region; for
//               1-simplices: signed points (+1 where the curve exits the
//               disk, -1 where it enters).
struct ClipResult {
  Chain inside, outside, interface;
};

ClipResult clipSimplexAgainstDisk(const Simplex& s,
                                  std::complex<double> center, double r,
                                  double tol = 1e-12);

}  // namespace excalc
