#pragma once

#include <stdexcept>
#include <string>

namespace neurodyn::phase {

// Fate of an initialization (y0, z0) for a class-1 mode with input norm
// ||x||, following the four regions of the initialization diagram.
enum class Region { Frozen, Dies, ConvergesToZero, Solves };

// Set when the point lies on one of the asymptotes y = +-||x|| z within
// relative tolerance 1e-12.
enum class Boundary { None, OnAsymptotePositive, OnAsymptoteNegative };

struct PhaseRegion {
  Region kind;
  Boundary boundary = Boundary::None;
};

// Outcome observed by integrating the gated (y, z) flow.
enum class Fate { Frozen, Dies, ConvergesToZero, Solves, Undecided };

struct FateCheck {
  PhaseRegion region;
  Fate observed;
  bool agree;
};

// Thrown by solvers that require a Solves-region initialization.
struct RegionError : std::domain_error {
  using std::domain_error::domain_error;
};

const char* to_string(Region r);
const char* to_string(Fate f);

// Region of (y0, z0):
//   y0 <= 0            -> Frozen (the ReLU unit is inactive, no gradient)
//   z0 >= 0            -> Solves
//   z0 < 0: on y = -norm z -> ConvergesToZero; above -> Solves; below -> Dies
PhaseRegion classify(double y0, double z0, double norm);

// Integrates y' = norm^2 z sigma(-yz), z' = y sigma(-yz) with ReLU gating
// (all motion stops once y <= 0) and reports the observed fate:
//   logit > 10                      -> Solves
//   y reached 0 from a z0 < 0 start -> Dies
//   |logit| < 1e-3 and shrinking    -> ConvergesToZero (decided at horizon)
//   no weight motion                -> Frozen
//   anything else at the horizon    -> Undecided (reported, not thrown)
FateCheck verify_fate(double y0, double z0, double norm, double t_end,
                      double step);

}  // namespace neurodyn::phase
