// Exact rational linear programming via the simplex method with Bland's
// anti-cycling rule. Returns Farkas certificates for infeasible systems.
#pragma once

#include "pmnc/polytope.hpp"

namespace pmnc {

enum class LPStatus { Optimal, Infeasible, Unbounded };

enum class LPSense { Maximize, Minimize };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational value;  // optimal objective (valid when status == Optimal)
  RVec x;          // optimizer in the original variable space
  /// Infeasibility certificate: multipliers (y_A over inequality rows,
  /// then y_E over equality rows) with y_A >= 0 such that the combined
  /// constraint y_A^T A + y_E^T E is identically zero on feasible
  /// directions while y_A^T b + y_E^T f < 0.
  RVec farkas;
};

/// Optimizes objective^T v over {A v <= b, E v = f}; variables are free
/// (unrestricted in sign). Exact arithmetic throughout; Bland's rule
/// guarantees termination on degenerate systems.
LPResult solve_lp(const RVec& objective, const HPolytope& h,
                  LPSense sense = LPSense::Maximize);

/// Specialized solver for {B nu = rhs, nu >= 0} feasibility-or-optimize
/// problems (the common shape of convex-decomposition queries).
/// objective may be empty for a pure feasibility check (then value = 0).
LPResult solve_lp_nonneg(const RVec& objective, const RMat& B, const RVec& rhs,
                         LPSense sense = LPSense::Maximize);

}  // namespace pmnc
