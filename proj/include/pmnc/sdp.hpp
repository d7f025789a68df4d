// Dense semidefinite programming over block-diagonal matrix variables.
//
// Two independent solvers share one problem type: a primal-dual interior
// point method (the production path) and a first-order splitting method
// (projection/averaging) kept deliberately simple so the two can
// cross-validate each other in tests.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include <pmnc/rational.hpp>

namespace pmnc {

/// Thrown when the interior-point iteration loses numerical control
/// (a scaling matrix stops being positive definite beyond what mild
/// regularization can absorb, or step sizes collapse).  Callers should
/// treat it as "no reliable answer", never as a feasibility verdict.
struct NumericalBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One entry of a symmetric coefficient matrix: `value` at (row, col) of
/// block `block` and, when row != col, implicitly also at (col, row).
/// Listing both triangles of an off-diagonal pair is an input error.
struct SymEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// One affine constraint  sum_b <A_b, X_b> + g . u = rhs  with the
/// symmetric matrices A_b given by a sparse entry list and the free-variable
/// row g by (index, coefficient) pairs.
struct SDPConstraint {
  std::vector<SymEntry> lhs;
  std::vector<std::pair<int, double>> free_lhs;
  double rhs = 0.0;
};

/// A linear semidefinite program in primal standard form with optional
/// scalar free variables:
///
///   maximize    sum_b <C_b, X_b>  +  f . u
///   subject to  sum_b <A_{i,b}, X_b>  +  g_i . u  =  rhs_i   (i = 1..m)
///               X_b  symmetric positive semidefinite,  u free.
///
/// <.,.> is the trace inner product.  All coefficient matrices are
/// symmetric and entered as sparse entry lists (see SymEntry).  Complex
/// Hermitian data must be embedded as real symmetric blocks by the caller.
struct SDPProblem {
  /// Side lengths of the semidefinite blocks X_b.
  std::vector<int> block_dims;
  /// Sparse symmetric objective coefficients, the C_b.
  std::vector<SymEntry> objective;
  /// Number of scalar free variables (entries of u).
  int n_free = 0;
  /// Objective coefficients f of the free variables; empty means zero.
  std::vector<double> free_objective;
  std::vector<SDPConstraint> constraints;
};

enum class SDPStatus {
  optimal,
  infeasible,
  unbounded,
  max_iterations,
};

/// One interior-point (or splitting) iterate summary, recorded so tests can
/// audit the run: conic pairing <X, Z> is nonnegative on every iterate and
/// the objective gap matches it up to the infeasibility of the iterate.
struct SDPIterate {
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double conic_pairing = 0.0;   // <X, Z>, always >= 0 for conic iterates
  double primal_residual = 0.0; // max_i |<A_i,X> + g_i.u - rhs_i|
  double dual_residual = 0.0;   // max Frobenius norm of A*(y) - Z - C blocks
};

struct SDPSolution {
  SDPStatus status = SDPStatus::max_iterations;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  /// Optimal blocks X_b.
  std::vector<Eigen::MatrixXd> X;
  /// Dual slack blocks Z_b = A*(y) - C_b (zero matrices for the splitting
  /// solver, which does not form an explicit dual).
  std::vector<Eigen::MatrixXd> Z;
  /// Constraint multipliers.
  std::vector<double> y;
  /// Values of the scalar free variables.
  std::vector<double> free_values;
  int iterations = 0;
  /// |primal - dual| / (1 + |primal| + |dual|) at the returned point.
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  /// Per-iteration audit trail.
  std::vector<SDPIterate> trace;
};

/// Structural validation: positive block dimensions, entry indices in
/// range, no duplicate (row, col) listings within one coefficient matrix,
/// free-variable indices below n_free, finite values.  Throws
/// ValidationError with the offending location.
void validate_sdp(const SDPProblem& p);

/// Solves the program with a primal-dual interior-point method (infeasible
/// start, predictor-corrector, block-dense linear algebra).  Deterministic:
/// no randomization anywhere.  At status `optimal` the duality gap and both
/// residuals are at most `tol` (relative to the data scale).  Statuses
/// `infeasible` / `unbounded` are certified only heuristically, by objective
/// divergence; `max_iterations` reports the best iterate reached.  Throws
/// NumericalBreakdown as documented above and ValidationError on malformed
/// input.
SDPSolution solve(const SDPProblem& p, double tol = 1e-8,
                  int max_iterations = 200);

/// Independent first-order reference solver (alternating projections onto
/// the affine set and the semidefinite cone with averaging and dual
/// updates).  Slow but with almost no shared machinery with solve(), so
/// agreement between the two is strong evidence of correctness.  Intended
/// for small cross-checking problems; `tol` bounds the splitting residuals,
/// giving roughly tol-accurate objectives.  No dual blocks are produced.
SDPSolution solve_reference(const SDPProblem& p, double tol = 1e-6,
                            long max_iterations = 400000);

/// Sparse text dump of a problem, one datum per line:
///   blocks d_1 ... d_B
///   nfree k
///   obj <block> <row> <col> <value>        (matrix entries)
///   objf <index> <value>                   (free-variable entries)
///   con <i> rhs <value>
///   con <i> mat <block> <row> <col> <value>
///   con <i> free <index> <value>
/// The format is self-delimiting and stable for diffing solver inputs.
std::string serialize_sdp(const SDPProblem& p);

}  // namespace pmnc
