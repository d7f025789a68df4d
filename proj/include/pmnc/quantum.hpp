// Quantum strategies for prepare-and-measure scenarios: validation and
// repair, the optimal-binary-measurement rule, see-saw lower bounds on the
// maximal quantum value, white-noise robustness, deterministic-epistemic
// bounds, a noncontextual-behavior sampler backed by explicit ontological
// models, and a plain-text strategy file format.
#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include <pmnc/pipeline.hpp>
#include <pmnc/scenario.hpp>

namespace pmnc {

/// Thrown when a strategy violates the Hermiticity / positivity /
/// normalization / equivalence invariants beyond the stated tolerance.
struct InvalidStrategy : ValidationError {
  using ValidationError::ValidationError;
};

/// Thrown by robustness() when the strategy does not beat the bound.
struct NoViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by deterministic_ontic_bound() when no deterministic assignment
/// of preparations to ontic states satisfies the scenario's equivalences.
struct NoFeasibleModel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// States and effects on a d-dimensional Hilbert space: states[x] are the
/// density matrices, effects[y*n_z + z] the POVM elements M_{z|y}.
struct QuantumStrategy {
  int d = 0;
  std::vector<Eigen::MatrixXcd> states;
  std::vector<Eigen::MatrixXcd> effects;
};

/// Checks shape against the scenario and then, within tol: Hermiticity,
/// positive semidefiniteness (min eigenvalue >= -tol), unit state traces,
/// POVM completeness per setting, and the scenario's preparation and
/// measurement equivalences.  Throws InvalidStrategy naming the failure.
/// The default tol suits computed strategies; matrices transcribed from
/// 4-decimal listings need tol around 1e-3.
void validate_strategy(const QuantumStrategy& st, const Scenario& s,
                       double tol = 1e-9);

/// Repairs a nearly valid strategy (e.g. one transcribed from a rounded
/// listing): states are clamped to the PSD cone and trace-renormalized;
/// effects are clamped and conjugated by the inverse square root of their
/// setting sums so each POVM is exactly complete.  Equivalences are not
/// re-enforced; they stay as accurate as the input.
QuantumStrategy reproject_strategy(const QuantumStrategy& st,
                                   const Scenario& s);

/// Dense coefficient table over the full coordinate set, entry
/// (y*n_x + x)*n_z + z.  Accepts an inequality over the full coordinates
/// (copied) or over the independent coordinates of the basis (scattered;
/// faithful on every behavior satisfying the scenario's equivalences).
std::vector<double> coefficient_table(const Inequality& q,
                                      const ReducedBasis& basis);

/// Sum_{z,x,y} c(z,x,y) Re Tr(rho_x M_{z|y}).  The strategy is validated
/// against the scenario first (InvalidStrategy beyond tol).
double evaluate(const QuantumStrategy& st, const Scenario& s,
                const Inequality& ineq, double tol = 1e-9);

/// Best POVMs for fixed states when every measurement is binary and the
/// scenario has no measurement equivalences: with the inequality written
/// over z = 0 only, M_{0|y} is the projector onto the strictly positive
/// eigenspace of A_y = sum_x c(0,x,y) rho_x and M_{1|y} its complement.
/// The coefficient table must vanish on z = 1 (ValidationError otherwise).
std::vector<Eigen::MatrixXcd> optimal_measurements_binary(
    const std::vector<Eigen::MatrixXcd>& states,
    const std::vector<double>& coeffs);
std::vector<Eigen::MatrixXcd> optimal_measurements_binary(
    const std::vector<Eigen::MatrixXcd>& states, const Inequality& ineq,
    const ReducedBasis& basis);

struct SeesawConfig {
  int restarts = 50;
  int max_alternations = 200;
  double delta = 1e-9;
  unsigned long long seed = 1;
  /// Worker threads for the restart loop; values < 1 mean "all cores".
  int threads = 0;
};

struct SeesawResult {
  /// Best value found (a lower bound on the maximal quantum value at d).
  double value = 0.0;
  QuantumStrategy strategy;
  /// Objective after every alternation, one sequence per restart; each
  /// sequence is non-decreasing up to solver tolerance.
  std::vector<std::vector<double>> traces;
};

/// Alternating lower bound on the maximal quantum value in dimension d:
/// per restart, random independent states (normalized Wishart), dependent
/// states completed through the preparation equivalences and the whole
/// family mixed toward 1/d until positive; then alternately optimal
/// measurements for fixed states (closed form when every measurement is
/// binary and no measurement equivalences exist, otherwise a semidefinite
/// program) and optimal states for fixed measurements (semidefinite
/// program), until the gain drops below cfg.delta.  Deterministic for a
/// fixed seed and restart count regardless of thread scheduling.  Solver
/// failures carry the restart index.
SeesawResult seesaw(const Scenario& s, const Inequality& ineq, int d,
                    const SeesawConfig& cfg = {});

struct RobustnessResult {
  /// Critical white-noise weight: mixing every state with 1/d at this
  /// weight brings the value down to the given bound.
  double omega = 0.0;
  /// Value of the inequality on the maximally mixed state,
  /// (1/d) sum_{z,x,y} c(z,x,y) Tr(M_{z|y}).
  double gamma = 0.0;
  /// Audit: the value re-evaluated at noise weight omega (should equal the
  /// bound to working precision).
  double noisy_value = 0.0;
};

/// omega = (Q - C)/(Q - gamma) where Q = evaluate(st, ineq) and C is the
/// bound to be beaten.  Throws NoViolation when Q <= C.
RobustnessResult robustness(const QuantumStrategy& st, const Inequality& ineq,
                            const ReducedBasis& basis, double bound,
                            double tol = 1e-9);

/// A finite-Lambda ontological model: mu(row lambda, column x) are the
/// epistemic states, responses(row lambda, column y*n_z + z) the response
/// functions.  All rational so the noncontextuality equations can be
/// checked exactly.
struct OntologicalModel {
  RMat mu;
  RMat responses;
};

/// Exact validation: nonnegativity, sum_lambda mu(lambda|x) = 1, response
/// normalization per setting, and the scenario's preparation equivalences
/// on mu and measurement equivalences on the responses, all as identities
/// of rationals.  Throws ValidationError.
void validate_model(const OntologicalModel& m, const Scenario& s);

/// The behavior p(z|x,y) = sum_lambda mu(lambda|x) xi(z|lambda,y).
Behavior model_behavior(const OntologicalModel& m, const Scenario& s);

/// Maximum of the inequality over ontological models whose epistemic
/// states are deterministic (mu(lambda|x) in {0,1}) and satisfy the
/// preparation equivalences, with responses optimized per ontic state over
/// the measurement polytope (the optimum sits at a vertex).  Brute force
/// over all n_lambda^{n_x} assignments; n_lambda < 1 means n_x.  Exact.
/// Throws NoFeasibleModel when no assignment satisfies the equivalences.
Rational deterministic_ontic_bound(const Scenario& s, const Inequality& ineq,
                                   int n_lambda = -1);

/// A random noncontextual behavior together with an ontological model that
/// certifies it: epistemic states are built from rescaled preparation
/// vertices with exact random convex weights solving the normalization,
/// responses are random convex mixtures of measurement vertices per ontic
/// state.  The model validates exactly and the behavior satisfies every
/// noncontextuality inequality of the scenario.
std::pair<Behavior, OntologicalModel> sample_nc_behavior(const Scenario& s,
                                                         std::mt19937_64& rng);

/// Parses the strategy file format: a "d <int>" header, then blocks
/// "state <x>" or "effect <y> <z>", each followed by d rows of d complex
/// entries "a+bi" (the imaginary part may be 0 or omitted).  Blocks may
/// come in any order but must cover states 0..n_x-1 and effects for every
/// (y, z) exactly once; n_x and n_y*n_z are inferred from the labels.
/// Throws ParseError on malformed input.
QuantumStrategy parse_strategy(const std::string& text);

/// Inverse of parse_strategy; entries are printed as "a+bi" at full
/// precision.
std::string serialize_strategy(const QuantumStrategy& st, int n_z);

}  // namespace pmnc
