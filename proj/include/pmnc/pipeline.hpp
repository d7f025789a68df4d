#pragma once
// Facet pipeline for prepare-and-measure noncontextuality analysis.
//
// Builds the preparation, measurement, and product polytopes of a scenario,
// enumerates the facets of the product polytope in exact rational arithmetic,
// rewrites them over the independent coordinates of a ReducedBasis, filters
// bounds that are mere positivity/normalization consequences, and decides
// membership of a behavior in the noncontextual set via an exact LP with
// Farkas certificates.

#include <string>
#include <vector>

#include <pmnc/polytope.hpp>
#include <pmnc/scenario.hpp>

namespace pmnc {

/// Thrown by nc_membership when the queried behavior is not normalized or
/// does not satisfy the scenario's equivalence equations within tolerance.
struct InvalidBehavior : ValidationError {
  using ValidationError::ValidationError;
};

/// A linear inequality `coeffs . p <= bound`.
///
/// Depending on provenance the coefficient vector ranges over the full
/// coordinate set (index ReducedBasis::full_index(z, x, y)) or over the
/// independent coordinates of a ReducedBasis; the length disambiguates.
/// Stored representations are scale-canonical: integer coefficients with
/// overall gcd 1, obtained by scaling with positive rationals only, so the
/// orientation (which halfspace is described) is always preserved.
struct Inequality {
  RVec coeffs;
  Rational bound;

  bool operator==(const Inequality&) const = default;
};

/// A behavior table p(z|x,y) over the full coordinate set, entry (z,x,y)
/// stored at index ReducedBasis::full_index(z, x, y).
struct Behavior {
  RVec p;
};

/// Outcome of a noncontextual-membership query.  Exactly one of the two
/// certificate fields is meaningful: `weights` when member is true (convex
/// weights over the vertices of product_polytope, in vertex order, summing to
/// one and reproducing the behavior), `separating` when member is false (an
/// inequality satisfied by every noncontextual behavior of the scenario but
/// violated by the query).
struct MembershipResult {
  bool member = false;
  RVec weights;
  Inequality separating;
};

/// Vertices of the rescaled preparation polytope {q(x) >= 0, for every
/// equivalence-group member s: sum_x alpha_{x|s} q(x) = 1} in dimension n_x.
/// Throws UnboundedPolytope when some preparation carries positive weight in
/// no equivalence condition (the polytope then has a recession direction).
VPolytope prep_polytope(const Scenario& s);

/// Vertices of the measurement polytope {xi(z|y) >= 0, sum_z xi(z|y) = 1,
/// measurement equivalences} in dimension n_y*n_z, coordinate k = y*n_z + z.
/// With no measurement equivalences these are exactly the deterministic
/// response assignments.  Throws EmptyPolytope if the constraints admit no
/// solution.
VPolytope meas_polytope(const Scenario& s);

/// All outer products q(x)*xi(z|y) of a preparation vertex with a measurement
/// vertex, deduplicated, as vertices in the full coordinate space of
/// dimension n_x*n_y*n_z (index (y*n_x + x)*n_z + z).  The outcome count n_z
/// fixes the interleaving; it cannot be recovered from the factors alone.
VPolytope product_polytope(const VPolytope& prep, const VPolytope& meas,
                           int n_z);

/// Irredundant facet inequalities of the product polytope in full
/// coordinates, exact and deterministically ordered.  Affine-hull equalities
/// are not reported; only proper facets count.
std::vector<Inequality> extended_facets(const VPolytope& prod);

/// Rewrites a full-coordinate inequality over the independent coordinates of
/// the basis by substituting normalization and the equivalence relations,
/// then restores the scale-canonical representation.  Idempotent on already
/// reduced inequalities (treated as full vectors they are not accepted; the
/// input length must be basis.n_full()).
Inequality reduce(const Inequality& full, const ReducedBasis& basis);

/// The reductions of all 2*n_full candidate bounds p(z|x,y) >= 0 and
/// p(z|x,y) <= 1, deduplicated, vacuous entries omitted.  Precompute once
/// when classifying many inequalities.
std::vector<Inequality> trivial_candidates(const ReducedBasis& basis);

/// True iff the reduced inequality equals the reduction of some positivity
/// bound p(z|x,y) >= 0 or upper bound p(z|x,y) <= 1 taken over the full
/// coordinate set.
bool classify_trivial(const Inequality& reduced, const ReducedBasis& basis);

/// True iff the reduced inequality has no coefficients and a nonnegative
/// bound, i.e. it became the tautology 0 <= C under substitution.
bool vacuous(const Inequality& reduced);

/// Sign-normalized comparison key: the joint (coeffs, bound) vector flipped,
/// if necessary, so that its first nonzero entry is positive.  Two facets of
/// a polytope with nonempty interior never collide on keys, so the key serves
/// for deduplication and orbit comparisons where mirror-image representations
/// must meet.
RVec inequality_key(const Inequality& q);

/// Deterministic strict ordering on inequalities: lexicographic on the joint
/// (coeffs, bound) vector.
bool inequality_less(const Inequality& a, const Inequality& b);

/// Decides whether the exactly normalized, equivalence-satisfying behavior
/// lies in the noncontextual set: whether convex weights nu over the product
/// vertices exist with sum nu * (q x xi) = p and sum nu * q(x) = 1 for every
/// x.  Throws InvalidBehavior when the premises fail (exact check).
MembershipResult nc_membership(const Behavior& b, const Scenario& s);

/// Float entry point for numerically produced behaviors.  Validates
/// normalization and equivalences within `tol`, projects the table exactly
/// onto the constraint subspace through the scenario's reduced basis (the
/// independent coordinates are kept, clamped to [0,1]; dependent ones are
/// recomputed), and then decides membership exactly.  The answer therefore
/// refers to a behavior within O(tol) of the input.
MembershipResult nc_membership(const std::vector<double>& p, const Scenario& s,
                               double tol = 1e-9);

/// Renders a reduced inequality as "c*p[z|x,y] + ... <= C" with exact
/// rational coefficients, zero terms omitted.
std::string format_inequality(const Inequality& reduced,
                              const ReducedBasis& basis);

}  // namespace pmnc
