#pragma once
// Relabeling symmetries of a scenario and orbit classification of reduced
// inequalities. A symmetry permutes preparation labels and relabels
// measurement effects as (y, z) -> (sigma(y), pi_y(z)); the admissible ones
// are exactly those leaving the product-vertex set invariant.

#include <string>
#include <vector>

#include "pmnc/pipeline.hpp"
#include "pmnc/polytope.hpp"
#include "pmnc/scenario.hpp"

namespace pmnc {

/// The requested brute-force search space exceeds the configured cap.
/// Callers may supply group elements manually instead.
struct SearchTooLarge : ValidationError {
  using ValidationError::ValidationError;
};

/// A scenario relabeling: preparation permutation combined with a
/// measurement-setting permutation and per-setting outcome permutations.
/// The effect label (y, z) maps to (setting_perm[y], outcome_perm[y][z]).
struct ScenarioSymmetry {
  std::vector<int> prep_perm;                 ///< x -> prep_perm[x]
  std::vector<int> setting_perm;              ///< y -> setting_perm[y]
  std::vector<std::vector<int>> outcome_perm; ///< z -> outcome_perm[y][z]

  bool operator==(const ScenarioSymmetry&) const = default;
  bool operator<(const ScenarioSymmetry& o) const;
};

/// The identity relabeling of the scenario.
ScenarioSymmetry identity_symmetry(const Scenario& s);

/// Composition: apply b first, then a.
ScenarioSymmetry compose(const ScenarioSymmetry& a, const ScenarioSymmetry& b);

/// Group inverse.
ScenarioSymmetry inverse(const ScenarioSymmetry& g);

/// All relabelings of the stated form mapping the product-vertex set to
/// itself, sorted lexicographically (identity first). Preparation
/// permutations are searched by brute force, pruned by per-coordinate value
/// multisets of the preparation vertices; measurement relabelings are
/// searched exhaustively. Throws SearchTooLarge when n_x! exceeds
/// max_prep_perms (default 10!).
std::vector<ScenarioSymmetry> find_symmetries(const Scenario& s,
                                              const VPolytope& prod,
                                              long max_prep_perms = 3628800);

/// Action on a reduced inequality: lift to full coordinates on the
/// independent positions, push the coefficients through the relabeling, and
/// reduce again. Facets map to facets because the vertex set is invariant.
Inequality apply_symmetry(const ScenarioSymmetry& g, const Inequality& reduced,
                          const ReducedBasis& basis);

/// An equivalence class of reduced inequalities under the group action.
struct InequalityClass {
  Inequality representative;        ///< lexicographically least member
  long orbit_size = 0;              ///< distinct reduced forms in the orbit
  long weight = 0;                  ///< input items landing in the orbit,
                                    ///< counted with multiplicity
  std::vector<Inequality> members;  ///< the distinct forms, sorted
};

/// Partitions the input into symmetry classes. Inputs may repeat; repeats
/// accumulate in the class weight while orbit_size counts distinct forms of
/// the full group orbit. Classes are sorted by (orbit_size, representative).
/// The output is independent of the input order.
std::vector<InequalityClass> orbit_classify(
    const std::vector<Inequality>& ineqs,
    const std::vector<ScenarioSymmetry>& group, const ReducedBasis& basis);

/// One-line rendering: preparation cycles, setting cycles, and per-setting
/// outcome cycles, e.g. "prep (0 1)(2 3) | settings (0 1) | outcomes 0:(0 1)".
std::string format_symmetry(const ScenarioSymmetry& g);

/// Closure of a generator set under composition, sorted with the identity
/// first. Throws SearchTooLarge when the closure exceeds max_size elements.
std::vector<ScenarioSymmetry> close_group(
    const std::vector<ScenarioSymmetry>& generators, const Scenario& s,
    long max_size = 1 << 20);

/// The documented generator set of a built-in scenario: the handful of
/// relabelings usually quoted alongside its facet classification. The
/// closure of this set is a subgroup of find_symmetries and may be proper,
/// in which case orbits refine; reports should state results under both.
/// Throws ValidationError for keys without a documented set.
std::vector<ScenarioSymmetry> listed_generators(const std::string& key);

}  // namespace pmnc
