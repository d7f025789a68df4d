// Contextuality scenarios: counts, operational-equivalence groups, the
// scenario file format, validation, derived constraint ranks, the reduced
// coordinate basis, and dimension diagnostics.
#pragma once

#include "pmnc/linalg_exact.hpp"

#include <array>
#include <map>
#include <string>

namespace pmnc {

/// A prepare-and-measure scenario: n_x preparations, n_y measurement
/// settings with n_z outcomes each, plus operational equivalences among
/// convex mixtures of preparations and among mixtures of effects.
struct Scenario {
  std::string name;
  int n_x = 0;
  int n_y = 0;
  int n_z = 0;
  /// Each group lists >= 2 convex-coefficient vectors of length n_x whose
  /// preparation mixtures are operationally indistinguishable.
  std::vector<RMat> prep_equivs;
  /// Likewise over effects, flattened k = y*n_z + z, vectors of length
  /// n_y*n_z.
  std::vector<RMat> meas_equivs;

  bool operator==(const Scenario&) const = default;
};

/// Parses the line-oriented scenario format: '#' starts a comment, blank
/// lines are ignored, and the directives are
///   name <identifier>
///   nx <int> / ny <int> / nz <int>
///   prep_equiv <vec> | <vec> [| <vec> ...]
///   meas_equiv <vec> | <vec> [| <vec> ...]
/// where <vec> is whitespace-separated exact rationals. Throws ParseError
/// on syntax errors; the result is validated (see validate_scenario).
Scenario parse_scenario(const std::string& text);

/// Inverse of parse_scenario on valid scenarios.
std::string serialize_scenario(const Scenario& s);

/// Structural and semantic validation: positive counts, convex coefficient
/// vectors of the right length, distinct vectors within each group, at
/// least one preparation group, and n_s < n_x. Throws ValidationError.
void validate_scenario(const Scenario& s);

/// Number of independent preparation constraints n_s: the rank of the
/// stacked within-group difference vectors.
int prep_constraint_rank(const Scenario& s);

/// Number of independent measurement constraints n_t, analogously.
int meas_constraint_rank(const Scenario& s);

/// The nine built-in example scenarios, keyed "s1" ... "s9".
const std::map<std::string, Scenario>& builtin_scenarios();

/// Lookup in builtin_scenarios; throws ValidationError on unknown keys.
Scenario builtin_scenario(const std::string& key);

/// Affine elimination of dependent behavior coordinates p(z|x,y):
///  - outcome z = n_z-1 of every (x,y) via normalization,
///  - one preparation per independent preparation constraint (Gaussian
///    elimination pivoting on the highest preparation index),
///  - one effect coordinate per independent measurement constraint
///    (pivot on the highest setting y, then the highest outcome z).
struct ReducedBasis {
  int n_x = 0, n_y = 0, n_z = 0;
  /// Independent coordinates as (z, x, y), listed in full-index order.
  std::vector<std::array<int, 3>> coords;
  /// Row per full coordinate: affine expression over the independent
  /// coordinates, length coords.size() + 1 with the constant last.
  RMat subst;

  int n_full() const { return n_x * n_y * n_z; }
  int n_reduced() const { return static_cast<int>(coords.size()); }
  /// Flat index of the full coordinate (z, x, y).
  int full_index(int z, int x, int y) const { return (y * n_x + x) * n_z + z; }
  /// Position of (z, x, y) among the independent coordinates, -1 if
  /// eliminated.
  int reduced_index(int z, int x, int y) const {
    return red_of_full[full_index(z, x, y)];
  }

  std::vector<int> red_of_full;  // full index -> reduced position or -1
};

ReducedBasis reduced_basis(const Scenario& s);

/// Dimension diagnostics comparing this parametrization against the
/// auxiliary-variable counts of the direct approach; r is the number of
/// measurement-polytope vertices.
struct DimsReport {
  int n_s = 0;
  int n_t = 0;
  int prep_aux_dim = 0;  // (n_x - n_s) * r - n_x
  int prep_our_dim = 0;  // n_x - n_s
  int meas_aux_dim = 0;  // r * (n_y*n_z - n_y - n_t)
  int product_dim = 0;   // n_x - n_s + n_y*n_z - n_y - n_t
};

DimsReport dims_report(const Scenario& s, int r);

}  // namespace pmnc
