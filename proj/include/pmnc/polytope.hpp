// Exact convex polytope representations and conversions between them:
// vertex enumeration of an H-polytope and facet enumeration of a V-polytope,
// both via the double description method (Motzkin et al.; Fukuda-Prodon).
#pragma once

#include "pmnc/linalg_exact.hpp"

#include <string>

namespace pmnc {

/// {v : A v <= b, E v = f} with exact rational data.
struct HPolytope {
  RMat A;  // inequality rows
  RVec b;
  RMat E;  // equality rows
  RVec f;
  int dim = 0;

  void check_consistent() const;  // throws ValidationError on shape errors
};

/// Convex hull of an explicit vertex list. Invariants: vertices pairwise
/// distinct and each one extremal; the set is bounded by construction.
struct VPolytope {
  RMat vertices;
  int dim = 0;
};

struct EmptyPolytope : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnboundedPolytope : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact vertex enumeration. Equalities are first reduced to an affine
/// coordinate chart; the remaining system is homogenized and run through
/// double description with lexicographic insertion order. Output vertices
/// are sorted lexicographically. Throws EmptyPolytope / UnboundedPolytope.
VPolytope enumerate_vertices(const HPolytope& h);

/// Exact facet enumeration of conv(vertices): computes the affine hull,
/// translates an interior point to the origin, and vertex-enumerates the
/// polar dual. Returns the irredundant facet rows together with the affine
/// hull's equality rows; facet rows are sorted lexicographically.
HPolytope enumerate_facets(const VPolytope& v);

/// True iff x satisfies every constraint of h exactly.
bool contains(const HPolytope& h, const RVec& x);

}  // namespace pmnc
