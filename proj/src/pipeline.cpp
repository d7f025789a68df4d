#include "pmnc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmnc/lp.hpp"

namespace pmnc {

namespace {

// Rows "(alpha_i - alpha_{i+1}) . v = 0" for consecutive members of every
// equivalence group; the common value of the mixtures is not fixed here.
RMat difference_rows(const std::vector<RMat>& groups) {
  RMat rows;
  for (const RMat& g : groups) {
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      RVec d(g[i].size());
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = g[i][j] - g[i + 1][j];
      rows.push_back(std::move(d));
    }
  }
  return rows;
}

}  // namespace

VPolytope prep_polytope(const Scenario& s) {
  validate_scenario(s);
  HPolytope h;
  h.dim = s.n_x;
  h.A = RMat(s.n_x, RVec(s.n_x, Rational(0)));
  h.b = RVec(s.n_x, Rational(0));
  for (int x = 0; x < s.n_x; ++x) h.A[x][x] = Rational(-1);  // q(x) >= 0
  for (const RMat& g : s.prep_equivs) {
    for (const RVec& alpha : g) {
      h.E.push_back(alpha);  // sum_x alpha_{x|s} q(x) = 1
      h.f.push_back(Rational(1));
    }
  }
  return enumerate_vertices(h);
}

VPolytope meas_polytope(const Scenario& s) {
  validate_scenario(s);
  const int n = s.n_y * s.n_z;
  HPolytope h;
  h.dim = n;
  h.A = RMat(n, RVec(n, Rational(0)));
  h.b = RVec(n, Rational(0));
  for (int k = 0; k < n; ++k) h.A[k][k] = Rational(-1);  // xi(z|y) >= 0
  for (int y = 0; y < s.n_y; ++y) {                      // sum_z xi(z|y) = 1
    RVec row(n, Rational(0));
    for (int z = 0; z < s.n_z; ++z) row[y * s.n_z + z] = Rational(1);
    h.E.push_back(std::move(row));
    h.f.push_back(Rational(1));
  }
  for (RVec& d : difference_rows(s.meas_equivs)) {
    h.E.push_back(std::move(d));
    h.f.push_back(Rational(0));
  }
  return enumerate_vertices(h);
}

VPolytope product_polytope(const VPolytope& prep, const VPolytope& meas,
                           int n_z) {
  if (prep.vertices.empty() || meas.vertices.empty())
    throw EmptyPolytope("product of empty polytopes");
  if (n_z <= 0 || meas.dim % n_z != 0)
    throw ValidationError("product_polytope: bad outcome count");
  const int n_x = prep.dim;
  const int n_y = meas.dim / n_z;
  VPolytope prod;
  prod.dim = n_x * n_y * n_z;
  for (const RVec& q : prep.vertices) {
    for (const RVec& xi : meas.vertices) {
      RVec p(prod.dim);
      for (int y = 0; y < n_y; ++y)
        for (int x = 0; x < n_x; ++x)
          for (int z = 0; z < n_z; ++z)
            p[(y * n_x + x) * n_z + z] = q[x] * xi[y * n_z + z];
      prod.vertices.push_back(std::move(p));
    }
  }
  std::sort(prod.vertices.begin(), prod.vertices.end(),
            [](const RVec& a, const RVec& b) { return compare_lex(a, b) < 0; });
  prod.vertices.erase(std::unique(prod.vertices.begin(), prod.vertices.end()),
                      prod.vertices.end());
  return prod;
}

std::vector<Inequality> extended_facets(const VPolytope& prod) {
  HPolytope h = enumerate_facets(prod);
  std::vector<Inequality> out;
  out.reserve(h.A.size());
  for (std::size_t i = 0; i < h.A.size(); ++i)
    out.push_back(Inequality{h.A[i], h.b[i]});
  return out;
}

namespace {

// joint scale-canonicalization of (coeffs, bound)
Inequality canonicalize(RVec coeffs, Rational bound) {
  RVec joint = std::move(coeffs);
  joint.push_back(std::move(bound));
  joint = integer_normalize(joint);
  Inequality q;
  q.bound = joint.back();
  joint.pop_back();
  q.coeffs = std::move(joint);
  return q;
}

}  // namespace

Inequality reduce(const Inequality& full, const ReducedBasis& basis) {
  if (static_cast<int>(full.coeffs.size()) != basis.n_full())
    throw ValidationError("reduce: coefficient vector is not full-coordinate");
  const int n_red = basis.n_reduced();
  RVec red(n_red, Rational(0));
  Rational constant(0);
  for (int k = 0; k < basis.n_full(); ++k) {
    const Rational& c = full.coeffs[k];
    if (sgn(c) == 0) continue;
    const RVec& row = basis.subst[k];
    for (int j = 0; j < n_red; ++j)
      if (sgn(row[j]) != 0) red[j] += c * row[j];
    constant += c * row[n_red];
  }
  return canonicalize(std::move(red), full.bound - constant);
}

std::vector<Inequality> trivial_candidates(const ReducedBasis& basis) {
  const int n_red = basis.n_reduced();
  std::vector<Inequality> out;
  for (int k = 0; k < basis.n_full(); ++k) {
    const RVec& row = basis.subst[k];
    RVec lower(n_red), upper(n_red);
    for (int j = 0; j < n_red; ++j) {
      lower[j] = -row[j];
      upper[j] = row[j];
    }
    // p[k] >= 0  <=>  -(affine part) <= constant
    Inequality lo = canonicalize(std::move(lower), row[n_red]);
    // p[k] <= 1  <=>  affine part <= 1 - constant
    Inequality hi = canonicalize(std::move(upper), Rational(1) - row[n_red]);
    for (Inequality* q : {&lo, &hi})
      if (!vacuous(*q)) out.push_back(std::move(*q));
  }
  std::sort(out.begin(), out.end(), inequality_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool classify_trivial(const Inequality& reduced, const ReducedBasis& basis) {
  std::vector<Inequality> cand = trivial_candidates(basis);
  return std::binary_search(cand.begin(), cand.end(), reduced,
                            inequality_less);
}

bool vacuous(const Inequality& reduced) {
  for (const Rational& c : reduced.coeffs)
    if (sgn(c) != 0) return false;
  if (sgn(reduced.bound) < 0)
    throw std::logic_error("inequality reduced to an infeasible constant");
  return true;
}

RVec inequality_key(const Inequality& q) {
  RVec joint = q.coeffs;
  joint.push_back(q.bound);
  int flip = 0;
  for (const Rational& c : joint) {
    int sg = sgn(c);
    if (sg != 0) {
      flip = (sg < 0) ? -1 : 1;
      break;
    }
  }
  if (flip < 0)
    for (Rational& c : joint) c = -c;
  return joint;
}

bool inequality_less(const Inequality& a, const Inequality& b) {
  int c = compare_lex(a.coeffs, b.coeffs);
  if (c != 0) return c < 0;
  return a.bound < b.bound;
}

namespace {

void check_behavior(const Behavior& b, const Scenario& s) {
  const int n_full = s.n_x * s.n_y * s.n_z;
  if (static_cast<int>(b.p.size()) != n_full)
    throw InvalidBehavior("behavior table has wrong size");
  auto at = [&](int z, int x, int y) -> const Rational& {
    return b.p[(y * s.n_x + x) * s.n_z + z];
  };
  for (const Rational& v : b.p)
    if (sgn(v) < 0 || v > 1) throw InvalidBehavior("entry outside [0,1]");
  for (int x = 0; x < s.n_x; ++x)
    for (int y = 0; y < s.n_y; ++y) {
      Rational sum(0);
      for (int z = 0; z < s.n_z; ++z) sum += at(z, x, y);
      if (sum != 1) throw InvalidBehavior("behavior not normalized");
    }
  for (const RMat& g : s.prep_equivs)
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      for (int z = 0; z < s.n_z; ++z)
        for (int y = 0; y < s.n_y; ++y) {
          Rational diff(0);
          for (int x = 0; x < s.n_x; ++x)
            diff += (g[i][x] - g[i + 1][x]) * at(z, x, y);
          if (sgn(diff) != 0)
            throw InvalidBehavior("preparation equivalence violated");
        }
  for (const RMat& g : s.meas_equivs)
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      for (int x = 0; x < s.n_x; ++x) {
        Rational diff(0);
        for (int y = 0; y < s.n_y; ++y)
          for (int z = 0; z < s.n_z; ++z)
            diff += (g[i][y * s.n_z + z] - g[i + 1][y * s.n_z + z]) *
                    at(z, x, y);
        if (sgn(diff) != 0)
          throw InvalidBehavior("measurement equivalence violated");
      }
}

}  // namespace

MembershipResult nc_membership(const Behavior& b, const Scenario& s) {
  check_behavior(b, s);
  VPolytope prod =
      product_polytope(prep_polytope(s), meas_polytope(s), s.n_z);
  const int n_full = s.n_x * s.n_y * s.n_z;
  const int n_rows = n_full + s.n_x;
  const int n_cols = static_cast<int>(prod.vertices.size());
  RMat bmat(n_rows, RVec(n_cols, Rational(0)));
  for (int v = 0; v < n_cols; ++v) {
    const RVec& vert = prod.vertices[v];
    for (int k = 0; k < n_full; ++k) bmat[k][v] = vert[k];
    // the preparation weight q(x) of a product vertex is its outcome sum at
    // any fixed setting; use y = 0
    for (int x = 0; x < s.n_x; ++x) {
      Rational q(0);
      for (int z = 0; z < s.n_z; ++z) q += vert[x * s.n_z + z];
      bmat[n_full + x][v] = q;
    }
  }
  RVec rhs = b.p;
  for (int x = 0; x < s.n_x; ++x) rhs.push_back(Rational(1));
  LPResult lp = solve_lp_nonneg(RVec{}, bmat, rhs);
  MembershipResult res;
  if (lp.status == LPStatus::Optimal) {
    res.member = true;
    res.weights = lp.x;
    return res;
  }
  // Farkas y: y.B >= 0 on every vertex column and y.rhs < 0; hence
  // (-y_p) . p' <= sum_x y_norm[x] for every noncontextual behavior p' while
  // the query violates it.
  res.member = false;
  RVec coeffs(n_full);
  for (int k = 0; k < n_full; ++k) coeffs[k] = -lp.farkas[k];
  Rational bound(0);
  for (int x = 0; x < s.n_x; ++x) bound += lp.farkas[n_full + x];
  res.separating = canonicalize(std::move(coeffs), bound);
  return res;
}

MembershipResult nc_membership(const std::vector<double>& p, const Scenario& s,
                               double tol) {
  const int n_full = s.n_x * s.n_y * s.n_z;
  if (static_cast<int>(p.size()) != n_full)
    throw InvalidBehavior("behavior table has wrong size");
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  // exact dyadic view of the input
  RVec exact(n_full);
  for (int k = 0; k < n_full; ++k) {
    if (!std::isfinite(p[k])) throw InvalidBehavior("non-finite entry");
    exact[k] = Rational(p[k]);
  }
  const Rational rtol(tol);
  auto at = [&](int z, int x, int y) -> const Rational& {
    return exact[(y * s.n_x + x) * s.n_z + z];
  };
  for (const Rational& v : exact)
    if (v < -rtol || v > Rational(1) + rtol)
      throw InvalidBehavior("entry outside [0,1] beyond tolerance");
  for (int x = 0; x < s.n_x; ++x)
    for (int y = 0; y < s.n_y; ++y) {
      Rational sum(-1);
      for (int z = 0; z < s.n_z; ++z) sum += at(z, x, y);
      if (abs(sum) > rtol)
        throw InvalidBehavior("behavior not normalized beyond tolerance");
    }
  for (const RMat& g : s.prep_equivs)
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      for (int z = 0; z < s.n_z; ++z)
        for (int y = 0; y < s.n_y; ++y) {
          Rational diff(0);
          for (int x = 0; x < s.n_x; ++x)
            diff += (g[i][x] - g[i + 1][x]) * at(z, x, y);
          if (abs(diff) > rtol)
            throw InvalidBehavior(
                "preparation equivalence violated beyond tolerance");
        }
  for (const RMat& g : s.meas_equivs)
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      for (int x = 0; x < s.n_x; ++x) {
        Rational diff(0);
        for (int y = 0; y < s.n_y; ++y)
          for (int z = 0; z < s.n_z; ++z)
            diff += (g[i][y * s.n_z + z] - g[i + 1][y * s.n_z + z]) *
                    at(z, x, y);
        if (abs(diff) > rtol)
          throw InvalidBehavior(
              "measurement equivalence violated beyond tolerance");
      }
  // project exactly onto the constraint subspace: keep the independent
  // coordinates (clamped into [0,1] and approximated by small-denominator
  // rationals well below tol), recompute the dependent ones
  ReducedBasis basis = reduced_basis(s);
  const int n_red = basis.n_reduced();
  RVec red(n_red);
  for (int j = 0; j < n_red; ++j) {
    const auto& c = basis.coords[j];
    double v = p[basis.full_index(c[0], c[1], c[2])];
    v = std::min(1.0, std::max(0.0, v));
    red[j] = rational_approx(v, tol * 1e-3);
  }
  Behavior proj;
  proj.p.resize(n_full);
  for (int k = 0; k < n_full; ++k) {
    const RVec& row = basis.subst[k];
    Rational val = row[n_red];
    for (int j = 0; j < n_red; ++j)
      if (sgn(row[j]) != 0) val += row[j] * red[j];
    // clamp residual numerical dirt on dependent coordinates
    if (sgn(val) < 0 && -val <= rtol) val = 0;
    if (val > 1 && val - 1 <= rtol) val = 1;
    proj.p[k] = std::move(val);
  }
  // re-normalize dependent outcomes exactly if clamping disturbed a sum
  for (int x = 0; x < s.n_x; ++x)
    for (int y = 0; y < s.n_y; ++y) {
      Rational sum(0);
      for (int z = 0; z < s.n_z; ++z)
        sum += proj.p[(y * s.n_x + x) * s.n_z + z];
      if (sum != 1) {
        Rational& last = proj.p[(y * s.n_x + x) * s.n_z + (s.n_z - 1)];
        last += Rational(1) - sum;
      }
    }
  return nc_membership(proj, s);
}

std::string format_inequality(const Inequality& reduced,
                              const ReducedBasis& basis) {
  if (static_cast<int>(reduced.coeffs.size()) != basis.n_reduced())
    throw ValidationError("format_inequality: not in reduced coordinates");
  std::ostringstream os;
  bool any = false;
  for (int j = 0; j < basis.n_reduced(); ++j) {
    if (sgn(reduced.coeffs[j]) == 0) continue;
    if (any) os << " + ";
    const auto& c = basis.coords[j];
    os << format_rational(reduced.coeffs[j]) << "*p[" << c[0] << "|" << c[1]
       << "," << c[2] << "]";
    any = true;
  }
  if (!any) os << "0";
  os << " <= " << format_rational(reduced.bound);
  return os.str();
}

}  // namespace pmnc
