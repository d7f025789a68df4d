#include "pmnc/polytope.hpp"
#include "pmnc/lp.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace pmnc {

void HPolytope::check_consistent() const {
  if (A.size() != b.size()) throw ValidationError("H-polytope: |A| != |b|");
  if (E.size() != f.size()) throw ValidationError("H-polytope: |E| != |f|");
  for (const RVec& row : A)
    if (static_cast<int>(row.size()) != dim)
      throw ValidationError("H-polytope: inequality row of wrong dimension");
  for (const RVec& row : E)
    if (static_cast<int>(row.size()) != dim)
      throw ValidationError("H-polytope: equality row of wrong dimension");
}

bool contains(const HPolytope& h, const RVec& x) {
  for (std::size_t i = 0; i < h.A.size(); ++i)
    if (dot(h.A[i], x) > h.b[i]) return false;
  for (std::size_t i = 0; i < h.E.size(); ++i)
    if (dot(h.E[i], x) != h.f[i]) return false;
  return true;
}

namespace {

constexpr std::uint64_t kModP = 2147483647ull;  // 2^31 - 1, prime

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  a %= kModP;
  while (e) {
    if (e & 1) r = r * a % kModP;
    a = a * a % kModP;
    e >>= 1;
  }
  return r;
}

// Rational residue mod p; returns false when the denominator vanishes.
bool residue(const Rational& q, std::uint64_t& out) {
  std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), kModP);
  std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), kModP);
  if (den == 0) return false;
  out = num * pow_mod(den, kModP - 2) % kModP;
  return true;
}

using Bits = std::vector<std::uint64_t>;

bool bits_subset(const Bits& small, const Bits& big) {
  for (std::size_t w = 0; w < small.size(); ++w)
    if (small[w] & ~big[w]) return false;
  return true;
}

int bits_popcount_and(const Bits& a, const Bits& b, Bits* out) {
  int c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t v = a[w] & b[w];
    if (out) (*out)[w] = v;
    c += __builtin_popcountll(v);
  }
  return c;
}

struct Ray {
  RVec v;    // integer-normalized; never sign-flipped
  Bits zero; // bit per processed constraint row: exact tightness
};

// Double description for the pointed cone {x : M x <= 0}. Rows must be
// pre-sorted; rank(M) must equal the ambient dimension. Returns all
// extreme rays, integer-normalized, unordered.
std::vector<RVec> dd_cone(const RMat& M) {
  const int k = static_cast<int>(M[0].size());
  const int nrows = static_cast<int>(M.size());
  const std::size_t words = (nrows + 63) / 64;

  // residues for the fast adjacency path
  std::vector<std::vector<std::uint64_t>> modp(nrows);
  std::vector<bool> mod_ok(nrows, true);
  for (int i = 0; i < nrows; ++i) {
    modp[i].resize(k);
    for (int j = 0; j < k; ++j)
      if (!residue(M[i][j], modp[i][j])) mod_ok[i] = false;
  }

  // initial simplicial subcone: greedily pick k independent rows
  std::vector<int> base;
  {
    RMat sel;
    int r = 0;
    for (int i = 0; i < nrows && r < k; ++i) {
      sel.push_back(M[i]);
      RMat probe = sel;
      if (static_cast<int>(rref_in_place(probe).size()) > r) {
        ++r;
        base.push_back(i);
      } else {
        sel.pop_back();
      }
    }
    if (r < k) throw std::logic_error("dd_cone: cone not pointed");
  }

  // rays of the initial cone: columns of -B^{-1}
  std::vector<Ray> rays;
  {
    RMat B;
    for (int i : base) B.push_back(M[i]);
    for (int j = 0; j < k; ++j) {
      RVec e = zeros(k);
      e[j] = -1;
      std::optional<RVec> col = solve_linear(B, e);
      if (!col) throw std::logic_error("dd_cone: singular initial basis");
      Ray ray;
      ray.v = integer_normalize(*col);
      ray.zero.assign(words, 0);
      rays.push_back(std::move(ray));
    }
  }
  std::vector<bool> processed(nrows, false);
  auto mark_processed = [&](int row) {
    processed[row] = true;
    for (Ray& ray : rays)
      if (sgn(dot(M[row], ray.v)) == 0) ray.zero[row / 64] |= 1ull << (row % 64);
  };
  for (int i : base) mark_processed(i);

  std::vector<int> proc_list = base;  // processed row indices in order

  for (int row = 0; row < nrows; ++row) {
    if (processed[row]) continue;
    std::vector<Rational> val(rays.size());
    std::vector<int> inside, on, outside;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(M[row], rays[i].v);
      int s = sgn(val[i]);
      if (s < 0)
        inside.push_back(static_cast<int>(i));
      else if (s == 0)
        on.push_back(static_cast<int>(i));
      else
        outside.push_back(static_cast<int>(i));
    }
    if (outside.empty()) {
      mark_processed(row);
      proc_list.push_back(row);
      continue;
    }
    // adjacency-filtered combinations of (inside, outside) pairs
    std::vector<Ray> fresh;
    Bits common(words);
    for (int ii : inside) {
      for (int oo : outside) {
        const Ray& r1 = rays[ii];
        const Ray& r2 = rays[oo];
        int common_count = bits_popcount_and(r1.zero, r2.zero, &common);
        if (common_count < k - 2) continue;  // rank can't reach k-2
        bool adjacent = false;
        bool decided = false;
        // fast path: rank over GF(p) of the common tight rows
        if (common_count <= 4 * k) {
          std::vector<int> idx;
          idx.reserve(common_count);
          bool usable = true;
          for (int pr : proc_list) {
            if (common[pr / 64] >> (pr % 64) & 1) {
              if (!mod_ok[pr]) {
                usable = false;
                break;
              }
              idx.push_back(pr);
            }
          }
          if (usable) {
            // Gaussian elimination mod p, early exit at rank k-2
            std::vector<std::vector<std::uint64_t>> g;
            g.reserve(idx.size());
            for (int pr : idx) g.push_back(modp[pr]);
            int rank_p = 0;
            for (int col = 0; col < k && rank_p < static_cast<int>(g.size());
                 ++col) {
              int piv = -1;
              for (int i2 = rank_p; i2 < static_cast<int>(g.size()); ++i2)
                if (g[i2][col]) {
                  piv = i2;
                  break;
                }
              if (piv < 0) continue;
              std::swap(g[rank_p], g[piv]);
              std::uint64_t inv = pow_mod(g[rank_p][col], kModP - 2);
              for (int j = col; j < k; ++j)
                g[rank_p][j] = g[rank_p][j] * inv % kModP;
              for (int i2 = 0; i2 < static_cast<int>(g.size()); ++i2) {
                if (i2 == rank_p || !g[i2][col]) continue;
                std::uint64_t f = g[i2][col];
                for (int j = col; j < k; ++j)
                  g[i2][j] =
                      (g[i2][j] + (kModP - f) * g[rank_p][j]) % kModP;
              }
              ++rank_p;
            }
            if (rank_p == k - 2) {
              adjacent = true;  // rank over Q is >= rank_p and <= k-2
              decided = true;
            }
          }
        }
        if (!decided) {
          // combinatorial test: no third ray's zero set contains the meet
          adjacent = true;
          for (std::size_t i3 = 0; i3 < rays.size(); ++i3) {
            if (static_cast<int>(i3) == ii || static_cast<int>(i3) == oo)
              continue;
            if (bits_subset(common, rays[i3].zero)) {
              adjacent = false;
              break;
            }
          }
        }
        if (!adjacent) continue;
        // new ray on the hyperplane: positive combination
        // (val[oo] > 0 scales the inside ray, -val[ii] > 0 the outside one)
        Ray nr;
        RVec comb(k);
        for (int j = 0; j < k; ++j)
          comb[j] = val[oo] * r1.v[j] - val[ii] * r2.v[j];
        nr.v = integer_normalize(comb);
        nr.zero.assign(words, 0);
        fresh.push_back(std::move(nr));
      }
    }
    // keep inside + on, add fresh
    const std::size_t n_kept = inside.size() + on.size();
    std::vector<Ray> next;
    next.reserve(n_kept + fresh.size());
    for (int i : inside) next.push_back(std::move(rays[i]));
    for (int i : on) next.push_back(std::move(rays[i]));
    for (Ray& f2 : fresh) next.push_back(std::move(f2));
    rays = std::move(next);
    processed[row] = true;
    proc_list.push_back(row);
    // kept rays only need the new row's bit; fresh rays need all of them
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (i < n_kept) {
        if (sgn(dot(M[row], rays[i].v)) == 0)
          rays[i].zero[row / 64] |= 1ull << (row % 64);
      } else {
        for (int pr : proc_list)
          if (sgn(dot(M[pr], rays[i].v)) == 0)
            rays[i].zero[pr / 64] |= 1ull << (pr % 64);
      }
    }
  }

  // dedupe (fresh rays may coincide with existing ones in degenerate cases)
  std::unordered_map<std::uint64_t, std::vector<int>> buckets;
  std::vector<RVec> out;
  for (const Ray& r : rays) {
    std::uint64_t h = hash_rvec(r.v);
    bool dup = false;
    for (int idx : buckets[h])
      if (compare_lex(out[idx], r.v) == 0) {
        dup = true;
        break;
      }
    if (!dup) {
      buckets[h].push_back(static_cast<int>(out.size()));
      out.push_back(r.v);
    }
  }
  return out;
}

}  // namespace

VPolytope enumerate_vertices(const HPolytope& h) {
  h.check_consistent();
  const int d = h.dim;
  // affine chart for the equality rows
  RVec v0 = zeros(d);
  RMat N;  // chart basis vectors (rows)
  if (!h.E.empty()) {
    std::optional<RVec> part = solve_linear(h.E, h.f);
    if (!part) throw EmptyPolytope("equality system inconsistent");
    v0 = std::move(*part);
    N = nullspace(h.E);
  } else {
    N = identity(d);
  }
  const int k = static_cast<int>(N.size());
  if (k == 0) {
    if (!contains(h, v0)) throw EmptyPolytope("point violates inequalities");
    VPolytope out;
    out.dim = d;
    out.vertices.push_back(v0);
    return out;
  }
  // substitute v = v0 + N^T t into A v <= b
  RMat Ac(h.A.size());
  RVec bc(h.A.size());
  for (std::size_t i = 0; i < h.A.size(); ++i) {
    Ac[i] = zeros(k);
    for (int j = 0; j < k; ++j) Ac[i][j] = dot(h.A[i], N[j]);
    bc[i] = h.b[i] - dot(h.A[i], v0);
  }
  // emptiness check: try the chart origin first, else an exact LP
  {
    bool origin_ok = true;
    for (std::size_t i = 0; i < Ac.size(); ++i)
      if (sgn(bc[i]) < 0) {
        origin_ok = false;
        break;
      }
    if (!origin_ok) {
      HPolytope chart;
      chart.dim = k;
      chart.A = Ac;
      chart.b = bc;
      LPResult feas = solve_lp(zeros(k), chart);
      if (feas.status == LPStatus::Infeasible)
        throw EmptyPolytope("no feasible point");
    }
  }
  // homogenize: rows [A | -b] plus [0 | -1], cone in dimension k+1
  RMat M;
  M.reserve(Ac.size() + 1);
  for (std::size_t i = 0; i < Ac.size(); ++i) {
    RVec row = Ac[i];
    row.push_back(-bc[i]);
    RVec norm = integer_normalize(row);
    M.push_back(std::move(norm));
  }
  {
    RVec srow = zeros(k + 1);
    srow[k] = -1;
    M.push_back(std::move(srow));
  }
  // dedupe + canonical sort for insertion-order independence
  std::sort(M.begin(), M.end(),
            [](const RVec& a, const RVec& b2) { return compare_lex(a, b2) < 0; });
  M.erase(std::unique(M.begin(), M.end(),
                      [](const RVec& a, const RVec& b2) {
                        return compare_lex(a, b2) == 0;
                      }),
          M.end());
  // drop zero rows
  RMat M2;
  for (RVec& row : M) {
    bool nonzero = false;
    for (const Rational& q : row)
      if (sgn(q) != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) M2.push_back(std::move(row));
  }
  if (rank(M2) < k + 1) throw UnboundedPolytope("feasible set contains a line");
  std::vector<RVec> rays = dd_cone(M2);
  VPolytope out;
  out.dim = d;
  for (const RVec& ray : rays) {
    const Rational& s = ray[k];
    if (sgn(s) == 0) throw UnboundedPolytope("recession ray detected");
    if (sgn(s) < 0) throw std::logic_error("ray with negative homogenizer");
    RVec t(k);
    for (int j = 0; j < k; ++j) t[j] = ray[j] / s;
    RVec v = v0;
    for (int j = 0; j < k; ++j)
      if (sgn(t[j]) != 0) v = axpy(v, t[j], N[j]);
    out.vertices.push_back(std::move(v));
  }
  std::sort(out.vertices.begin(), out.vertices.end(),
            [](const RVec& a, const RVec& b2) { return compare_lex(a, b2) < 0; });
  out.vertices.erase(
      std::unique(out.vertices.begin(), out.vertices.end(),
                  [](const RVec& a, const RVec& b2) {
                    return compare_lex(a, b2) == 0;
                  }),
      out.vertices.end());
  return out;
}

HPolytope enumerate_facets(const VPolytope& vp) {
  if (vp.vertices.empty()) throw EmptyPolytope("no vertices");
  const int d = vp.dim;
  const RVec& v0 = vp.vertices[0];
  // affine hull: direction-space basis N (rows) and equality rows E
  RMat diff;
  for (std::size_t i = 1; i < vp.vertices.size(); ++i) {
    RVec row(d);
    for (int j = 0; j < d; ++j) row[j] = vp.vertices[i][j] - v0[j];
    diff.push_back(std::move(row));
  }
  RMat N;
  if (!diff.empty()) {
    RMat red = diff;
    std::vector<int> piv = rref_in_place(red);
    for (std::size_t i = 0; i < piv.size(); ++i) N.push_back(red[i]);
  }
  const int k = static_cast<int>(N.size());
  HPolytope out;
  out.dim = d;
  // equality rows: kernel of the direction space, canonicalized
  {
    RMat ker = N.empty() ? identity(d) : nullspace(N);
    for (RVec& e : ker) {
      RVec row = integer_normalize(e);
      // equalities have no orientation; make the first nonzero positive
      for (const Rational& q : row) {
        if (sgn(q) == 0) continue;
        if (sgn(q) < 0)
          for (Rational& x : row) x = -x;
        break;
      }
      out.E.push_back(row);
      out.f.push_back(dot(out.E.back(), v0));
    }
    // canonical order
    std::vector<int> order(out.E.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b2) {
      return compare_lex(out.E[a], out.E[b2]) < 0;
    });
    RMat E2;
    RVec f2;
    for (int i : order) {
      E2.push_back(out.E[i]);
      f2.push_back(out.f[i]);
    }
    out.E = std::move(E2);
    out.f = std::move(f2);
  }
  if (k == 0) return out;  // single point: equalities only
  // chart coordinates of each vertex: solve N^T t = v - v0
  RMat NT = transpose(N);  // d x k
  RMat tcoords;
  for (const RVec& v : vp.vertices) {
    RVec rhs(d);
    for (int j = 0; j < d; ++j) rhs[j] = v[j] - v0[j];
    std::optional<RVec> t = solve_linear(NT, rhs);
    if (!t) throw std::logic_error("vertex outside its own affine hull");
    tcoords.push_back(std::move(*t));
  }
  // centroid is a relative-interior point; translate it to the origin
  RVec c = zeros(k);
  for (const RVec& t : tcoords)
    for (int j = 0; j < k; ++j) c[j] += t[j];
  Rational inv_n(1, static_cast<unsigned long>(tcoords.size()));
  for (int j = 0; j < k; ++j) c[j] *= inv_n;
  // polar dual {a : (t_i - c) . a <= 1}; its vertices are our facets
  HPolytope dual;
  dual.dim = k;
  for (const RVec& t : tcoords) {
    RVec row(k);
    for (int j = 0; j < k; ++j) row[j] = t[j] - c[j];
    dual.A.push_back(std::move(row));
    dual.b.push_back(Rational(1));
  }
  VPolytope dual_v = enumerate_vertices(dual);
  // left inverse K of N^T (k x d): K row j solves N k_j = e_j
  RMat K;
  for (int j = 0; j < k; ++j) {
    RVec e = zeros(k);
    e[j] = 1;
    std::optional<RVec> kj = solve_linear(N, e);
    if (!kj) throw std::logic_error("direction basis lost rank");
    K.push_back(std::move(*kj));
  }
  for (const RVec& a : dual_v.vertices) {
    // facet in chart: a . t <= 1 + a . c ; lift t = K (v - v0)
    RVec g = zeros(d);
    for (int j = 0; j < k; ++j)
      if (sgn(a[j]) != 0) g = axpy(g, a[j], K[j]);
    Rational bound = Rational(1) + dot(a, c) + dot(g, v0);
    RVec row = g;
    row.push_back(bound);
    row = integer_normalize(row);
    bound = row.back();
    row.pop_back();
    out.A.push_back(std::move(row));
    out.b.push_back(bound);
  }
  // canonical sort of facet rows
  std::vector<int> order(out.A.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    RVec ax = out.A[x];
    ax.push_back(out.b[x]);
    RVec ay = out.A[y];
    ay.push_back(out.b[y]);
    return compare_lex(ax, ay) < 0;
  });
  RMat A2;
  RVec b2;
  for (int i : order) {
    A2.push_back(out.A[i]);
    b2.push_back(out.b[i]);
  }
  out.A = std::move(A2);
  out.b = std::move(b2);
  return out;
}

}  // namespace pmnc
