#include "pmnc/lp.hpp"

#include <stdexcept>

namespace pmnc {
namespace {

// Dense-tableau simplex core for: maximize obj^T w s.t. D w = r, w >= 0,
// where r >= 0 on entry and `basis` names a unit column for every row.
// Maintains the tableau in canonical form. Returns false on unboundedness.
struct Tableau {
  RMat D;
  RVec r;
  RVec obj;      // reduced objective row (maximization)
  Rational val;  // objective value of the current basic solution
  std::vector<int> basis;

  int rows() const { return static_cast<int>(D.size()); }
  int cols() const { return static_cast<int>(obj.size()); }

  void pivot(int pr, int pc) {
    Rational inv = D[pr][pc];
    for (int j = 0; j < cols(); ++j) D[pr][j] /= inv;
    r[pr] /= inv;
    for (int i = 0; i < rows(); ++i) {
      if (i == pr || sgn(D[i][pc]) == 0) continue;
      Rational f = D[i][pc];
      for (int j = 0; j < cols(); ++j) D[i][j] -= f * D[pr][j];
      r[i] -= f * r[pr];
    }
    if (sgn(obj[pc]) != 0) {
      Rational f = obj[pc];
      for (int j = 0; j < cols(); ++j) obj[j] -= f * D[pr][j];
      val += f * r[pr];
    }
    basis[pr] = pc;
  }

  // Bland's rule: entering = least index with positive reduced cost;
  // leaving = min ratio, ties broken by least basic column index.
  bool optimize() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (sgn(obj[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;  // optimal
      int leave = -1;
      Rational best_ratio;
      for (int i = 0; i < rows(); ++i) {
        if (sgn(D[i][enter]) <= 0) continue;
        Rational ratio = r[i] / D[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  }
};

// Solves max obj^T w, D w = r, w >= 0 (r sign-free on entry; rows are
// flipped internally). Returns (status, value, w, farkas-for-rows).
struct CoreResult {
  LPStatus status;
  Rational value;
  RVec w;
  RVec row_multipliers;
};

CoreResult simplex_core(RMat D, RVec r, RVec obj) {
  const int m = static_cast<int>(D.size());
  const int n = m ? static_cast<int>(D[0].size()) : static_cast<int>(obj.size());
  std::vector<int> flip(m, 1);
  for (int i = 0; i < m; ++i) {
    if (sgn(r[i]) < 0) {
      flip[i] = -1;
      r[i] = -r[i];
      for (int j = 0; j < n; ++j) D[i][j] = -D[i][j];
    }
  }
  // phase 1: artificial basis
  Tableau t;
  t.D = std::move(D);
  t.r = std::move(r);
  t.basis.resize(m);
  t.obj = zeros(n + m);
  t.val = 0;
  for (int i = 0; i < m; ++i) {
    RVec ext = zeros(m);
    ext[i] = 1;
    t.D[i].insert(t.D[i].end(), ext.begin(), ext.end());
    t.basis[i] = n + i;
    t.obj[n + i] = -1;
  }
  // canonicalize the phase-1 objective (maximize -sum of artificials)
  // against the artificial basis: add each row once, which zeroes the
  // artificial columns and accounts the starting objective value -sum(r).
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n + m; ++j) t.obj[j] += t.D[i][j];
    t.val -= t.r[i];
  }
  if (!t.optimize()) throw std::logic_error("phase-1 simplex unbounded");
  if (sgn(t.val) < 0) {
    // infeasible: extract row multipliers from the artificial reduced costs
    RVec y(m);
    for (int i = 0; i < m; ++i) {
      // reduced cost of artificial i is c_i - y_i with c_i = -1
      y[i] = Rational(-1) - t.obj[n + i];
      y[i] *= flip[i];
    }
    CoreResult res;
    res.status = LPStatus::Infeasible;
    res.value = 0;
    res.row_multipliers = std::move(y);
    return res;
  }
  // drive artificials out of the basis; drop rows that stay artificial
  std::vector<bool> drop(m, false);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    int pc = -1;
    for (int j = 0; j < n; ++j) {
      if (sgn(t.D[i][j]) != 0) {
        pc = j;
        break;
      }
    }
    if (pc >= 0)
      t.pivot(i, pc);
    else
      drop[i] = true;  // redundant constraint
  }
  Tableau t2;
  for (int i = 0; i < m; ++i) {
    if (drop[i]) continue;
    RVec row(t.D[i].begin(), t.D[i].begin() + n);
    t2.D.push_back(std::move(row));
    t2.r.push_back(t.r[i]);
    t2.basis.push_back(t.basis[i]);
  }
  // phase 2
  t2.obj = obj;
  t2.val = 0;
  for (std::size_t i = 0; i < t2.basis.size(); ++i) {
    int bc = t2.basis[i];
    if (sgn(t2.obj[bc]) == 0) continue;
    Rational f = t2.obj[bc];
    for (int j = 0; j < n; ++j) t2.obj[j] -= f * t2.D[i][j];
    t2.val += f * t2.r[i];
  }
  CoreResult res;
  if (!t2.optimize()) {
    res.status = LPStatus::Unbounded;
    res.value = 0;
    return res;
  }
  res.status = LPStatus::Optimal;
  res.value = t2.val;
  res.w = zeros(n);
  for (std::size_t i = 0; i < t2.basis.size(); ++i) res.w[t2.basis[i]] = t2.r[i];
  return res;
}

void verify_farkas(const RMat& A, const RVec& b, const RMat& E, const RVec& f,
                   const RVec& y, bool vars_nonneg) {
  const std::size_t mi = A.size();
  const std::size_t dim = !A.empty() ? A[0].size() : (!E.empty() ? E[0].size() : 0);
  Rational rhs_combo(0);
  for (std::size_t i = 0; i < mi; ++i) {
    if (sgn(y[i]) < 0) throw std::logic_error("farkas: negative inequality multiplier");
    rhs_combo += y[i] * b[i];
  }
  for (std::size_t i = 0; i < E.size(); ++i) rhs_combo += y[mi + i] * f[i];
  for (std::size_t j = 0; j < dim; ++j) {
    Rational combo(0);
    for (std::size_t i = 0; i < mi; ++i) combo += y[i] * A[i][j];
    for (std::size_t i = 0; i < E.size(); ++i) combo += y[mi + i] * E[i][j];
    if (vars_nonneg ? sgn(combo) < 0 : sgn(combo) != 0)
      throw std::logic_error("farkas: combined constraint not one-sided");
  }
  if (sgn(rhs_combo) >= 0) throw std::logic_error("farkas: rhs combination not negative");
}

}  // namespace

LPResult solve_lp(const RVec& objective, const HPolytope& h, LPSense sense) {
  h.check_consistent();
  const int dim = h.dim;
  const int mi = static_cast<int>(h.A.size());
  const int me = static_cast<int>(h.E.size());
  RVec c = objective;
  if (sense == LPSense::Minimize)
    for (Rational& v : c) v = -v;
  // variables: x = u - w (u, w >= 0), slack per inequality row
  const int n = 2 * dim + mi;
  RMat D(mi + me, zeros(n));
  RVec r(mi + me);
  for (int i = 0; i < mi; ++i) {
    for (int j = 0; j < dim; ++j) {
      D[i][j] = h.A[i][j];
      D[i][dim + j] = -h.A[i][j];
    }
    D[i][2 * dim + i] = 1;
    r[i] = h.b[i];
  }
  for (int i = 0; i < me; ++i) {
    for (int j = 0; j < dim; ++j) {
      D[mi + i][j] = h.E[i][j];
      D[mi + i][dim + j] = -h.E[i][j];
    }
    r[mi + i] = h.f[i];
  }
  RVec obj = zeros(n);
  for (int j = 0; j < dim; ++j) {
    obj[j] = c[j];
    obj[dim + j] = -c[j];
  }
  CoreResult core = simplex_core(std::move(D), std::move(r), std::move(obj));
  LPResult out;
  out.status = core.status;
  if (core.status == LPStatus::Infeasible) {
    verify_farkas(h.A, h.b, h.E, h.f, core.row_multipliers, false);
    out.farkas = std::move(core.row_multipliers);
    return out;
  }
  if (core.status == LPStatus::Unbounded) return out;
  out.value = (sense == LPSense::Minimize) ? Rational(-core.value) : core.value;
  out.x = zeros(dim);
  for (int j = 0; j < dim; ++j) out.x[j] = core.w[j] - core.w[dim + j];
  return out;
}

LPResult solve_lp_nonneg(const RVec& objective, const RMat& B, const RVec& rhs,
                         LPSense sense) {
  const int n = B.empty() ? static_cast<int>(objective.size())
                          : static_cast<int>(B[0].size());
  RVec obj = objective.empty() ? zeros(n) : objective;
  if (sense == LPSense::Minimize)
    for (Rational& v : obj) v = -v;
  CoreResult core = simplex_core(B, rhs, obj);
  LPResult out;
  out.status = core.status;
  if (core.status == LPStatus::Infeasible) {
    verify_farkas({}, {}, B, rhs, core.row_multipliers, true);
    out.farkas = std::move(core.row_multipliers);
    return out;
  }
  if (core.status == LPStatus::Unbounded) return out;
  out.value = (sense == LPSense::Minimize) ? Rational(-core.value) : core.value;
  out.x = std::move(core.w);
  return out;
}

}  // namespace pmnc
