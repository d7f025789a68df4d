#include "pmnc/linalg_exact.hpp"

#include <cassert>

namespace pmnc {

std::vector<int> rref_in_place(RMat& m, const std::vector<int>* cols) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int ncols = static_cast<int>(m[0].size());
  std::vector<int> order;
  if (cols) {
    order = *cols;
  } else {
    order.resize(ncols);
    for (int j = 0; j < ncols; ++j) order[j] = j;
  }
  int r = 0;
  for (int cj : order) {
    if (r >= rows) break;
    // partial pivoting is unnecessary over Q; pick the first nonzero
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (sgn(m[i][cj]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    Rational inv = m[r][cj];
    for (int j = 0; j < ncols; ++j) m[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][cj]) == 0) continue;
      Rational f = m[i][cj];
      for (int j = 0; j < ncols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(cj);
    ++r;
  }
  return pivots;
}

int rank(RMat m) {
  return static_cast<int>(rref_in_place(m).size());
}

RMat nullspace(RMat m) {
  if (m.empty()) return {};
  const int ncols = static_cast<int>(m[0].size());
  std::vector<int> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : pivots) is_pivot[p] = true;
  RMat basis;
  for (int j = 0; j < ncols; ++j) {
    if (is_pivot[j]) continue;
    RVec v = zeros(ncols);
    v[j] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::pair<int, RMat> nullspace_and_rank(const RMat& m) {
  if (m.empty()) return {0, {}};
  RMat red = m;
  const int ncols = static_cast<int>(red[0].size());
  std::vector<int> pivots = rref_in_place(red);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : pivots) is_pivot[p] = true;
  RMat basis;
  for (int j = 0; j < ncols; ++j) {
    if (is_pivot[j]) continue;
    RVec v = zeros(ncols);
    v[j] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red[i][j];
    basis.push_back(std::move(v));
  }
  return {static_cast<int>(pivots.size()), std::move(basis)};
}

std::optional<RVec> solve_linear(RMat m, RVec rhs) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return RVec{};
  const int ncols = static_cast<int>(m[0].size());
  for (int i = 0; i < rows; ++i) m[i].push_back(rhs[i]);
  RMat aug = std::move(m);
  std::vector<int> order(ncols);
  for (int j = 0; j < ncols; ++j) order[j] = j;
  std::vector<int> pivots = rref_in_place(aug, &order);
  // inconsistent iff some row is (0 ... 0 | nonzero)
  for (int i = 0; i < rows; ++i) {
    bool all_zero = true;
    for (int j = 0; j < ncols; ++j) {
      if (sgn(aug[i][j]) != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero && sgn(aug[i][ncols]) != 0) return std::nullopt;
  }
  RVec x = zeros(ncols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][ncols];
  return x;
}

Rational dot(const RVec& a, const RVec& b) {
  assert(a.size() == b.size());
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

RVec mat_vec(const RMat& m, const RVec& x) {
  RVec y;
  y.reserve(m.size());
  for (const RVec& row : m) y.push_back(dot(row, x));
  return y;
}

RMat transpose(const RMat& m) {
  if (m.empty()) return {};
  RMat t(m[0].size(), RVec(m.size(), Rational(0)));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

RVec axpy(const RVec& a, const Rational& c, const RVec& b) {
  assert(a.size() == b.size());
  RVec out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += c * b[i];
  return out;
}

RVec zeros(std::size_t n) {
  return RVec(n, Rational(0));
}

RMat identity(std::size_t n) {
  RMat m(n, RVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace pmnc
