// Exact rational dense linear algebra: Gaussian elimination, rank, kernel,
// linear solves. Everything here is deterministic and overflow-free.
#pragma once

#include "pmnc/rational.hpp"

#include <optional>
#include <utility>

namespace pmnc {

/// Reduced row echelon form, in place. Returns the pivot column of every
/// pivot row (row i of the result has its pivot at pivots[i]); rank is
/// pivots.size(). Column order is left to right unless a custom column
/// order is supplied (elimination then prefers earlier entries of `cols`).
std::vector<int> rref_in_place(RMat& m, const std::vector<int>* cols = nullptr);

int rank(RMat m);

/// Basis of the right kernel {x : m x = 0}; vectors of length = #columns.
/// Deterministic: free variables in increasing column order, each basis
/// vector has a 1 in its free column.
RMat nullspace(RMat m);

/// Rank and kernel basis in one elimination pass. An empty matrix has
/// rank 0 and an empty kernel basis (the column count is unknown).
std::pair<int, RMat> nullspace_and_rank(const RMat& m);

/// Solves m x = rhs. Returns one solution (free variables set to 0) or
/// nullopt when inconsistent.
std::optional<RVec> solve_linear(RMat m, RVec rhs);

/// Matrix-vector and dot products.
Rational dot(const RVec& a, const RVec& b);
RVec mat_vec(const RMat& m, const RVec& x);
RMat transpose(const RMat& m);

/// a + c*b elementwise.
RVec axpy(const RVec& a, const Rational& c, const RVec& b);

RVec zeros(std::size_t n);
RMat identity(std::size_t n);

}  // namespace pmnc
