// Exact rational scalar type and ASCII (de)serialization helpers.
//
// All polytope and inequality data in this library is computed without any
// rounding: the scalar is a GMP arbitrary-precision rational, always stored
// in lowest terms with a positive denominator (gmpxx canonicalizes on
// construction and after every arithmetic operation).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmnc {

using Rational = mpq_class;
using Integer = mpz_class;

/// Vector and dense matrix of exact rationals.
using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

/// Error for malformed textual input (scenario files, rational literals, ...).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Error for structurally well-formed but semantically invalid input.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p", or "p/q" (q > 0 after canonicalization). Throws ParseError.
Rational parse_rational(const std::string& tok);

/// Serializes in lowest terms as "p" or "p/q". Inverse of parse_rational.
std::string format_rational(const Rational& r);

/// True iff r is an integer.
bool is_integer(const Rational& r);

int sign(const Rational& r);

RVec rvec(std::initializer_list<long> xs);

/// Lexicographic comparison of rational vectors (used for canonical ordering).
int compare_lex(const RVec& a, const RVec& b);

/// Scales the vector so entries are coprime integers; the first nonzero entry
/// keeps its sign. Zero vectors are returned unchanged.
RVec integer_normalize(const RVec& v);

/// Stable 64-bit hash of a rational vector (for dedup buckets).
std::uint64_t hash_rvec(const RVec& v);

/// Smallest-denominator rational within max_err of v (continued-fraction
/// expansion, terminated once the convergent is close enough). max_err must
/// be positive; v must be finite.
Rational rational_approx(double v, double max_err);

}  // namespace pmnc
