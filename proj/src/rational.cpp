#include "pmnc/rational.hpp"

#include <cmath>

namespace pmnc {

Rational parse_rational(const std::string& tok) {
  if (tok.empty()) throw ParseError("empty rational literal");
  // mpq_class accepts "p/q" and "p" but also tolerates some junk; validate
  // the character set first so errors are reported as ParseError.
  bool seen_slash = false;
  for (std::size_t i = 0; i < tok.size(); ++i) {
    char c = tok[i];
    if (c == '-' && (i == 0 || tok[i - 1] == '/')) continue;
    if (c == '/') {
      if (seen_slash || i == 0 || i + 1 == tok.size())
        throw ParseError("malformed rational: " + tok);
      seen_slash = true;
      continue;
    }
    if (c < '0' || c > '9') throw ParseError("malformed rational: " + tok);
  }
  Rational r;
  if (r.set_str(tok, 10) != 0) throw ParseError("malformed rational: " + tok);
  if (sgn(Rational(r.get_den())) == 0) throw ParseError("zero denominator: " + tok);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  return r.get_str();
}

bool is_integer(const Rational& r) {
  return r.get_den() == 1;
}

int sign(const Rational& r) {
  return sgn(r);
}

RVec rvec(std::initializer_list<long> xs) {
  RVec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

int compare_lex(const RVec& a, const RVec& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() < b.size()) return -1;
  if (a.size() > b.size()) return 1;
  return 0;
}

RVec integer_normalize(const RVec& v) {
  // lcm of denominators
  Integer l(1);
  bool all_zero = true;
  for (const Rational& r : v) {
    if (sgn(r) != 0) {
      all_zero = false;
      Integer den = r.get_den();
      l = lcm(l, den);
    }
  }
  if (all_zero) return v;
  // scale to integers, then divide by gcd
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer g(0);
  for (const Rational& r : v) {
    Rational s = r * Rational(l);
    ints.push_back(s.get_num());
    g = gcd(g, ints.back());
  }
  if (sgn(g) == 0) g = 1;
  RVec out;
  out.reserve(v.size());
  for (const Integer& z : ints) out.emplace_back(Rational(z / g));
  return out;
}

std::uint64_t hash_rvec(const RVec& v) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const Rational& r : v) mix(r.get_str());
  return h;
}

Rational rational_approx(double v, double max_err) {
  if (!(max_err > 0) || !std::isfinite(v))
    throw ValidationError("rational_approx requires finite v, max_err > 0");
  // continued-fraction convergents p_k/q_k of v; stop at the first within
  // max_err (the exact dyadic value of v is the worst case)
  const Rational target(v);  // exact
  const Rational err(max_err);
  // h_{k} = a_k h_{k-1} + h_{k-2} with seeds h_{-1} = 1, h_{-2} = 0 (and the
  // complementary seeds for the denominators)
  Integer p_prev(0), q_prev(1);
  Integer p(1), q(0);
  Rational rest = target;
  for (int it = 0; it < 128; ++it) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    Rational conv{p, q};
    conv.canonicalize();
    if (abs(conv - target) <= err) return conv;
    Rational frac = rest - Rational(a);
    if (sgn(frac) == 0) return conv;  // exhausted: conv == target
    rest = Rational(1) / frac;
  }
  return target;  // unreachable for double inputs; exact fallback
}

}  // namespace pmnc
