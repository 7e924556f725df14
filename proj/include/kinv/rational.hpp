#pragma once

// Exact rationals backed by GMP. Everything numeric in kinv is built on Q.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace kinv {

using Q = mpq_class;
using Z = mpz_class;

/// Thrown for every arithmetic precondition violation (non-invertible
/// constant terms, inexact divisions, reads past a series' valid order).
class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Q make_q(long num, long den = 1) {
  if (den == 0) throw ArithmeticError("zero denominator");
  Q r(num, den);
  r.canonicalize();
  return r;
}

inline Q q_from_strings(const std::string& num, const std::string& den) {
  Q r{Z(num), Z(den)};
  if (r.get_den() == 0) throw ArithmeticError("zero denominator");
  r.canonicalize();
  return r;
}

inline bool is_zero(const Q& x) { return sgn(x) == 0; }

inline std::optional<Q> unit_inverse(const Q& x) {
  if (is_zero(x)) return std::nullopt;
  return Q(1) / x;
}

inline std::string to_string(const Q& x) { return x.get_str(); }

inline Q factorial(int n) {
  Z r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return Q(r);
}

inline Q binomial(int n, int k) {
  if (k < 0 || k > n) return Q(0);
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Q(r);
}

inline Q pow_q(const Q& x, int e) {
  if (e < 0) {
    if (is_zero(x)) throw ArithmeticError("negative power of zero");
    return pow_q(Q(1) / x, -e);
  }
  Q r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace kinv
