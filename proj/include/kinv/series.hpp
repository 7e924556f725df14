#pragma once

// Truncated power series in the formal parameter h.
//
// A Series stores coefficients of h^0 .. h^k (k <= order) and a valid order:
// every coefficient up to the valid order is exact, coefficients past the
// stored vector are zero, and anything past the valid order is unknown and
// must not be read. Polynomials in h (constants, h itself) carry the
// sentinel order kExact and never limit the precision of a result.

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kinv/poly.hpp"
#include "kinv/rational.hpp"

namespace kinv {

inline constexpr int kExact = INT_MAX / 4;

template <class C>
class Series {
 public:
  using Coeff = C;

  /// The exact zero series.
  Series() : order_(kExact) {}
  Series(const Q& c) : order_(kExact) {  // NOLINT(google-explicit-constructor)
    if (!kinv::is_zero(c)) c_.push_back(C(c));
  }

  static Series zero(int order) {
    Series s;
    s.order_ = order;
    return s;
  }
  static Series constant(const C& c, int order = kExact) {
    Series s;
    s.order_ = order;
    if (!kinv::is_zero(c)) s.c_.push_back(c);
    return s;
  }
  /// coeff * h^k, exact.
  static Series monomial(int k, const C& coeff = C(Q(1)), int order = kExact) {
    Series s;
    s.order_ = order;
    if (k <= order && !kinv::is_zero(coeff)) {
      s.c_.assign(k + 1, C());
      s.c_[k] = coeff;
    }
    return s;
  }
  static Series from_coeffs(std::vector<C> coeffs, int order) {
    Series s;
    s.order_ = order;
    s.c_ = std::move(coeffs);
    s.trim();
    return s;
  }

  int order() const { return order_; }
  bool is_exact() const { return order_ >= kExact; }
  /// Number of stored coefficients (zero beyond).
  int stored() const { return static_cast<int>(c_.size()); }

  /// Coefficient of h^i; reading past the valid order is an error.
  C coeff(int i) const {
    if (i < 0) return C();
    if (i > order_)
      throw ArithmeticError("coefficient h^" + std::to_string(i) + " requested beyond valid order " +
                            std::to_string(order_));
    if (i >= stored()) return C();
    return c_[i];
  }
  const C& ref(int i) const { return c_[i]; }
  C operator[](int i) const { return coeff(i); }

  void set(int i, C value) {
    if (i > order_) throw ArithmeticError("set beyond valid order");
    if (i >= stored()) {
      if (kinv::is_zero(value)) return;
      c_.resize(i + 1);
    }
    c_[i] = std::move(value);
    trim();
  }

  /// Lowest index with a nonzero coefficient; order()+1 for zero.
  int valuation() const {
    for (int i = 0; i < stored(); ++i)
      if (!kinv::is_zero(c_[i])) return i;
    return order_ >= kExact ? kExact : order_ + 1;
  }
  bool is_zero() const { return c_.empty(); }

  Series truncated(int order) const {
    Series s = *this;
    s.order_ = std::min(order_, order);
    if (s.stored() > s.order_ + 1) s.c_.resize(s.order_ + 1);
    s.trim();
    return s;
  }

  Series operator-() const {
    Series s = *this;
    for (auto& c : s.c_) c = -c;
    return s;
  }

  Series& operator+=(const Series& o) {
    order_ = std::min(order_, o.order_);
    int n = std::min(std::max(stored(), o.stored()), order_ + 1);
    c_.resize(n);
    for (int i = 0; i < n && i < o.stored(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Series& operator-=(const Series& o) { return *this += -o; }

  Series& operator*=(const Q& s) {
    if (kinv::is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }
  Series& scale(const C& s) {
    for (auto& c : c_) c = c * s;
    trim();
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Q& s) { return a *= s; }
  friend Series operator*(const Q& s, Series a) { return a *= s; }

  friend Series operator*(const Series& a, const Series& b) {
    Series r;
    r.order_ = std::min(a.order_, b.order_);
    if (a.c_.empty() || b.c_.empty()) return r;
    int n = std::min(a.stored() + b.stored() - 1, r.order_ + 1);
    r.c_.assign(n, C());
    for (int i = 0; i < a.stored() && i < n; ++i) {
      if (kinv::is_zero(a.c_[i])) continue;
      for (int j = 0; i + j < n && j < b.stored(); ++j) {
        if (kinv::is_zero(b.c_[j])) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    r.trim();
    return r;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  /// Multiplies by h^k (exact shift up).
  Series shifted_up(int k) const {
    Series s;
    s.order_ = order_ >= kExact ? kExact : order_ + k;
    if (c_.empty()) return s;
    s.c_.assign(k, C());
    s.c_.insert(s.c_.end(), c_.begin(), c_.end());
    return s;
  }

  bool operator==(const Series& o) const { return order_ == o.order_ && c_ == o.c_; }

  /// Equality of all coefficients through h^n (both must be valid there).
  bool equal_through(const Series& o, int n) const {
    for (int i = 0; i <= n; ++i)
      if (coeff(i) != o.coeff(i)) return false;
    return true;
  }

  /// Applies f to every coefficient, producing a series over another ring.
  template <class F>
  auto map(F&& f) const -> Series<decltype(f(std::declval<const C&>()))> {
    using D = decltype(f(std::declval<const C&>()));
    std::vector<D> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(f(c));
    return Series<D>::from_coeffs(std::move(out), order_);
  }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < stored(); ++i) {
      if (kinv::is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + kinv::to_string(c_[i]) + ")";
      if (i > 0) s += "*h^" + std::to_string(i);
    }
    if (s.empty()) s = "0";
    if (!is_exact()) s += " + O(h^" + std::to_string(order_ + 1) + ")";
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && kinv::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<C> c_;
  int order_;
};

template <class C>
bool is_zero(const Series<C>& s) {
  return s.is_zero();
}

template <class C>
std::string to_string(const Series<C>& s) {
  return s.to_string();
}

namespace detail {
template <class C>
int require_finite(const Series<C>& x, const char* what) {
  if (x.is_exact()) throw ArithmeticError(std::string(what) + " needs a finite truncation order");
  return x.order();
}
}  // namespace detail

/// Multiplicative inverse; requires an invertible constant term.
template <class C>
Series<C> inv(const Series<C>& x) {
  int n = detail::require_finite(x, "inv");
  auto u = unit_inverse(x.coeff(0));
  if (!u) throw ArithmeticError("series inverse: constant term is not invertible");
  std::vector<C> z(n + 1);
  z[0] = *u;
  for (int i = 1; i <= n; ++i) {
    C acc;
    for (int k = 1; k <= i && k < x.stored(); ++k) acc += x.ref(k) * z[i - k];
    z[i] = -(acc * *u);
  }
  return Series<C>::from_coeffs(std::move(z), n);
}

/// exp(x) for x with zero constant term.
template <class C>
Series<C> exp(const Series<C>& x) {
  int n = detail::require_finite(x, "exp");
  if (!kinv::is_zero(x.coeff(0))) throw ArithmeticError("series exp: nonzero constant term");
  std::vector<C> e(n + 1);
  e[0] = C(Q(1));
  for (int i = 1; i <= n; ++i) {
    C acc;
    for (int k = 1; k <= i && k < x.stored(); ++k) {
      if (kinv::is_zero(x.ref(k))) continue;
      acc += (x.ref(k) * e[i - k]) * Q(k);
    }
    e[i] = acc * make_q(1, i);
  }
  return Series<C>::from_coeffs(std::move(e), n);
}

/// log(x) for x with constant term 1.
template <class C>
Series<C> log(const Series<C>& x) {
  int n = detail::require_finite(x, "log");
  if (x.coeff(0) != C(Q(1))) throw ArithmeticError("series log: constant term must be 1");
  std::vector<C> l(n + 1);
  for (int i = 1; i <= n; ++i) {
    C acc = x.coeff(i) * Q(i);
    for (int k = 1; k < i; ++k) acc -= (l[k] * x.coeff(i - k)) * Q(k);
    l[i] = acc * make_q(1, i);
  }
  return Series<C>::from_coeffs(std::move(l), n);
}

/// Exact division by a series of h-valuation v. The numerator must vanish
/// below h^v; the result is trusted v orders less than the inputs.
template <class C>
Series<C> div_exact(const Series<C>& num, const Series<C>& den) {
  if (den.is_zero()) throw ArithmeticError("div_exact: zero divisor");
  int v = den.valuation();
  for (int i = 0; i < v; ++i)
    if (!kinv::is_zero(num.coeff(i)))
      throw ArithmeticError("div_exact: numerator valuation below divisor valuation");
  int order = std::min(num.order(), den.order());
  if (order < kExact) order -= v;
  if (order < 0) throw ArithmeticError("div_exact: no valid orders left");
  auto drop = [v, order](const Series<C>& s) {
    std::vector<C> out;
    for (int i = v; i < s.stored(); ++i) out.push_back(s.ref(i));
    return Series<C>::from_coeffs(std::move(out), order);
  };
  Series<C> d = drop(den);
  if (d.is_exact()) d = d.truncated(order);
  Series<C> nn = drop(num);
  if (order >= kExact) throw ArithmeticError("div_exact needs a finite truncation order");
  return nn * inv(d.truncated(order));
}

template <class C>
Series<C> pow_ring(const Series<C>& x, int e) {
  if (e < 0) return pow_ring(inv(x), -e);
  Series<C> r(Q(1));
  Series<C> base = x;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

/// Scalar-polynomial helpers used throughout: exp(c*h) for a coefficient c.
template <class C>
Series<C> exp_of_h_times(const C& c, int order) {
  return exp(Series<C>::monomial(1, c, order));
}

/// Substitutes a series for every h in a series whose coefficients are
/// themselves ring elements; used for eps -> 2h style substitutions by the
/// callers in substitute.hpp.
template <class C>
Series<C> compose_h(const Series<C>& outer, const Series<C>& inner) {
  if (!kinv::is_zero(inner.coeff(0)))
    throw ArithmeticError("compose_h: inner series must have zero constant term");
  int order = std::min(outer.order(), inner.order());
  Series<C> acc = Series<C>::zero(order);
  Series<C> p = Series<C>::constant(C(Q(1)), order);
  for (int i = 0; i < outer.stored() && i <= order; ++i) {
    acc += p * Series<C>::constant(outer.ref(i), order);
    p = p * inner;
  }
  return acc;
}

}  // namespace kinv
