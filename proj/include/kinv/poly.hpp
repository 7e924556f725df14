#pragma once

// Sparse multivariate (Laurent) polynomials over Q.
//
// The variable alphabet is a compile-time tag type, so polynomials in lambda
// and polynomials in T are distinct types and cannot be mixed by accident.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinv/rational.hpp"

namespace kinv {

namespace vars {

// Each tag lists its variable names and which of them may carry negative
// exponents.
struct Lambda {
  static constexpr std::size_t count = 1;
  static constexpr std::array<std::string_view, 1> names{"lambda"};
  static constexpr std::array<bool, 1> laurent{false};
};
struct N {
  static constexpr std::size_t count = 1;
  static constexpr std::array<std::string_view, 1> names{"n"};
  static constexpr std::array<bool, 1> laurent{false};
};
struct Eps {
  static constexpr std::size_t count = 1;
  static constexpr std::array<std::string_view, 1> names{"eps"};
  static constexpr std::array<bool, 1> laurent{true};
};
struct LambdaEps {
  static constexpr std::size_t count = 2;
  static constexpr std::array<std::string_view, 2> names{"lambda", "eps"};
  static constexpr std::array<bool, 2> laurent{false, true};
};
struct BigT {
  static constexpr std::size_t count = 1;
  static constexpr std::array<std::string_view, 1> names{"T"};
  static constexpr std::array<bool, 1> laurent{true};
};
struct SmallT {
  static constexpr std::size_t count = 1;
  static constexpr std::array<std::string_view, 1> names{"t"};
  static constexpr std::array<bool, 1> laurent{true};
};
// q = s^2, so half-integer powers of q are integer powers of s.
struct S {
  static constexpr std::size_t count = 1;
  static constexpr std::array<std::string_view, 1> names{"s"};
  static constexpr std::array<bool, 1> laurent{true};
};
// Generic Taylor variable used for fixed-T reorganisations.
struct X {
  static constexpr std::size_t count = 1;
  static constexpr std::array<std::string_view, 1> names{"x"};
  static constexpr std::array<bool, 1> laurent{false};
};
// The commuting Cartan generators a, b of the algebra D.
struct AB {
  static constexpr std::size_t count = 2;
  static constexpr std::array<std::string_view, 2> names{"a", "b"};
  static constexpr std::array<bool, 2> laurent{false, false};
};
// Cartan part of D together with its ground-field parameter.
struct ABEps {
  static constexpr std::size_t count = 3;
  static constexpr std::array<std::string_view, 3> names{"a", "b", "eps"};
  static constexpr std::array<bool, 3> laurent{false, false, true};
};

}  // namespace vars

template <class V>
class Poly {
 public:
  static constexpr std::size_t nvars = V::count;
  using Vars = V;
  using Exps = std::array<int, nvars>;

  struct Term {
    Exps e;
    Q c;
    bool operator==(const Term& o) const { return e == o.e && c == o.c; }
  };

  Poly() = default;
  Poly(const Q& c) {  // NOLINT(google-explicit-constructor)
    if (!kinv::is_zero(c)) terms_.push_back({Exps{}, c});
  }
  Poly(long c) : Poly(Q(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly monomial(const Exps& e, const Q& c = Q(1)) {
    check_exponents(e);
    Poly p;
    if (!kinv::is_zero(c)) p.terms_.push_back({e, c});
    return p;
  }

  static Poly var(std::size_t i, int power = 1, const Q& c = Q(1)) {
    Exps e{};
    e[i] = power;
    return monomial(e, c);
  }

  /// Builds from unsorted, possibly repeated terms.
  static Poly from_terms(std::vector<Term> terms) {
    for (const auto& t : terms) check_exponents(t.e);
    Poly p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].e == Exps{});
  }

  Q coeff(const Exps& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exps& k) { return t.e < k; });
    if (it != terms_.end() && it->e == e) return it->c;
    return Q(0);
  }
  Q constant_term() const { return coeff(Exps{}); }

  /// Highest exponent of variable i; undefined for the zero polynomial.
  int degree(std::size_t i = 0) const {
    int d = 0;
    bool first = true;
    for (const auto& t : terms_) {
      if (first || t.e[i] > d) d = t.e[i];
      first = false;
    }
    return d;
  }
  int min_degree(std::size_t i = 0) const {
    int d = 0;
    bool first = true;
    for (const auto& t : terms_) {
      if (first || t.e[i] < d) d = t.e[i];
      first = false;
    }
    return d;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
      terms_ = o.terms_;
      return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->e < b->e)) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->e < a->e) {
        out.push_back(*b++);
      } else {
        Q c = a->c + b->c;
        if (!kinv::is_zero(c)) out.push_back({a->e, std::move(c)});
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }

  Poly& operator*=(const Q& s) {
    if (kinv::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Q& s) { return a *= s; }
  friend Poly operator*(const Q& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (b.terms_.size() == 1 && b.terms_[0].e == Exps{}) return a * b.terms_[0].c;
    if (a.terms_.size() == 1 && a.terms_[0].e == Exps{}) return b * a.terms_[0].c;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        Exps e;
        for (std::size_t i = 0; i < nvars; ++i) e[i] = x.e[i] + y.e[i];
        r.terms_.push_back({e, x.c * y.c});
      }
    }
    r.normalize();
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Multiplies by the monomial with exponents e.
  Poly shifted(const Exps& e) const {
    Poly r = *this;
    for (auto& t : r.terms_) {
      for (std::size_t i = 0; i < nvars; ++i) t.e[i] += e[i];
      check_exponents(t.e);
    }
    return r;
  }

  Poly derivative(std::size_t i = 0) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.e[i] == 0) continue;
      Term n = t;
      n.c *= t.e[i];
      n.e[i] -= 1;
      out.push_back(std::move(n));
    }
    return from_terms(std::move(out));
  }

  /// Drops every term for which keep(exps) is false.
  template <class Pred>
  Poly filtered(Pred keep) const {
    Poly r;
    for (const auto& t : terms_)
      if (keep(t.e)) r.terms_.push_back(t);
    return r;
  }

  /// Generic ring homomorphism: x_i -> image(i). The target ring R must
  /// provide +, *, a constructor from Q and pow_ring(R, int).
  template <class R, class Image>
  R map_into(Image&& image) const {
    std::array<std::optional<R>, nvars> base;
    for (std::size_t i = 0; i < nvars; ++i) base[i] = image(i);
    R acc(Q(0));
    for (const auto& t : terms_) {
      R m(t.c);
      for (std::size_t i = 0; i < nvars; ++i)
        if (t.e[i] != 0) m = m * pow_ring(*base[i], t.e[i]);
      acc = acc + m;
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      Q c = t.c;
      bool neg = sgn(c) < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      bool constant = t.e == Exps{};
      bool unit = c == 1;
      if (constant || !unit) os << c.get_str();
      bool need_star = !constant && !unit;
      for (std::size_t i = 0; i < nvars; ++i) {
        if (t.e[i] == 0) continue;
        if (need_star) os << "*";
        os << V::names[i];
        if (t.e[i] != 1) os << "^" << t.e[i];
        need_star = true;
      }
    }
    return os.str();
  }

 private:
  static void check_exponents(const Exps& e) {
    for (std::size_t i = 0; i < nvars; ++i)
      if (e[i] < 0 && !V::laurent[i])
        throw ArithmeticError("negative exponent for polynomial variable " +
                              std::string(V::names[i]));
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.e < y.e; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().e == t.e) {
        out.back().c += t.c;
      } else {
        if (!out.empty() && kinv::is_zero(out.back().c)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && kinv::is_zero(out.back().c)) out.pop_back();
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
};

template <class V>
bool is_zero(const Poly<V>& p) {
  return p.is_zero();
}

/// A polynomial is a unit iff it is a single monomial supported on Laurent
/// variables only.
template <class V>
std::optional<Poly<V>> unit_inverse(const Poly<V>& p) {
  if (p.size() != 1) return std::nullopt;
  const auto& t = p.terms().front();
  typename Poly<V>::Exps e;
  for (std::size_t i = 0; i < V::count; ++i) {
    if (t.e[i] != 0 && !V::laurent[i]) return std::nullopt;
    e[i] = -t.e[i];
  }
  return Poly<V>::monomial(e, Q(1) / t.c);
}

template <class V>
Poly<V> pow_ring(const Poly<V>& p, int e) {
  if (e < 0) {
    auto inv = unit_inverse(p);
    if (!inv) throw ArithmeticError("negative power of a non-unit polynomial");
    return pow_ring(*inv, -e);
  }
  Poly<V> r(Q(1));
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

inline Q pow_ring(const Q& x, int e) { return pow_q(x, e); }

template <class V>
std::string to_string(const Poly<V>& p) {
  return p.to_string();
}

/// Renames the single variable of a univariate polynomial (e.g. T -> t).
template <class To, class From>
Poly<To> rename(const Poly<From>& p) {
  static_assert(From::count == To::count);
  std::vector<typename Poly<To>::Term> out;
  for (const auto& t : p.terms()) {
    typename Poly<To>::Exps e;
    for (std::size_t i = 0; i < From::count; ++i) e[i] = t.e[i];
    out.push_back({e, t.c});
  }
  return Poly<To>::from_terms(std::move(out));
}

/// Univariate Laurent polynomial p(t) -> p(1/t).
template <class V>
Poly<V> reflect(const Poly<V>& p) {
  static_assert(V::count == 1);
  std::vector<typename Poly<V>::Term> out;
  for (const auto& t : p.terms()) out.push_back({{-t.e[0]}, t.c});
  return Poly<V>::from_terms(std::move(out));
}

/// Exact division of univariate Laurent polynomials; throws when the
/// remainder is nonzero.
template <class V>
Poly<V> divide_exact(const Poly<V>& num, const Poly<V>& den) {
  static_assert(V::count == 1);
  if (den.is_zero()) throw ArithmeticError("division by zero polynomial");
  Poly<V> rem = num;
  Poly<V> quot;
  const auto& lead = den.terms().back();
  while (!rem.is_zero()) {
    const auto rt = rem.terms().back();
    if (rem.degree() - rem.min_degree() < den.degree() - den.min_degree())
      throw ArithmeticError("inexact polynomial division");
    auto m = Poly<V>::monomial({rt.e[0] - lead.e[0]}, rt.c / lead.c);
    quot += m;
    rem -= m * den;
  }
  return quot;
}

}  // namespace kinv
