#pragma once

// Substitutions between the coefficient rings: a polynomial variable
// replaced by an h-series (eps -> 2h, t -> e^{2h lambda}), or by another
// polynomial (lambda -> n - 1).

#include <cstddef>
#include <map>

#include "kinv/poly.hpp"
#include "kinv/series.hpp"

namespace kinv {

namespace detail {

// Caches integer powers (including negative ones) of a series.
template <class C>
class PowerCache {
 public:
  explicit PowerCache(const Series<C>& base) : base_(base) {}

  const Series<C>& get(int e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    Series<C> v;
    if (e == 0) {
      v = Series<C>(Q(1));
    } else if (e > 0) {
      v = get(e - 1) * base_;
    } else {
      if (!inverse_) {
        if (!unit_inverse(base_.coeff(0)))
          throw ArithmeticError("substitution of a non-invertible series into a Laurent position");
        inverse_ = inv(base_);
      }
      v = get(e + 1) * *inverse_;
    }
    return cache_.emplace(e, std::move(v)).first->second;
  }

 private:
  Series<C> base_;
  std::optional<Series<C>> inverse_;
  std::map<int, Series<C>> cache_;
};

}  // namespace detail

/// p(value) for a univariate (Laurent) polynomial p and an h-series value.
template <class V, class C>
Series<C> substitute(const Poly<V>& p, const Series<C>& value) {
  static_assert(V::count == 1);
  detail::PowerCache<C> powers(value);
  Series<C> acc;
  for (const auto& t : p.terms()) acc += powers.get(t.e[0]) * t.c;
  return acc;
}

/// Replaces the univariate coefficient variable of a series by an h-series:
/// sum_i h^i c_i(var) -> sum_i h^i c_i(value).
template <class V, class C>
Series<C> substitute(const Series<Poly<V>>& x, const Series<C>& value) {
  static_assert(V::count == 1);
  detail::PowerCache<C> powers(value);
  Series<C> acc = Series<C>::zero(x.order());
  for (int i = 0; i < x.stored(); ++i) {
    if (x.ref(i).is_zero()) continue;
    Series<C> ci;
    for (const auto& t : x.ref(i).terms()) ci += powers.get(t.e[0]) * t.c;
    acc += ci.shifted_up(i);
  }
  return acc;
}

/// Polynomial-to-polynomial substitution of a univariate variable.
template <class To, class From>
Poly<To> substitute_poly(const Poly<From>& p, const Poly<To>& value) {
  static_assert(From::count == 1);
  return p.template map_into<Poly<To>>([&](std::size_t) { return value; });
}

/// Coefficient of h^i * monomial.
template <class V>
Q coeff_of(const Series<Poly<V>>& x, int i, const typename Poly<V>::Exps& mono) {
  return x.coeff(i).coeff(mono);
}

}  // namespace kinv
