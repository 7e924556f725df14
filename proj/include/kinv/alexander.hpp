#pragma once

// Alexander polynomial of a braid closure from the reduced Burau
// representation: Delta(t) = det(I - B) (1 - t)/(1 - t^n), up to a unit
// +-t^m which is fixed by Delta(t) = Delta(1/t) and Delta(1) = 1.

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "kinv/diagrams.hpp"
#include "kinv/poly.hpp"
#include "kinv/series.hpp"

namespace kinv {

using TPoly = Poly<vars::SmallT>;
using AlexanderPoly = TPoly;
using TMatrix = std::vector<std::vector<TPoly>>;

class AlexanderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline TMatrix identity_matrix(int n) {
  TMatrix m(n, std::vector<TPoly>(n));
  for (int i = 0; i < n; ++i) m[i][i] = TPoly(1);
  return m;
}

inline TMatrix matmul(const TMatrix& a, const TMatrix& b) {
  const std::size_t n = a.size();
  TMatrix c(n, std::vector<TPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

/// Reduced Burau image of sigma_g^{+-1}: identity except row g-1 (0-based),
/// which is (t, -t, 1) around the diagonal, or (1, -1/t, 1/t) for the inverse.
inline TMatrix burau_generator(int strands, int g) {
  const int n = strands - 1;
  TMatrix m = identity_matrix(n);
  const int i = std::abs(g) - 1;
  const TPoly t = TPoly::var(0);
  const TPoly tinv = TPoly::var(0, -1);
  if (g > 0) {
    m[i][i] = -t;
    if (i > 0) m[i][i - 1] = t;
    if (i + 1 < n) m[i][i + 1] = TPoly(1);
  } else {
    m[i][i] = -tinv;
    if (i > 0) m[i][i - 1] = TPoly(1);
    if (i + 1 < n) m[i][i + 1] = tinv;
  }
  return m;
}

inline TMatrix burau_reduced(const BraidWord& b) {
  validate(b);
  TMatrix m = identity_matrix(b.strands - 1);
  for (int g : b.letters) m = matmul(m, burau_generator(b.strands, g));
  return m;
}

/// Determinant by fraction-free (Bareiss) elimination; all divisions are exact.
inline TPoly determinant(TMatrix m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return TPoly(1);
  TPoly prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return TPoly();
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  return m[n - 1][n - 1] * Q(sign);
}

/// Multiplies by the unique +-t^m making p symmetric with p(1) = 1.
inline TPoly normalize_alexander(const TPoly& p) {
  if (p.is_zero()) throw AlexanderError("Alexander polynomial vanishes (not a knot)");
  int lo = p.min_degree(), hi = p.degree();
  if ((lo + hi) % 2 != 0) throw AlexanderError("Alexander polynomial has a half-integer center");
  TPoly r = p * TPoly::var(0, -(lo + hi) / 2);
  Q at_one = 0;
  for (const auto& t : r.terms()) at_one += t.c;
  if (at_one != 1 && at_one != -1) throw AlexanderError("Alexander polynomial has |Delta(1)| != 1");
  r = r * at_one;
  if (!(r - reflect(r)).is_zero()) throw AlexanderError("Alexander polynomial is not symmetric");
  return r;
}

inline AlexanderPoly alexander_poly(const BraidWord& b) {
  braid_to_long_knot(b);  // rejects links
  const int n = b.strands - 1;
  TMatrix m = burau_reduced(b);
  TMatrix a = identity_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] -= m[i][j];
  TPoly geometric;  // (1 - t^s)/(1 - t)
  for (int k = 0; k < b.strands; ++k) geometric += TPoly::var(0, k);
  return normalize_alexander(divide_exact(determinant(a), geometric));
}

/// Derivative of a Laurent polynomial in its variable.
template <class V>
Poly<V> laurent_derivative(const Poly<V>& p) {
  static_assert(V::count == 1);
  std::vector<typename Poly<V>::Term> out;
  for (const auto& t : p.terms())
    if (t.e[0] != 0) out.push_back({{t.e[0] - 1}, t.c * t.e[0]});
  return Poly<V>::from_terms(std::move(out));
}

/// f(e^{c x}) as a series in x.
template <class V>
Series<Q> at_exponential(const Poly<V>& f, const Q& c, int order) {
  static_assert(V::count == 1);
  Series<Q> r = Series<Q>::zero(order);
  for (const auto& t : f.terms()) r += exp(Series<Q>::monomial(1, c * t.e[0], order)) * t.c;
  return r;
}

/// 1/Delta(e^{c h lambda}) as an h-series over Q[lambda]: the coefficient of
/// h^k is (coefficient of x^k in 1/Delta(e^{cx})) lambda^k.
inline Series<Poly<vars::Lambda>> inverse_delta_series(const AlexanderPoly& delta, const Q& c, int order) {
  Series<Q> d = at_exponential(delta, c, order);
  if (is_zero(d.coeff(0))) throw AlexanderError("Delta(1) = 0: constant term is not invertible");
  Series<Q> r = inv(d);
  std::vector<Poly<vars::Lambda>> coeffs;
  for (int k = 0; k <= order; ++k) coeffs.push_back(Poly<vars::Lambda>::var(0, k, r.coeff(k)));
  return Series<Poly<vars::Lambda>>::from_coeffs(std::move(coeffs), order);
}

}  // namespace kinv
