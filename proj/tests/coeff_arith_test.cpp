#include <random>

#include <gtest/gtest.h>

#include "kinv/json_io.hpp"
#include "kinv/poly.hpp"
#include "kinv/series.hpp"
#include "kinv/substitute.hpp"

namespace kinv {
namespace {

using LPoly = Poly<vars::Lambda>;
using EPoly = Poly<vars::Eps>;
using QSeries = Series<Q>;
using LSeries = Series<LPoly>;

const LPoly kLambda = LPoly::var(0);

QSeries h_times(const Q& c, int order) { return QSeries::monomial(1, c, order); }

TEST(Series, ExpTimesExpOfNegativeIsOne) {
  auto e = exp(h_times(1, 8));
  auto f = exp(h_times(-1, 8));
  auto p = e * f;
  EXPECT_EQ(p.order(), 8);
  for (int i = 0; i <= 8; ++i) EXPECT_EQ(p.coeff(i), i == 0 ? Q(1) : Q(0));
}

TEST(Series, InverseOfOnePlusHIsGeometric) {
  auto x = QSeries::from_coeffs({Q(1), Q(1)}, 7);
  auto y = inv(x);
  for (int i = 0; i <= 7; ++i) EXPECT_EQ(y.coeff(i), i % 2 == 0 ? Q(1) : Q(-1));
  EXPECT_THROW(y.coeff(8), ArithmeticError);
}

TEST(Series, DivExactQuantumIntegerOracle) {
  // (e^{h lambda} - e^{-h lambda}) / (e^h - e^{-h}) expanded by hand:
  // lambda + lambda(lambda^2-1)/6 h^2 + lambda(lambda^2-1)(3lambda^2-7)/360 h^4.
  const int n = 6;
  auto num = exp(LSeries::monomial(1, kLambda, n)) - exp(LSeries::monomial(1, -kLambda, n));
  auto den = exp(LSeries::monomial(1, LPoly(1), n)) - exp(LSeries::monomial(1, LPoly(-1), n));
  auto q = div_exact(num, den);
  EXPECT_EQ(q.order(), n - 1);
  LPoly l2 = kLambda * kLambda;
  EXPECT_EQ(q.coeff(0), kLambda);
  EXPECT_EQ(q.coeff(1), LPoly());
  EXPECT_EQ(q.coeff(2), kLambda * (l2 - LPoly(1)) * make_q(1, 6));
  EXPECT_EQ(q.coeff(3), LPoly());
  EXPECT_EQ(q.coeff(4), kLambda * (l2 - LPoly(1)) * (l2 * Q(3) - LPoly(7)) * make_q(1, 360));
  EXPECT_THROW(q.coeff(6), ArithmeticError);
}

TEST(Series, ValidOrderDropsByOnePerDivision) {
  const int start = 9;
  auto two_sinh = exp(h_times(1, start)) - exp(h_times(-1, start));
  QSeries x = two_sinh;
  for (int k = 1; k <= 4; ++k) {
    x = div_exact(x * two_sinh, two_sinh);
    EXPECT_EQ(x.order(), start - k);
  }
}

TEST(Series, Errors) {
  EXPECT_THROW(inv(QSeries::from_coeffs({Q(0), Q(1)}, 4)), ArithmeticError);
  EXPECT_THROW(exp(QSeries::from_coeffs({Q(1), Q(1)}, 4)), ArithmeticError);
  EXPECT_THROW(div_exact(QSeries::from_coeffs({Q(1), Q(1)}, 4), h_times(1, 4)), ArithmeticError);
  EXPECT_THROW(log(QSeries::from_coeffs({Q(2), Q(1)}, 4)), ArithmeticError);
  EXPECT_THROW(exp(h_times(1, kExact)), ArithmeticError);
  // Laurent-only unit: eps is invertible, lambda is not.
  EXPECT_TRUE(unit_inverse(EPoly::var(0)).has_value());
  EXPECT_FALSE(unit_inverse(kLambda).has_value());
  EXPECT_THROW(LPoly::var(0, -1), ArithmeticError);
}

// Hand-rolled generator of small series over Q[lambda].
class SeriesGen {
 public:
  explicit SeriesGen(unsigned seed) : rng_(seed) {}

  LSeries next(int order, bool zero_constant = false, bool unit_constant = false) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> deg(0, 2);
    std::vector<LPoly> c;
    for (int i = 0; i <= order; ++i) {
      LPoly p;
      int d = (i == 0 && unit_constant) ? 0 : deg(rng_);
      for (int k = 0; k <= d; ++k) p += LPoly::var(0, k, make_q(coeff(rng_), den(rng_)));
      c.push_back(p);
    }
    if (zero_constant) c[0] = LPoly();
    if (unit_constant) c[0] = LPoly(make_q(1 + std::abs(coeff(rng_)), den(rng_)));
    return LSeries::from_coeffs(std::move(c), order);
  }

 private:
  std::mt19937 rng_;
};

TEST(SeriesProperties, RingAxioms) {
  SeriesGen gen(12345);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = gen.next(5), y = gen.next(5), z = gen.next(5);
    EXPECT_TRUE(((x * y) * z).equal_through(x * (y * z), 5));
    EXPECT_TRUE((x * (y + z)).equal_through(x * y + x * z, 5));
    EXPECT_TRUE((x * y).equal_through(y * x, 5));
  }
}

TEST(SeriesProperties, ExpLogRoundTrip) {
  SeriesGen gen(777);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = gen.next(5, /*zero_constant=*/true);
    auto one_plus = LSeries(Q(1)) + s;
    EXPECT_TRUE(exp(log(one_plus)).equal_through(one_plus, 5));
    EXPECT_TRUE(log(exp(s)).equal_through(s, 5));
  }
}

TEST(SeriesProperties, InverseIsInverse) {
  SeriesGen gen(4242);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = gen.next(6, false, /*unit_constant=*/true);
    EXPECT_TRUE((x * inv(x)).equal_through(LSeries(Q(1)), 6));
  }
}

TEST(CoeffOf, TaylorCoefficients) {
  auto e = exp(LSeries::monomial(1, kLambda, 4));
  EXPECT_EQ(coeff_of(e, 2, {2}), make_q(1, 2));
  EXPECT_EQ(coeff_of(LSeries(Q(1)), 3, {0}), Q(0));
  // {2}_{q_eps} = 1 + e^{eps h}; the h^1 eps^1 coefficient is 1.
  auto two = Series<EPoly>(Q(1)) + exp(Series<EPoly>::monomial(1, EPoly::var(0), 4));
  EXPECT_EQ(coeff_of(two, 1, {1}), Q(1));
  EXPECT_THROW(coeff_of(two, 5, {0}), ArithmeticError);
}

TEST(Substitute, EpsToTwoH) {
  auto eps_h = Series<EPoly>::monomial(1, EPoly::var(0));
  auto r = substitute(eps_h, QSeries::monomial(1, Q(2)));
  EXPECT_EQ(r.coeff(2), Q(2));
  EXPECT_EQ(r.coeff(1), Q(0));
  EXPECT_EQ(r.stored(), 3);
  // A negative eps power cannot be sent to 2h.
  auto inv_eps = Series<EPoly>::monomial(1, EPoly::var(0, -1), 3);
  EXPECT_THROW(substitute(inv_eps, QSeries::monomial(1, Q(2))), ArithmeticError);
  EXPECT_EQ(substitute(LPoly(1), LSeries::monomial(1, kLambda, 3)).coeff(0), LPoly(1));
}

TEST(Substitute, ShiftLambdaToNMinusOne) {
  using NPoly = Poly<vars::N>;
  const int order = 6;
  // e^{-2 sigma h lambda} with sigma = -1, then lambda -> n - 1.
  auto t = exp(LSeries::monomial(1, kLambda * Q(2), order));
  NPoly n_minus_1 = NPoly::var(0) - NPoly(1);
  auto shifted = t.map([&](const LPoly& c) { return substitute_poly(c, n_minus_1); });
  auto expected = exp(Series<NPoly>::monomial(1, n_minus_1 * Q(2), order));
  EXPECT_TRUE(shifted.equal_through(expected, order));
  // ... which equals e^{2hn} e^{-2h}: the q^{2n-2} vs q^{2n} shift.
  auto q2n = exp(Series<NPoly>::monomial(1, NPoly::var(0) * Q(2), order));
  auto qm2 = exp(Series<NPoly>::monomial(1, NPoly(-2), order));
  EXPECT_TRUE(shifted.equal_through(q2n * qm2, order));
}

TEST(LaurentPoly, PrintingAndDivision) {
  using TPoly = Poly<vars::SmallT>;
  TPoly t = TPoly::var(0);
  TPoly delta = t + TPoly::var(0, -1) - TPoly(1);
  EXPECT_EQ(delta.to_string(), "t^-1 - 1 + t");
  TPoly prod = delta * (TPoly(1) - t);
  EXPECT_EQ(divide_exact(prod, TPoly(1) - t), delta);
  EXPECT_THROW(divide_exact(delta, TPoly(1) - t), ArithmeticError);
  EXPECT_EQ(reflect(t * t), TPoly::var(0, -2));
  EXPECT_EQ(delta.derivative(), TPoly(1) - TPoly::var(0, -2));
}

TEST(Json, PolynomialAndSeriesRoundTrip) {
  SeriesGen gen(99);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = gen.next(4);
    auto j = to_json(x);
    auto back = series_from_json<vars::Lambda>(j);
    EXPECT_EQ(back, x);
    EXPECT_EQ(to_json(back).dump(), j.dump());
  }
  auto big = LPoly(Q(Z("123456789012345678901234567890"), Z(7)));
  EXPECT_EQ(to_json(big).dump(), R"([[[0],"123456789012345678901234567890","7"]])");
}

}  // namespace
}  // namespace kinv
