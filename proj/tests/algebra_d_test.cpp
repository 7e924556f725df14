#include <random>

#include <gtest/gtest.h>

#include "kinv/algebra_d.hpp"

namespace kinv::d {
namespace {

DSeries h_pow(int k, const Q& c = Q(1)) { return DSeries::monomial(k, EpsPoly(c)); }

bool same(const Element& u, const Element& v, int n) { return (u - v).vanishes_through(n); }

// Random short elements: a few monomials of low degree with small rational
// coefficients, possibly carrying h and eps.
class ElementGen {
 public:
  explicit ElementGen(unsigned seed) : rng_(seed) {}
  Element operator()() {
    Element e;
    int terms = pick(1, 3);
    for (int i = 0; i < terms; ++i) {
      Mono m{pick(0, 2), pick(0, 1), pick(0, 1), pick(0, 2)};
      Q c(pick(-3, 3), pick(1, 2));
      if (is_zero(c)) c = 1;
      e.add(m, DSeries::monomial(pick(0, 1), EpsPoly::var(0, pick(-1, 1), c)));
    }
    return e;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937 rng_;
};

TEST(Relations, XShiftsCartanGenerators) {
  Algebra alg(3);
  EXPECT_TRUE(same(alg.mul(alg.x(), alg.a()), alg.mul(alg.a(), alg.x()) - alg.x(), 3));
  Element eps = Element(DSeries::constant(EpsPoly::var(0)));
  EXPECT_TRUE(same(alg.mul(alg.x(), alg.b()), alg.mul(alg.b(), alg.x()) - alg.mul(eps, alg.x()), 3));
  EXPECT_TRUE(same(alg.mul(alg.a(), alg.y()), alg.mul(alg.y(), alg.a()) - alg.y(), 3));
}

TEST(Relations, CartanGeneratorsCommute) {
  Algebra alg(3);
  EXPECT_TRUE(alg.commutator(alg.a(), alg.b()).is_zero());
}

TEST(Relations, XYCommutator) {
  // h (xy - q_eps yx) = 1 - AB
  const int n = 4;
  Algebra alg(n);
  Element lhs = alg.mul(alg.x(), alg.y()) - alg.q_eps() * alg.mul(alg.y(), alg.x());
  Element rhs = alg.one() - alg.mul(alg.A(), alg.B());
  EXPECT_TRUE(same(h_pow(1) * lhs, rhs, n));
}

TEST(RMatrix, FirstOrder) {
  Algebra alg(1);
  Tensor expected = alg.identity(2) + alg.simple_tensor({h_pow(1) * alg.y(), alg.x()}) +
                    alg.simple_tensor({h_pow(1) * alg.b(), alg.a()});
  EXPECT_TRUE((alg.R() - expected).vanishes_through(1));
}

TEST(RMatrix, InverseBothSides) {
  Algebra alg(4);
  Tensor id = alg.identity(2);
  EXPECT_TRUE((alg.mul(alg.R(), alg.R_inverse()) - id).vanishes_through(4));
  EXPECT_TRUE((alg.mul(alg.R_inverse(), alg.R()) - id).vanishes_through(4));
}

TEST(Pivot, KappaSquaredIsAB) {
  Algebra alg(5);
  EXPECT_TRUE(same(alg.mul(alg.kappa(), alg.kappa()), alg.mul(alg.A(), alg.B()), 5));
  EXPECT_TRUE(same(alg.mul(alg.kappa(1), alg.kappa(-1)), alg.one(), 5));
}

TEST(Antipode, CartanGeneratorsAreNegated) {
  Algebra alg(3);
  EXPECT_TRUE(same(alg.antipode(alg.a()), -alg.a(), 3));
  EXPECT_TRUE(same(alg.antipode(alg.b()), -alg.b(), 3));
}

TEST(Antipode, AntiHomomorphismOnXY) {
  Algebra alg(4);
  Element lhs = alg.antipode(alg.mul(alg.x(), alg.y()));
  Element rhs = alg.mul(alg.antipode(alg.y()), alg.antipode(alg.x()));
  EXPECT_TRUE(same(lhs, rhs, 4));
}

TEST(Antipode, SquareIsConjugationByPivot) {
  Algebra alg(3);
  Element kinv = alg.kappa(-1);
  for (const Element& u : {alg.x(), alg.y(), alg.mul(alg.x(), alg.y())}) {
    Element ss = alg.antipode(alg.antipode(u));
    EXPECT_TRUE(same(ss, alg.mul(kinv, u, alg.kappa()), 3)) << u.to_string();
  }
}

TEST(Antipode, PropertyAntiMultiplicative) {
  Algebra alg(3);
  ElementGen gen(11);
  for (int trial = 0; trial < 12; ++trial) {
    Element u = gen(), v = gen();
    Element lhs = alg.antipode(alg.mul(u, v));
    Element rhs = alg.mul(alg.antipode(v), alg.antipode(u));
    ASSERT_TRUE(same(lhs, rhs, 3)) << u.to_string() << " | " << v.to_string();
  }
}

TEST(Product, PropertyAssociative) {
  Algebra alg(3);
  ElementGen gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    Element u = gen(), v = gen(), w = gen();
    ASSERT_TRUE(same(alg.mul(alg.mul(u, v), w), alg.mul(u, alg.mul(v, w)), 3))
        << u.to_string() << " | " << v.to_string() << " | " << w.to_string();
  }
}

TEST(Product, PropertyInverse) {
  Algebra alg(3);
  ElementGen gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    Element u = alg.one() + h_pow(1) * gen();
    Element ui = alg.inverse(u);
    ASSERT_TRUE(same(alg.mul(u, ui), alg.one(), 3));
    ASSERT_TRUE(same(alg.mul(ui, u), alg.one(), 3));
  }
}

TEST(Central, WAndT) {
  Algebra alg(3);
  EXPECT_TRUE(alg.is_central(alg.W()));
  EXPECT_TRUE(alg.is_central(alg.T()));
  EXPECT_FALSE(alg.is_central(alg.x()));
  EXPECT_FALSE(alg.is_central(alg.A()));
}

TEST(Central, RibbonElement) {
  Algebra alg(3);
  EXPECT_TRUE(alg.is_central(alg.ribbon()));
}

TEST(Twisting, Examples) {
  Algebra alg(3);
  EXPECT_TRUE(alg.is_twisting_element(alg.kappa()));
  EXPECT_TRUE(alg.is_twisting_element(alg.A()));
  EXPECT_FALSE(alg.is_twisting_element(alg.one() + h_pow(1) * alg.y()));
}

TEST(Twisting, RoundTrip) {
  Algebra alg(3);
  Element phi = alg.A();
  Tensor back = alg.twist(alg.twist(alg.R(), phi), alg.inverse(phi));
  EXPECT_TRUE((back - alg.R()).vanishes_through(3));
}

TEST(XC, AxiomsOrderZero) {
  Algebra alg(0);
  EXPECT_TRUE(verify_xc(alg, alg.R(), alg.kappa()).all());
}

TEST(XC, AxiomsOrderThree) {
  Algebra alg(3);
  XCReport r = verify_xc(alg, alg.R(), alg.kappa());
  EXPECT_TRUE(r.conjugation_invariance);
  EXPECT_TRUE(r.pivot_trace);
  EXPECT_TRUE(r.kink_cancellation);
  EXPECT_TRUE(r.yang_baxter);
}

TEST(XC, TwistedRMatrixKeepsAxioms) {
  Algebra alg(2);
  EXPECT_TRUE(verify_xc(alg, alg.twist(alg.R(), alg.kappa()), alg.kappa()).all());
}

TEST(XC, WrongPivotFails) {
  Algebra alg(2);
  EXPECT_FALSE(verify_xc(alg, alg.R(), alg.kappa(-1)).all());
}

TEST(CartanTwist, Orders) {
  for (int n : {0, 2, 4}) {
    Algebra alg(n);
    EXPECT_TRUE(CartanTwist(alg).holds()) << "order " << n;
  }
}

TEST(Json, ElementShape) {
  Algebra alg(1);
  auto j = to_json(alg.x());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0][0], json::array({0, 0, 0, 1}));
}

}  // namespace
}  // namespace kinv::d
