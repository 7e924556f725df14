#include <random>

#include <gtest/gtest.h>

#include "kinv/mmr.hpp"

namespace kinv {
namespace {

LongKnotDiagram knot(const char* braid) { return braid_to_long_knot(parse_braid(braid)); }

const BigTPoly T = BigTPoly::var(0);
const BigTPoly Tinv = BigTPoly::var(0, -1);

TEST(Linsolve, SquareAndOverdetermined) {
  auto s = linsolve({{Q(1), Q(1)}, {Q(1), Q(-1)}, {Q(2), Q(0)}}, {Q(3), Q(1), Q(4)});
  EXPECT_TRUE(s.consistent);
  EXPECT_EQ(s.rank, 2);
  EXPECT_EQ(s.x, (std::vector<Q>{Q(2), Q(1)}));
  auto bad = linsolve({{Q(1), Q(1)}, {Q(1), Q(-1)}, {Q(2), Q(0)}}, {Q(3), Q(1), Q(5)});
  EXPECT_FALSE(bad.consistent);
  EXPECT_EQ(bad.first_inconsistent, 2);
}

TEST(Linsolve, PropertyRandomSystems) {
  std::mt19937 rng(31);
  auto small = [&] { return make_q(std::uniform_int_distribution<int>(-4, 4)(rng), std::uniform_int_distribution<int>(1, 3)(rng)); };
  for (int trial = 0; trial < 25; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<Q> x(n);
    for (auto& v : x) v = small();
    std::vector<std::vector<Q>> rows(n + 2, std::vector<Q>(n));
    std::vector<Q> rhs(n + 2, Q(0));
    for (int i = 0; i < n + 2; ++i)
      for (int k = 0; k < n; ++k) {
        rows[i][k] = small();
        rhs[i] += rows[i][k] * x[k];
      }
    auto s = linsolve(rows, rhs);
    ASSERT_TRUE(s.consistent);
    for (int i = 0; i < n + 2; ++i) {
      Q lhs = 0;
      for (int k = 0; k < n; ++k) lhs += rows[i][k] * s.x[k];
      EXPECT_EQ(lhs, rhs[i]);
    }
  }
}

TEST(Interpolate, RecoversPolynomial) {
  std::vector<Q> xs, ys;
  for (int n = 1; n <= 5; ++n) {
    xs.push_back(Q(n));
    ys.push_back(Q(3) * n * n * n - Q(1, 2) * n + 7);
  }
  EXPECT_EQ(interpolate(xs, ys), (std::vector<Q>{Q(7), Q(-1, 2), Q(0), Q(3), Q(0)}));
}

TEST(Rho11, ClosedForm) {
  EXPECT_TRUE(rho11_from_alexander(TPoly(1)).is_zero());
  EXPECT_EQ(rho11_from_alexander(alexander_poly(parse_braid("[1,1,1]"))), Tinv * Q(-2) - BigTPoly(2));
  EXPECT_EQ(rho11_from_alexander(alexander_poly(parse_braid("[1,-2,1,-2]"))), Tinv * Q(2) + BigTPoly(2));
}

TEST(Mirror, SubstitutionIsInvolution) {
  auto J = colored_jones_function(knot("[1,1,1,2,-1,2]"), -1, 5);
  EXPECT_TRUE(mirror_substitution(mirror_substitution(J)).j.equal_through(J.j, 5));
}

// The sign-reversed braid gives J(lambda, -h), which the Weyl symmetry
// turns into J(-lambda - 2, -h). The plain J(-lambda, -h) is a different
// series for chiral knots; the figure-eight is amphichiral.
TEST(Mirror, MirrorImageIsHReversal) {
  auto J = colored_jones_function(knot("[1,1,1]"), -1, 6);
  auto Jm = colored_jones_function(knot("[-1,-1,-1]"), -1, 6);
  LSeries h_reversed = J.j.map([](const LPoly& p) { return p; });
  for (int i = 1; i <= 6; i += 2) h_reversed = h_reversed - LSeries::monomial(i, J.j.coeff(i) * Q(2), 6);
  EXPECT_TRUE(Jm.j.equal_through(h_reversed, 6));
  EXPECT_FALSE(Jm.j.equal_through(mirror_substitution(J).j, 6));
  // At h^2 the mirror keeps -4 lambda (lambda + 2); the plain substitution gives -4 lambda (lambda - 2).
  EXPECT_EQ(Jm.j.coeff(2), LPoly::var(0) * Q(-8) - LPoly::var(0, 2, Q(4)));
  EXPECT_EQ(mirror_substitution(J).j.coeff(2), LPoly::var(0) * Q(8) - LPoly::var(0, 2, Q(4)));

  auto F = colored_jones_function(knot("[1,-2,1,-2]"), -1, 6);
  auto Fm = colored_jones_function(knot("[-1,2,-1,2]"), -1, 6);
  EXPECT_TRUE(F.j.equal_through(Fm.j, 6));
}

TEST(Mirror, Rho10ChangesSign) {
  auto d = alexander_poly(parse_braid("[1,1,1]"));
  auto r = extract_rho10(colored_jones_function(knot("[1,1,1]"), -1, 6), d, 2).poly;
  auto rm = extract_rho10(colored_jones_function(knot("[-1,-1,-1]"), -1, 6), d, 2).poly;
  EXPECT_EQ(rm, -r);
}

TEST(MMBound, HoldsAndDetectsCorruption) {
  auto d = alexander_poly(parse_braid("[1,1,1,1,1]"));
  auto J = colored_jones_function(knot("[1,1,1,1,1]"), -1, 6);
  EXPECT_TRUE(mm_bound_check(J, d).ok);
  auto bad = J;
  bad.j = bad.j + LSeries::monomial(3, LPoly::var(0, 4), 6);
  auto r = mm_bound_check(bad, d);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.bad_power, 3);
  EXPECT_EQ(r.bad_degree, 4);
  // The wrong Alexander polynomial breaks the grade-0 part.
  auto w = mm_bound_check(J, alexander_poly(parse_braid("[1,1,1]")));
  EXPECT_FALSE(w.ok);
  EXPECT_EQ(w.bad_power, 2);
}

TEST(Extraction, Unknot) {
  auto J = colored_jones_function(knot("[]"), -1, 4);
  EXPECT_TRUE(extract_rho10(J, TPoly(1), 1).poly.is_zero());
}

TEST(Extraction, TrefoilBothRoutes) {
  // Frozen after the Verma and the V_n routes agreed.
  const BigTPoly expected = Tinv * Tinv - Tinv * Q(2) + BigTPoly(2) - T * Q(2) + T * T;
  auto d = alexander_poly(parse_braid("[1,1,1]"));
  for (int sigma : {-1, 1}) EXPECT_EQ(extract_rho10(colored_jones_function(knot("[1,1,1]"), sigma, 6), d, 2).poly, expected);
  EXPECT_EQ(extract_p1(color_expansion(knot("[1,1,1]"), 6), d, 2).poly, expected);
}

TEST(Extraction, FigureEightVanishes) {
  auto d = alexander_poly(parse_braid("[1,-2,1,-2]"));
  EXPECT_TRUE(extract_rho10(colored_jones_function(knot("[1,-2,1,-2]"), -1, 6), d, 3).poly.is_zero());
}

TEST(Extraction, NarrowSpanIsReported) {
  auto d = alexander_poly(parse_braid("[1,1,1]"));
  try {
    extract_rho10(colored_jones_function(knot("[1,1,1]"), -1, 6), d, 0);
    FAIL();
  } catch (const ExtractionError& e) {
    EXPECT_GE(e.order(), 1);
  }
}

TEST(ColorExpansion, DegreeBoundAndGradeZero) {
  auto ce = color_expansion(knot("[1,-2,1,-2]"), 5);
  EXPECT_TRUE(ce.degree_bound_ok);
  EXPECT_EQ(ce.points, 8);
  auto d = alexander_poly(parse_braid("[1,-2,1,-2]"));
  EXPECT_TRUE((grade_part(ce.j, 0) - inv(at_exponential(d, Q(2), 5))).is_zero());
}

TEST(Report, TrefoilPasses) {
  auto r = verify_mmr_equality("3_1", parse_braid("[1,1,1]"), 6);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.rho10.poly, r.p1.poly);
  EXPECT_TRUE(r.verdict("rho11_consistency").passed);
  EXPECT_THROW(r.verdict("nope"), std::out_of_range);
}

TEST(Report, UnknotPasses) {
  auto r = verify_mmr_equality("unknot", 4);
  EXPECT_TRUE(r.all_passed());
  EXPECT_TRUE(r.p1.poly.is_zero());
}

TEST(Report, Json) {
  auto j = to_json(verify_mmr_equality("3_1", parse_braid("[1,1,1]"), 6));
  EXPECT_EQ(j["schema"], kSchemaVersion);
  EXPECT_EQ(j["kind"], "mmr_report");
  EXPECT_TRUE(j["all_passed"].get<bool>());
  EXPECT_EQ(j["rho10"]["text"], j["p1"]["text"]);
  EXPECT_EQ(j["verdicts"].size(), 8u);
}

}  // namespace
}  // namespace kinv
