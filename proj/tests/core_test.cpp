#include <gtest/gtest.h>

#include "onred/competitiveness.hpp"
#include "test_util.hpp"

using namespace onred;

TEST(Rational, ParseAndRender) {
  EXPECT_EQ(to_string(parse_rational("3/2")), "3/2");
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  EXPECT_EQ(to_string(parse_rational("-1")), "-1");
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Errors, CanonicalPair) {
  EXPECT_EQ(compute_errors(bits({1, 0, 1}), bits({0, 0, 1})), (ErrorPair{1, 0}));
  EXPECT_EQ(compute_errors(bits({0, 1, 1, 0}), bits({0, 1, 1, 0})), (ErrorPair{0, 0}));
  EXPECT_EQ(compute_errors(bits({0, 0}), bits({1, 1})), (ErrorPair{0, 2}));
  EXPECT_THROW(compute_errors(bits({0}), bits({0, 1})), UsageError);
}

RunRecord rec(Direction d, std::int64_t opt, Score alg, ErrorPair mu = {}) {
  RunRecord r;
  r.direction = d;
  r.opt_value = opt;
  r.alg_score = alg;
  r.errors = mu;
  return r;
}

CompTriple triple(int a, int b = 0, int g = 0, int add = 0) {
  return {Rational(a), Rational(b), Rational(g), Rational(add)};
}

TEST(Competitiveness, Max) {
  EXPECT_TRUE(satisfies_competitiveness(rec(Direction::max, 4, Score::feasible(2)), triple(2)));
  EXPECT_FALSE(satisfies_competitiveness(rec(Direction::max, 1, Score::infeasible()), triple(100, 100, 100, 100)));
}

TEST(Competitiveness, Min) {
  EXPECT_TRUE(satisfies_competitiveness(rec(Direction::min, 2, Score::feasible(6)), triple(3)));
  EXPECT_FALSE(satisfies_competitiveness(rec(Direction::min, 2, Score::feasible(6)), triple(2)));
}

TEST(Competitiveness, Monotone) {
  RunRecord r = rec(Direction::max, 5, Score::feasible(2), {1, 1});
  for (int a = 1; a <= 3; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int g = 0; g <= 2; ++g)
        if (satisfies_competitiveness(r, triple(a, b, g))) {
          EXPECT_TRUE(satisfies_competitiveness(r, triple(a + 1, b, g)));
          EXPECT_TRUE(satisfies_competitiveness(r, triple(a, b + 1, g)));
          EXPECT_TRUE(satisfies_competitiveness(r, triple(a, b, g + 1)));
          EXPECT_TRUE(satisfies_competitiveness(r, triple(a, b, g, 1)));
        }
}

TEST(AdditiveConstant, Examples) {
  std::vector<RunRecord> one{rec(Direction::max, 3, Score::feasible(1))};
  auto c = min_additive_constant(one, Rational(1), Rational(0), Rational(0));
  ASSERT_EQ(c.kind, AdditiveConstant::Kind::finite);
  EXPECT_EQ(c.value, Rational(2));

  std::vector<RunRecord> exact{rec(Direction::max, 3, Score::feasible(3)), rec(Direction::max, 0, Score::feasible(0))};
  c = min_additive_constant(exact, Rational(1), Rational(0), Rational(0));
  EXPECT_EQ(c.value, Rational(0));

  std::vector<RunRecord> bad{rec(Direction::max, 3, Score::feasible(3)), rec(Direction::max, 1, Score::infeasible())};
  EXPECT_EQ(min_additive_constant(bad, Rational(1), Rational(0), Rational(0)).kind, AdditiveConstant::Kind::unbounded);

  EXPECT_EQ(min_additive_constant({}, Rational(1), Rational(0), Rational(0)).kind, AdditiveConstant::Kind::vacuous);
}

TEST(AdditiveConstant, SlackMayBeNegative) {
  std::vector<RunRecord> r{rec(Direction::max, 1, Score::feasible(3))};
  EXPECT_EQ(min_additive_constant(r, Rational(1), Rational(0), Rational(0)).value, Rational(-2));
}

TEST(Frontier, EmptyRecordsGiveWholeGrid) {
  std::vector<Rational> a{Rational(1), Rational(2)}, b{Rational(0)}, g{Rational(0), Rational(1)};
  auto f = empirical_frontier({}, a, b, g, Rational(0));
  EXPECT_EQ(f.size(), 4u);
}

TEST(Frontier, UpwardClosed) {
  std::vector<RunRecord> r{rec(Direction::max, 5, Score::feasible(2), {1, 2}),
                           rec(Direction::max, 3, Score::feasible(3), {0, 0})};
  std::vector<Rational> grid{Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  auto f = empirical_frontier(r, grid, grid, grid, Rational(0));
  auto in = [&](const Rational& a, const Rational& b, const Rational& g) {
    for (const auto& c : f)
      if (c.alpha == a && c.beta == b && c.gamma == g) return true;
    return false;
  };
  for (const auto& c : f)
    for (const auto& a : grid)
      for (const auto& b : grid)
        for (const auto& g : grid)
          if (a >= c.alpha && b >= c.beta && g >= c.gamma) EXPECT_TRUE(in(a, b, g));
}
