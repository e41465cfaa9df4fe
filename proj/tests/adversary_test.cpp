#include <gtest/gtest.h>

#include "onred/adversary.hpp"
#include "onred/oracles.hpp"
#include "onred/problems.hpp"

using namespace onred;

TEST(Gadget, Shapes) {
  Gadget g1 = build_gadget(GadgetKind::g1, 2);
  ASSERT_EQ(g1.requests.size(), 3u);
  EXPECT_EQ(g1.requests[0].truth, Bit::one);
  Gadget g0 = build_gadget(GadgetKind::g0, 3);
  ASSERT_EQ(g0.requests.size(), 1u);
  EXPECT_EQ(g0.requests[0].truth, Bit::zero);
  Gadget edge = build_gadget(GadgetKind::g1, 1);
  EXPECT_EQ(edge.requests.size(), 2u);
  EXPECT_THROW(build_gadget(GadgetKind::g0, 0), UsageError);
}

TEST(Adversary, Greedy) {
  auto run = adaptive_adversary(algorithm_by_name("greedy-feasible"), 5, 2);
  EXPECT_EQ(run.y0, 5);
  EXPECT_EQ(run.record.opt_value, 10);
  EXPECT_EQ(run.record.alg_score, Score::feasible(5));
  EXPECT_EQ(run.record.errors, (ErrorPair{0, 0}));
  EXPECT_TRUE(validate_instance(run.instance).ok());
}

TEST(Adversary, AlwaysReject) {
  auto run = adaptive_adversary(algorithm_by_name("always-reject"), 4, 3);
  EXPECT_EQ(run.y1, 4);
  EXPECT_EQ(run.record.opt_value, 4);
  EXPECT_EQ(run.record.alg_score, Score::feasible(0));
  EXPECT_EQ(run.record.errors.mu1, 4);
}

TEST(Adversary, OptFormula) {
  for (const auto& name : algorithms_for(ProblemKind::bdis)) {
    for (int t = 1; t <= 3; ++t) {
      auto run = adaptive_adversary(algorithm_by_name(name), 6, t);
      EXPECT_EQ(run.record.opt_value, run.y1 + t * run.y0);
      EXPECT_EQ(run.record.alg_score, Score::feasible(run.y0));
    }
  }
}

TEST(Adversary, ResponseTreeTwoGadgets) {
  // every pair of centre decisions, as the adversary would resolve them
  std::vector<DecisionSeq> seen;
  exhaust_algorithm_responses(2, [&](const DecisionSeq& d) { seen.push_back(d); });
  const int t = 2;
  for (const auto& d : seen) {
    auto o = gadget_outcome(d, t);
    std::int64_t y0 = 0;
    for (Bit b : d) y0 += b == Bit::zero;
    EXPECT_EQ(o.opt, (2 - y0) + t * y0);
    EXPECT_EQ(o.alg, y0);
    EXPECT_EQ(o.mu1, 2 - y0);
  }
}

TEST(Growth, Examples) {
  std::vector<int> ns{10, 20, 40};
  auto g = impossibility_growth(algorithm_by_name("greedy-feasible"), 2, Rational(3, 2), Rational(0), ns);
  ASSERT_EQ(g.size(), 3u);
  for (const auto& row : g) EXPECT_EQ(row.deficit, Rational(row.n, 2));
  auto r = impossibility_growth(algorithm_by_name("always-reject"), 2, Rational(3, 2), Rational(1, 2), ns);
  for (const auto& row : r) EXPECT_EQ(row.deficit, Rational(row.n, 2));
}

TEST(Growth, DeficitAboveFloor) {
  std::vector<int> ns{10, 20};
  for (const auto& name : algorithms_for(ProblemKind::bdis)) {
    auto rows = impossibility_growth(algorithm_by_name(name), 3, Rational(5, 2), Rational(3, 4), ns);
    for (const auto& row : rows) EXPECT_TRUE(row.unbounded || row.deficit >= row.floor);
  }
}

TEST(Growth, RefusesOutsideDomain) {
  std::vector<int> ns{10};
  auto alg = algorithm_by_name("greedy-feasible");
  EXPECT_THROW(impossibility_growth(alg, 2, Rational(2), Rational(0), ns), UsageError);
  EXPECT_THROW(impossibility_growth(alg, 2, Rational(1), Rational(1), ns), UsageError);
}
