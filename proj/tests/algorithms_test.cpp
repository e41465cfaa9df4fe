#include <gtest/gtest.h>

#include "onred/algorithms.hpp"
#include "onred/competitiveness.hpp"
#include "test_util.hpp"

using namespace onred;

TEST(Roster, Names) {
  EXPECT_EQ(algorithms_for(ProblemKind::asg),
            (std::vector<std::string>{"always-guess-zero", "always-guess-one", "follow-prediction"}));
  EXPECT_EQ(algorithms_for(ProblemKind::bdis),
            (std::vector<std::string>{"follow-prediction", "greedy-feasible", "always-reject"}));
  EXPECT_THROW(algorithm_by_name("nope"), UsageError);
  EXPECT_THROW(algorithm_by_name("greedy-feasible")(ProblemParams{ProblemKind::asg, Bound::of(1), 0}), UsageError);
  EXPECT_THROW(algorithm_by_name("always-guess-one")(ProblemParams{ProblemKind::sp, Bound::of(1), 0}), UsageError);
}

TEST(Run, AlwaysGuessZero) {
  Instance i = inst("problem asg t=3\nreq - true=1 pred=1\nreq - true=1 pred=0\nreq - true=0 pred=1\n");
  auto r = run_algorithm(algorithm_by_name("always-guess-zero"), i);
  EXPECT_EQ(r.decisions, bits({0, 0, 0}));
  EXPECT_EQ(r.record.alg_score, Score::feasible(6));
  EXPECT_EQ(r.record.opt_value, 2);
  EXPECT_TRUE(satisfies_competitiveness(r.record, {Rational(3), Rational(0), Rational(0), Rational(0)}));
}

TEST(Run, FollowPerfectAsg) {
  Instance i = inst("problem asg t=2\nreq - true=1 pred=1\nreq - true=0 pred=0\nreq - true=1 pred=1\n");
  auto r = run_algorithm(algorithm_by_name("follow-prediction"), i);
  EXPECT_EQ(r.record.alg_score.value(), r.record.opt_value);
}

TEST(Run, FollowOneWrongVertex) {
  Instance i = inst("problem bdis t=1\nreq edges= true=0 pred=1\n");
  auto r = run_algorithm(algorithm_by_name("follow-prediction"), i);
  EXPECT_EQ(r.record.alg_score, Score::feasible(0));
  EXPECT_EQ(r.record.opt_value, 1);
  EXPECT_EQ(r.record.errors, (ErrorPair{0, 1}));
  EXPECT_FALSE(satisfies_competitiveness(r.record, {Rational(5), Rational(5), Rational(0), Rational(0)}));
  EXPECT_TRUE(satisfies_competitiveness(r.record, {Rational(1), Rational(0), Rational(1), Rational(0)}));
  EXPECT_TRUE(satisfies_competitiveness(r.record, {Rational(1), Rational(0), Rational(0), Rational(1)}));
}

TEST(Run, FollowGuardRejectsConflict) {
  Instance i = inst("problem bdis t=1\nreq edges= true=0 pred=0\nreq edges=1 true=1 pred=0\n");
  auto r = run_algorithm(algorithm_by_name("follow-prediction"), i);
  EXPECT_EQ(r.decisions, bits({0, 1}));
  EXPECT_TRUE(r.record.alg_score.is_feasible());
}

TEST(Run, GreedyIgnoresPredictions) {
  Instance i = inst("problem sch t=2\nreq interval=0,2 true=1 pred=1\nreq interval=1,3 true=0 pred=0\nreq interval=2,4 true=0 pred=1\n");
  auto r = run_algorithm(algorithm_by_name("greedy-feasible"), i);
  EXPECT_EQ(r.decisions, bits({0, 1, 0}));
}

TEST(Run, AlwaysRejectScoresZero) {
  Instance i = inst("problem mm t=2\nreq edge=a,b true=0 pred=0\nreq edge=b,c true=1 pred=0\n");
  auto r = run_algorithm(algorithm_by_name("always-reject"), i);
  EXPECT_EQ(r.record.alg_score, Score::feasible(0));
}

TEST(Run, EmptyInstance) {
  Instance i = inst("problem bdis t=1\n");
  auto r = run_algorithm(algorithm_by_name("greedy-feasible"), i);
  EXPECT_TRUE(r.decisions.empty());
  EXPECT_EQ(r.record.opt_value, 0);
}
