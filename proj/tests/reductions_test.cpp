#include <gtest/gtest.h>

#include "onred/oracles.hpp"
#include "onred/problems.hpp"
#include "onred/reductions.hpp"
#include "test_util.hpp"

using namespace onred;

namespace {

VerificationReport check(const Reduction& r, const CoupledTrace& tr, VerifyOptions opt = {}) {
  VerificationReport rep;
  verify_trace(r, tr, opt, rep);
  return rep;
}

const char* kEdge = "problem bdis t=2\nreq edges= true=1 pred=0\nreq edges=1 true=0 pred=0\n";

}  // namespace

TEST(Registry, TenInOrder) {
  const auto& all = all_reductions();
  ASSERT_EQ(all.size(), 10u);
  EXPECT_EQ(all.front()->name(), "red_bdis_to_asg");
  EXPECT_EQ(all.back()->name(), "red_mat_to_sp");
  EXPECT_THROW(reduction_by_name("red_nope"), UsageError);
  EXPECT_EQ(reduction_by_name("red_mat_to_sp+red_sp_to_bdis")->source(), ProblemKind::mm);
  EXPECT_EQ(reduction_by_name("red_mat_to_sp+red_sp_to_bdis")->target(), ProblemKind::bdis);
}

TEST(CliToBdis, Triangle) {
  Instance k3 = inst("problem cli t=1\nreq edges= true=0 pred=0\nreq edges=1 true=0 pred=0\nreq edges=1,2 true=0 pred=0\n");
  auto r = red_cli_to_bdis();
  auto tr = couple(*r, algorithm_by_name("greedy-feasible"), k3);
  EXPECT_EQ(build_graph(tr.target).edge_count(), 0u);
  EXPECT_EQ(tr.target.size(), 3u);
  EXPECT_EQ(tr.target_decisions, bits({0, 0, 0}));
  EXPECT_EQ(tr.source_decisions, bits({0, 0, 0}));
  EXPECT_EQ(score(tr.target, tr.target_decisions), Score::feasible(3));
  EXPECT_EQ(score(tr.source, tr.source_decisions), Score::feasible(3));
  EXPECT_TRUE(check(*r, tr).passed());
}

TEST(BdisToSp, FlagSets) {
  auto r = red_bdis_to_sp();
  auto tr = couple(*r, algorithm_by_name("greedy-feasible"), inst(kEdge));
  ASSERT_EQ(tr.target.size(), 2u);
  auto s1 = std::get<SetArrival>(tr.target.requests[0].payload).elements;
  auto s2 = std::get<SetArrival>(tr.target.requests[1].payload).elements;
  EXPECT_EQ(s1, (std::vector<std::string>{"F1^1", "F1^2"}));
  EXPECT_EQ(s2, (std::vector<std::string>{"F1^1", "F2^2"}));
  EXPECT_EQ(build_graph(tr.source), conflict_graph(tr.target));
  EXPECT_TRUE(check(*r, tr).passed());
}

TEST(SpToBdis, OptimaEqual) {
  auto r = red_sp_to_bdis();
  Instance sp = inst("problem sp t=2\nreq set=a,b true=0 pred=1\nreq set=b,c true=1 pred=0\nreq set=c,d true=0 pred=0\n");
  for (const auto& name : algorithms_for(ProblemKind::sp)) {
    auto tr = couple(*r, algorithm_by_name(name), sp);
    EXPECT_EQ(brute_force_opt(tr.source).value, brute_force_opt(tr.target).value);
    EXPECT_TRUE(check(*r, tr).passed()) << name;
  }
}

TEST(BdisToAsg, CaseAcceptedTrueOne) {
  // v1 has x=1 and is accepted on level 1: the ASG request gets x'=1, guess 0.
  auto r = red_bdis_to_asg();
  auto tr = couple(*r, algorithm_by_name("always-guess-zero"), inst(kEdge));
  ASSERT_EQ(tr.level[0], 1);
  ASSERT_EQ(tr.forwarded[0], 0);
  EXPECT_EQ(tr.target.requests[0].truth, Bit::one);
  EXPECT_EQ(tr.target_decisions[0], Bit::zero);
  // v2 sees an accepted neighbour and is rejected without forwarding.
  EXPECT_EQ(tr.level[1], 2);
  EXPECT_EQ(tr.forwarded[1], -1);
  // that single step adds t to the ASG cost and nothing to Opt(I')... so the
  // right side of the invariant gains alpha + t against alpha on the left
  Instance first = tr.target;
  first.requests.resize(1);
  EXPECT_EQ(score(first, DecisionSeq{tr.target_decisions[0]}), Score::feasible(2));
  auto rep = check(*r, tr);
  EXPECT_TRUE(rep.passed());
  EXPECT_GT(rep.passed("eq9"), 0);
}

TEST(BdisToAsg, CaughtTruthBecomesZero) {
  auto r = red_bdis_to_asg();
  auto tr = couple(*r, algorithm_by_name("always-guess-one"), inst(kEdge));
  // v1 rejected (x=1, y=1): x' = 0
  EXPECT_EQ(tr.target.requests[0].truth, Bit::zero);
  EXPECT_TRUE(check(*r, tr).passed());
}

TEST(AsgToBdis, SingleTrueOne) {
  auto r = red_asg_to_bdis();
  Instance one = inst("problem asg t=2\nreq - true=1 pred=0\n");
  auto tr = couple(*r, algorithm_by_name("greedy-feasible"), one);
  // challenge accepted with x'=1: t leaves follow as trailing blocks
  EXPECT_EQ(tr.source_decisions, bits({0}));
  EXPECT_EQ(tr.target.size(), 3u);
  EXPECT_EQ(tr.block, (std::vector<char>{0, 1, 1}));
  EXPECT_TRUE(validate_instance(tr.target).ok());
  EXPECT_TRUE(check(*r, tr).passed());

  auto rej = couple(*r, algorithm_by_name("always-reject"), one);
  EXPECT_EQ(rej.target.size(), 2u);
  EXPECT_TRUE(check(*r, rej).passed());
}

TEST(AsgToBdis, GridBeyondBoundaryFails) {
  auto r = red_asg_to_bdis();
  Instance zero = inst("problem asg t=2\nreq - true=0 pred=0\n");
  auto tr = couple(*r, algorithm_by_name("greedy-feasible"), zero);
  VerifyOptions tight;
  tight.alpha_beta = {{Rational(2), Rational(0)}};
  EXPECT_TRUE(check(*r, tr, tight).passed());
  VerifyOptions over;
  over.alpha_beta = {{Rational(2), Rational(1)}};
  EXPECT_GT(check(*r, tr, over).failed("C1"), 0);
}

TEST(BdisToSch, ChallengesDisjoint) {
  auto r = red_bdis_to_sch();
  for (const auto& name : algorithms_for(ProblemKind::sch)) {
    auto tr = couple(*r, algorithm_by_name(name), inst(kEdge));
    EXPECT_TRUE(validate_instance(tr.target).ok()) << serialize_instance(tr.target);
    EXPECT_TRUE(check(*r, tr).passed()) << name;
  }
}

TEST(McsToBdis, TargetBound) {
  auto r = red_mcs_to_bdis();
  EXPECT_EQ(r->target_params({ProblemKind::mcs, Bound::of(4), 2}).t, Bound::of(2));
  EXPECT_EQ(r->target_params({ProblemKind::mcs, Bound::of(3), 2}).t, Bound::of(2));
}

TEST(McsToBdis, PathCounterexample) {
  // A path, so all four vertices are 2-colourable, but the levels push v4
  // to level 3 and the BDIS side only has three vertices to offer.
  Instance path = inst(
      "problem mcs t=2 k=2\nreq edges= true=0 pred=0\nreq edges= true=0 pred=0\nreq edges=1 true=0 pred=0\n"
      "req edges=2,3 true=0 pred=0\n");
  auto r = red_mcs_to_bdis();
  auto tr = couple(*r, algorithm_by_name("greedy-feasible"), path);
  EXPECT_EQ(tr.level, (std::vector<int>{1, 1, 2, 3}));
  EXPECT_EQ(brute_force_opt(tr.source).value, 4);
  EXPECT_EQ(brute_force_opt(tr.target).value, 3);
}

TEST(MatToSp, EdgeSets) {
  auto r = red_mat_to_sp();
  Instance mm = inst("problem mm t=2\nreq edge=a,b true=0 pred=0\nreq edge=b,c true=1 pred=0\n");
  auto tr = couple(*r, algorithm_by_name("follow-prediction"), mm);
  EXPECT_EQ(std::get<SetArrival>(tr.target.requests[1].payload).elements, (std::vector<std::string>{"b", "c"}));
  EXPECT_EQ(tr.target.t, Bound::of(2));
  EXPECT_TRUE(check(*r, tr).passed());
}

TEST(Verify, EmptyInstancePassesEverywhere) {
  for (const auto& r : all_reductions()) {
    Instance empty;
    empty.problem = r->source();
    empty.t = Bound::of(2);
    if (empty.problem == ProblemKind::mcs) {
      empty.colors = 2;
      empty.t = Bound::of(4);
    }
    auto name = algorithms_for(r->target()).front();
    auto tr = couple(*r, algorithm_by_name(name), empty);
    EXPECT_EQ(tr.target.size(), 0u) << r->name();
    auto rep = check(*r, tr);
    EXPECT_TRUE(rep.passed()) << r->name();
  }
}

TEST(Compose, WithIdentityKeepsTrace) {
  auto r = red_sp_to_bdis();
  auto both = compose(r, identity_reduction(ProblemKind::bdis));
  Instance sp = inst("problem sp t=2\nreq set=a,b true=0 pred=0\nreq set=b,c true=1 pred=0\n");
  auto alg = algorithm_by_name("greedy-feasible");
  auto plain = couple(*r, alg, sp);
  auto composed = couple(*both, alg, sp);
  EXPECT_EQ(composed.source_decisions, plain.source_decisions);
  EXPECT_EQ(composed.target, plain.target);
  EXPECT_EQ(innermost(composed).target, plain.target);
  auto rep = check(*both, composed);
  EXPECT_TRUE(rep.passed());
  EXPECT_GT(rep.passed("red_sp_to_bdis:R1"), 0);
}

TEST(Compose, MismatchRefused) {
  EXPECT_THROW(compose(red_sp_to_bdis(), red_sp_to_bdis()), UsageError);
}

TEST(Compose, MatchingThroughSetPacking) {
  auto chain = compose(red_mat_to_sp(), red_sp_to_bdis());
  Instance mm = inst("problem mm t=2\nreq edge=a,b true=0 pred=0\nreq edge=b,c true=1 pred=0\nreq edge=c,d true=0 pred=1\n");
  for (const auto& name : algorithms_for(ProblemKind::bdis)) {
    auto tr = couple(*chain, algorithm_by_name(name), mm);
    EXPECT_EQ(innermost(tr).target.problem, ProblemKind::bdis);
    EXPECT_TRUE(check(*chain, tr).passed()) << name;
  }
}

TEST(Grids, Shapes) {
  auto b = boundary_grid(3);
  ASSERT_EQ(b.size(), 5u);
  for (const auto& [a, be] : b) EXPECT_EQ(a + be, Rational(3));
  for (const auto& [a, be] : triangle_grid(3)) EXPECT_LE(a + be, Rational(3));
}
