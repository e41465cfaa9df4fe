#include <gtest/gtest.h>

#include "onred/commands.hpp"
#include "onred/instance_format.hpp"
#include "onred/oracles.hpp"

using namespace onred;

TEST(Parse, EdgeExample) {
  auto p = parse_instance("problem bdis t=1\nreq edges= true=1 pred=1\nreq edges=1 true=0 pred=0\n");
  EXPECT_EQ(p.instance.size(), 2u);
  EXPECT_TRUE(p.validity.ok());
  EXPECT_EQ(brute_force_opt(p.instance).value, 1);
}

TEST(Parse, BadBitNamesLine) {
  try {
    parse_instance("problem bdis t=1\n# comment\nreq edges= true=2 pred=0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Parse, NonOptimalIsReportedNotThrown) {
  auto p = parse_instance("problem bdis t=1\nreq edges= true=1 pred=0\nreq edges= true=0 pred=0\n");
  EXPECT_FALSE(p.validity.optimality_ok);
}

TEST(Parse, Rejects) {
  EXPECT_THROW(parse_instance_text(""), ParseError);
  EXPECT_THROW(parse_instance_text("problem foo t=1\n"), ParseError);
  EXPECT_THROW(parse_instance_text("problem bdis t=0\n"), ParseError);
  EXPECT_THROW(parse_instance_text("problem mcs t=2\n"), ParseError);
  EXPECT_THROW(parse_instance_text("problem bdis t=1 k=2\n"), ParseError);
  EXPECT_THROW(parse_instance_text("problem bdis t=1\nreq edges=1 true=0 pred=0\n"), ParseError);
  EXPECT_THROW(parse_instance_text("problem sp t=1\nreq set=a,a true=0 pred=0\n"), ParseError);
}

TEST(Parse, RationalIntervals) {
  auto i = parse_instance_text("problem sch t=inf\nreq interval=1/2,3 true=0 pred=1  # c\n");
  EXPECT_EQ(std::get<IntervalArrival>(i.requests[0].payload).lo, Rational(1, 2));
  EXPECT_EQ(serialize_instance(i), "problem sch t=inf\nreq interval=1/2,3 true=0 pred=1\n");
}

TEST(RoundTrip, AllKinds) {
  for (ProblemKind k : kAllProblems) {
    CorpusSpec s{k, 3, Bound::of(2)};
    if (k == ProblemKind::mcs) s.colors = 2;
    for (const auto& i : collect_instances(s)) {
      std::string text = serialize_instance(i);
      ASSERT_EQ(parse_instance_text(text), i) << text;
      ASSERT_EQ(serialize_instance(parse_instance_text(text)), text);
    }
  }
}

TEST(Commands, EvaluateRow) {
  auto r = cmd_evaluate("problem asg t=2\nreq - true=1 pred=0\nreq - true=0 pred=0\n", "always-guess-zero");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.text, "problem,t,n,algorithm,opt,alg,mu0,mu1,feasible\nasg,2,2,always-guess-zero,1,2,1,0,1\n");
  EXPECT_THROW(cmd_evaluate("problem asg t=2\n", "greedy-feasible"), UsageError);
}

TEST(Commands, VerifyExitStatus) {
  EXPECT_EQ(cmd_verify("red_sp_to_bdis", 3, Bound::of(2), 1, "all", "").status, 0);
  auto bad = cmd_verify("red_asg_to_bdis", 3, Bound::of(3), 1, "all", "3:1");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.text.find("# FAIL C1"), std::string::npos);
}

TEST(Commands, HardnessGraph) {
  auto g = cmd_hardness_graph().text;
  EXPECT_EQ(g, cmd_hardness_graph().text);
  for (const char* n : {"asg", "bdis", "sp", "sch", "cli", "mcs", "mm"}) {
    EXPECT_NE(g.find(std::string("  ") + n + " [label="), std::string::npos) << n;
  }
  EXPECT_NE(g.find("mcs -> bdis [label="), std::string::npos);
  EXPECT_NE(g.find("mm -> sp [label="), std::string::npos);
  EXPECT_NE(g.find("dir=both"), std::string::npos);
}

TEST(Commands, FrontierAlwaysGuessZero) {
  auto f = cmd_frontier(ProblemKind::asg, "always-guess-zero", 4, Bound::of(3), 1, "alpha=3;beta=0;gamma=0",
                        Rational(0));
  EXPECT_NE(f.text.find("asg,always-guess-zero,3,0,0,0"), std::string::npos) << f.text;
}

TEST(Commands, Grids) {
  EXPECT_EQ(parse_alpha_beta_grid("", Bound::of(2)), boundary_grid(2));
  EXPECT_EQ(parse_alpha_beta_grid("alpha+beta<=t", Bound::of(2)), triangle_grid(2));
  auto g = parse_alpha_beta_grid("3/2:1/2,2:0", Bound::of(2));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].first, Rational(3, 2));
  EXPECT_THROW(parse_alpha_beta_grid("x", Bound::of(2)), std::invalid_argument);
}
