#include <gtest/gtest.h>

#include "onred/problems.hpp"
#include "test_util.hpp"

using namespace onred;

TEST(Score, Asg) {
  Instance i = inst("problem asg t=2\nreq - true=1 pred=0\nreq - true=0 pred=0\nreq - true=1 pred=0\n");
  EXPECT_EQ(score(i, bits({0, 1, 1})), Score::feasible(4));
  EXPECT_THROW(score(i, bits({0, 1})), UsageError);
}

TEST(Score, BdisEdge) {
  Instance i = inst("problem bdis t=1\nreq edges= true=0 pred=0\nreq edges=1 true=1 pred=0\n");
  EXPECT_EQ(score(i, bits({0, 0})), Score::infeasible());
  EXPECT_EQ(score(i, bits({0, 1})), Score::feasible(1));
}

TEST(Score, SchOverlap) {
  Instance i = inst("problem sch t=1\nreq interval=0,2 true=0 pred=0\nreq interval=1,3 true=1 pred=0\n");
  EXPECT_EQ(score(i, bits({0, 0})), Score::infeasible());
  EXPECT_EQ(score(i, bits({0, 1})), Score::feasible(1));
}

TEST(Score, SchTouchingIntervalsDoNotOverlap) {
  Instance i = inst("problem sch t=1\nreq interval=0,1 true=0 pred=0\nreq interval=1,2 true=0 pred=0\n");
  EXPECT_EQ(score(i, bits({0, 0})), Score::feasible(2));
}

TEST(Feasible, Kinds) {
  Instance k3 = inst("problem cli t=1\nreq edges= true=0 pred=0\nreq edges=1 true=0 pred=0\nreq edges=1,2 true=0 pred=0\n");
  EXPECT_TRUE(feasible(k3, bits({0, 0, 0})));

  Instance mm = inst("problem mm t=2\nreq edge=a,b true=0 pred=0\nreq edge=b,c true=1 pred=0\n");
  EXPECT_FALSE(feasible(mm, bits({0, 0})));

  Instance tri = inst("problem mcs t=2 k=2\nreq edges= true=0 pred=0\nreq edges=1 true=0 pred=0\nreq edges=1,2 true=1 pred=0\n");
  EXPECT_FALSE(feasible(tri, bits({0, 0, 0})));
  EXPECT_TRUE(feasible(tri, bits({0, 0, 1})));
  EXPECT_TRUE(feasible(tri, bits({1, 0, 0})));

  Instance sp = inst("problem sp t=2\nreq set=a,b true=0 pred=0\nreq set=b,c true=1 pred=0\n");
  EXPECT_FALSE(feasible(sp, bits({0, 0})));
}

TEST(StructuralBounds, Examples) {
  Instance star = inst("problem bdis t=2\nreq edges= true=1 pred=0\nreq edges=1 true=0 pred=0\nreq edges=1 true=0 pred=0\nreq edges=1 true=0 pred=0\n");
  EXPECT_FALSE(structural_bounds_ok(star));
  Instance k3 = inst("problem cli t=1\nreq edges= true=0 pred=0\nreq edges=1 true=0 pred=0\nreq edges=1,2 true=0 pred=0\n");
  EXPECT_TRUE(structural_bounds_ok(k3));
  Instance sp = inst("problem sp t=2\nreq set=a,b true=0 pred=0\nreq set=b,c true=1 pred=0\nreq set=a,c true=1 pred=0\n");
  EXPECT_TRUE(structural_bounds_ok(sp));
  Instance unbounded = inst("problem bdis t=inf\nreq edges= true=1 pred=0\nreq edges=1 true=0 pred=0\nreq edges=1 true=0 pred=0\n");
  EXPECT_TRUE(structural_bounds_ok(unbounded));
}

TEST(Validate, Optimality) {
  auto v = validate_instance(inst("problem bdis t=1\nreq edges= true=0 pred=0\nreq edges=1 true=0 pred=0\n"));
  EXPECT_FALSE(v.optimality_ok);
  v = validate_instance(inst("problem bdis t=1\nreq edges= true=1 pred=0\nreq edges=1 true=0 pred=0\n"));
  EXPECT_TRUE(v.ok());
  v = validate_instance(inst("problem sch t=3\nreq interval=0,3 true=0 pred=0\nreq interval=1,4 true=0 pred=0\nreq interval=2,5 true=1 pred=0\n"));
  EXPECT_FALSE(v.optimality_ok);
}

TEST(Graph, Build) {
  Graph tri = build_graph(inst("problem bdis t=2\nreq edges= true=0 pred=0\nreq edges=1 true=1 pred=0\nreq edges=1,2 true=1 pred=0\n"));
  EXPECT_EQ(tri.edge_count(), 3u);
  Graph empty = build_graph(inst("problem bdis t=1\nreq edges= true=0 pred=0\nreq edges= true=0 pred=0\n"));
  EXPECT_EQ(empty.max_degree(), 0);
  Graph path = build_graph(inst("problem bdis t=2\nreq edges= true=0 pred=0\nreq edges=1 true=1 pred=0\nreq edges=2 true=0 pred=0\n"));
  EXPECT_EQ(path.max_degree(), 2);
  EXPECT_EQ(path.min_degree(), 1);
}

TEST(Graph, RejectsLoopsAndRepeats) {
  Graph g(2);
  g.add_edge(0, 1);
  EXPECT_THROW(g.add_edge(1, 0), UsageError);
  EXPECT_THROW(g.add_edge(1, 1), UsageError);
}

TEST(Graph, ComplementTwiceIsIdentity) {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(1, 3);
  EXPECT_EQ(g.complement().complement(), g);
  EXPECT_EQ(g.complement().edge_count(), 3u);
}
