#include <gtest/gtest.h>

#include <string>

#include "onred/onred.h"

TEST(CApi, InstanceLifecycle) {
  onred_instance* inst = nullptr;
  ASSERT_EQ(onred_instance_parse("problem bdis t=1\nreq edges= true=1 pred=1\nreq edges=1 true=0 pred=0\n", &inst), ONRED_OK);
  EXPECT_EQ(onred_instance_size(inst), 2u);
  EXPECT_STREQ(onred_instance_problem(inst), "bdis");
  EXPECT_EQ(onred_instance_valid(inst), 1);
  EXPECT_STREQ(onred_instance_serialize(inst), "problem bdis t=1\nreq edges= true=1 pred=1\nreq edges=1 true=0 pred=0\n");
  onred_report* rep = nullptr;
  ASSERT_EQ(onred_evaluate(inst, "greedy-feasible", &rep), ONRED_OK);
  EXPECT_NE(std::string(onred_report_text(rep)).find("bdis,1,2,greedy-feasible,1,1,0,0,1"), std::string::npos);
  onred_report_free(rep);
  onred_instance_free(inst);
}

TEST(CApi, ParseErrorIsUsage) {
  onred_instance* inst = nullptr;
  EXPECT_EQ(onred_instance_parse("problem bdis t=1\nreq edges= true=2 pred=0\n", &inst), ONRED_USAGE);
  EXPECT_EQ(inst, nullptr);
  EXPECT_NE(std::string(onred_last_error()).find("line 2"), std::string::npos);
}

TEST(CApi, VerifyFailureStatus) {
  onred_verify_options o{"red_asg_to_bdis", 3, 3, 1, "all", "3:1"};
  onred_report* rep = nullptr;
  EXPECT_EQ(onred_verify(&o, &rep), ONRED_FAILED);
  ASSERT_NE(rep, nullptr);
  EXPECT_EQ(onred_report_passed(rep), 0);
  onred_report_free(rep);
  onred_verify_options bad{"red_nope", 3, 2, 1, nullptr, nullptr};
  EXPECT_EQ(onred_verify(&bad, &rep), ONRED_USAGE);
}

TEST(CApi, Adversary) {
  int ns[] = {10, 20};
  onred_report* rep = nullptr;
  ASSERT_EQ(onred_adversary("greedy-feasible", 2, "3/2", "0", ns, 2, &rep), ONRED_OK);
  EXPECT_NE(std::string(onred_report_text(rep)).find(",5,"), std::string::npos);
  onred_report_free(rep);
  EXPECT_EQ(onred_adversary("greedy-feasible", 2, "2", "0", ns, 2, &rep), ONRED_USAGE);
}
