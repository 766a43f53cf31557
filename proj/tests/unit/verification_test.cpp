#include <gtest/gtest.h>

#include "stovex/verification.hpp"

using namespace stovex;

namespace {

const ModelParams kP = ModelParams::validate(0.6, 0.2);

void expect_passed(const CheckList& checks) {
  EXPECT_FALSE(checks.empty());
  for (const CheckResult& c : checks) {
    EXPECT_TRUE(c.passed()) << c.name << ": " << c.value << " > " << c.tolerance << " " << c.detail;
  }
  EXPECT_TRUE(all_passed(checks));
}

}  // namespace

TEST(Verification, CheckResultSemantics) {
  EXPECT_TRUE((CheckResult{"a", 1.0, 1.0, ""}).passed());
  EXPECT_FALSE((CheckResult{"a", 1.5, 1.0, ""}).passed());
  EXPECT_FALSE(all_passed({{"a", 0.0, 1.0, ""}, {"b", 2.0, 1.0, ""}}));
}

TEST(Verification, Stochasticity) { expect_passed(verify_stochasticity(kP)); }
TEST(Verification, Bethe) { expect_passed(verify_bethe(kP, 1, 10)); }
TEST(Verification, Transition) { expect_passed(verify_transition(kP)); }
TEST(Verification, Identities) { expect_passed(verify_identities(2, 20)); }
TEST(Verification, MuK) { expect_passed(verify_mu_k(kP)); }
TEST(Verification, Fredholm) { expect_passed(verify_fredholm(kP)); }

TEST(Verification, OtherParameters) {
  const ModelParams p = ModelParams::validate(0.45, 0.3);
  expect_passed(verify_stochasticity(p));
  expect_passed(verify_bethe(p, 3, 10));
  expect_passed(verify_mu_k(ModelParams::validate(0.7, 0.2)));
}
