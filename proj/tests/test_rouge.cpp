// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sumaug/rouge.hpp"
#include "sumaug/tokenizer.hpp"

using namespace sumaug;

namespace {

std::vector<std::string> toks(const std::string& s) { return normalize_tokens(s); }

}  // namespace

TEST(RougeN, IdentityScoresOne) {
  const auto t = toks("the cat sat");
  for (std::size_t n : {1u, 2u}) {
    const auto s = rouge_n(t, t, n);
    EXPECT_DOUBLE_EQ(s.precision, 1.0);
    EXPECT_DOUBLE_EQ(s.recall, 1.0);
    EXPECT_DOUBLE_EQ(s.f1, 1.0);
  }
}

TEST(RougeN, UnigramWorkedExample) {
  const auto s = rouge_n(toks("the cat sat"), toks("the cat"), 1);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.f1, 0.8);
}

TEST(RougeN, BigramWorkedExample) {
  const auto s = rouge_n(toks("a b c d"), toks("a b d c"), 2);
  EXPECT_DOUBLE_EQ(s.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.f1, 1.0 / 3.0);
}

TEST(RougeN, ClipsRepeatedGrams) {
  // candidate repeats "the" three times; reference has it once
  const auto s = rouge_n(toks("the the the"), toks("the cat"), 1);
  EXPECT_DOUBLE_EQ(s.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
}

TEST(RougeN, DegenerateInputsGiveZeros) {
  const std::vector<std::string> empty;
  const auto a = toks("a");
  for (const auto& s : {rouge_n(empty, a, 1), rouge_n(a, empty, 1), rouge_n(a, a, 2), rouge_n(a, a, 0)}) {
    EXPECT_EQ(s.precision, 0.0);
    EXPECT_EQ(s.recall, 0.0);
    EXPECT_EQ(s.f1, 0.0);
  }
}

TEST(RougeL, WorkedExampleAndIdentity) {
  const auto s = rouge_l(toks("a c b"), toks("a b c"));
  EXPECT_EQ(lcs_length<std::string>(toks("a c b"), toks("a b c")), 2u);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3.0);
  const auto id = rouge_l(toks("x y z"), toks("x y z"));
  EXPECT_DOUBLE_EQ(id.f1, 1.0);
  EXPECT_EQ(rouge_l(std::vector<std::string>{}, toks("a")).f1, 0.0);
}

TEST(RougeSuite, TextLevelExamples) {
  const auto one = rouge_suite("x", "x");
  EXPECT_DOUBLE_EQ(one.r1.f1, 1.0);
  EXPECT_DOUBLE_EQ(one.rl.f1, 1.0);
  EXPECT_DOUBLE_EQ(rouge_suite("the cat sat", "the cat").r1.f1, 0.8);
  const auto zero = rouge_suite("", "anything");
  EXPECT_EQ(zero.r1.f1, 0.0);
  EXPECT_EQ(zero.r2.f1, 0.0);
  EXPECT_EQ(zero.rl.f1, 0.0);
}

TEST(RougeSuite, NormalizesCaseAndPunctuation) {
  EXPECT_DOUBLE_EQ(rouge_suite("The Cat.", "the cat .").r1.f1, 1.0);
}

TEST(AvgRouge, Means) {
  RougeSuite s;
  s.r1.f1 = s.r2.f1 = s.rl.f1 = 1.0;
  EXPECT_DOUBLE_EQ(avg_rouge(s), 1.0);
  s.r1.f1 = 0.8;
  s.r2.f1 = 1.0 / 3.0;
  s.rl.f1 = 2.0 / 3.0;
  EXPECT_NEAR(avg_rouge(s), 0.6, 1e-15);
  EXPECT_EQ(avg_rouge(RougeSuite{}), 0.0);
}

TEST(RougeOracle, RandomPairsAgree) {
  std::mt19937 gen(3);
  std::uniform_int_distribution<int> len(0, 9), sym(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> a(static_cast<std::size_t>(len(gen))), b(static_cast<std::size_t>(len(gen)));
    for (auto& x : a) x = sym(gen);
    for (auto& x : b) x = sym(gen);
    for (std::size_t n : {1u, 2u, 3u}) {
      const auto got = rouge_n(a, b, n);
      const auto want = oracle::rouge_n(a, b, n);
      ASSERT_NEAR(got.precision, want.p, 1e-12);
      ASSERT_NEAR(got.recall, want.r, 1e-12);
      ASSERT_NEAR(got.f1, want.f, 1e-12);
    }
    const auto got = rouge_l(a, b);
    const auto want = oracle::rouge_l(a, b);
    ASSERT_NEAR(got.f1, want.f, 1e-12);
    ASSERT_NEAR(got.precision, want.p, 1e-12);
  }
}

TEST(RougeProperties, BoundedAndSymmetricF1) {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> len(1, 12), sym(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a(static_cast<std::size_t>(len(gen))), b(static_cast<std::size_t>(len(gen)));
    for (auto& x : a) x = sym(gen);
    for (auto& x : b) x = sym(gen);
    const auto ab = rouge_suite_tokens(a, b);
    const auto ba = rouge_suite_tokens(b, a);
    for (const auto* s : {&ab.r1, &ab.r2, &ab.rl}) {
      EXPECT_GE(s->f1, 0.0);
      EXPECT_LE(s->f1, 1.0);
    }
    EXPECT_NEAR(ab.r1.f1, ba.r1.f1, 1e-15);
    EXPECT_NEAR(ab.rl.f1, ba.rl.f1, 1e-15);
    EXPECT_NEAR(ab.r1.precision, ba.r1.recall, 1e-15);
  }
}
