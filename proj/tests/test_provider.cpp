// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdlib>
#include <map>

#include "helpers.hpp"
#include "json.hpp"
#include "sumaug/error.hpp"
#include "sumaug/fixtures.hpp"
#include "sumaug/provider.hpp"
#include "sumaug/specificity.hpp"
#include "sumaug/synthesis.hpp"

using namespace sumaug;

namespace {
const std::string kFake = FAKE_PROVIDER;
}

TEST(ProviderProcess, HundredInterleavedRequests) {
  ProviderProcess proc(kFake);
  for (int i = 0; i < 100; ++i) {
    const auto id = "r" + std::to_string(i);
    if (i % 2 == 0) {
      const auto out = proc.paraphrase(id, "the lab was long", 3);
      ASSERT_EQ(out.size(), 3u);
      EXPECT_EQ(out[2], "the lab was long [p3]");
    } else {
      EXPECT_DOUBLE_EQ(proc.score(id, "one two three four"), 1.0 + 3.0 * 4.0 / 20.0);
    }
  }
}

TEST(ProviderProcess, RawRoundTripKeepsUnicode) {
  ProviderProcess proc(kFake);
  const auto line = proc.round_trip(R"({"op":"paraphrase","id":"u","text":"café \"q\"","n":1})");
  const auto resp = nlohmann::json::parse(line);
  EXPECT_EQ(resp.at("paraphrases").at(0).get<std::string>(), "caf\xc3\xa9 \"q\" [p1]");
}

TEST(ProviderProcess, ErrorResponsesRaise) {
  {
    ProviderProcess proc(kFake + " --wrong-id");
    EXPECT_THROW((void)proc.score("a", "x"), ProviderError);
  }
  {
    ProviderProcess proc(kFake + " --nan");
    EXPECT_THROW((void)proc.score("a", "x"), ProviderError);
  }
  {
    ProviderProcess proc(kFake);
    const auto resp = nlohmann::json::parse(proc.round_trip(R"({"op":"nope","id":"z","text":"t"})"));
    EXPECT_TRUE(resp.contains("error"));
  }
}

TEST(ProviderProcess, DeadChildRaises) {
  ProviderProcess proc("exit 0");
  EXPECT_THROW((void)proc.score("a", "x"), ProviderError);
}

TEST(ProviderProcess, CommandFromEnv) {
  unsetenv(kProviderEnvVar);
  EXPECT_THROW((void)ProviderProcess::command_from_env(), ConfigError);
  setenv(kProviderEnvVar, "", 1);
  EXPECT_THROW((void)ProviderProcess::command_from_env(), ConfigError);
  setenv(kProviderEnvVar, kFake.c_str(), 1);
  EXPECT_EQ(ProviderProcess::command_from_env(), kFake);
  unsetenv(kProviderEnvVar);
}

TEST(ExternalScorer, ScoresThroughProcess) {
  ProviderProcess proc(kFake);
  ExternalScorer scorer(proc);
  EXPECT_DOUBLE_EQ(scorer.score("a"), 1.15);
  std::string long_text;
  for (int i = 0; i < 40; ++i) long_text += "w ";
  EXPECT_DOUBLE_EQ(scorer.score(long_text), 4.0);
  const auto s = sumaug::testing::make_sample("d", {"a b", "a b c d"}, "s");
  EXPECT_DOUBLE_EQ(score_document(s.document, scorer), (1.3 + 1.6) / 2.0);
}

TEST(ExternalParaphraser, ExactCountPerOriginal) {
  const auto corpus = make_fixture(small_fixture_shape());
  ProviderProcess proc(kFake);
  ExternalParaphraser provider(proc);
  SynthConfig cfg;
  cfg.count_per_sample = 4;
  cfg.seed = 3;
  const auto out = synthesize(corpus.train, SynthMethod::kParaphrase, cfg, &provider);
  ASSERT_EQ(out.size(), corpus.train.size() * 4);
  std::map<std::string, int> per_base;
  for (const auto& s : out) {
    EXPECT_EQ(s.origin, Origin::kParaphrase);
    ++per_base[s.id().substr(0, s.id().find('#'))];
  }
  EXPECT_EQ(per_base.size(), corpus.train.size());
  for (const auto& [id, n] : per_base) EXPECT_EQ(n, 4) << id;
  EXPECT_EQ(out[1].summary, corpus.train[0].summary + " [p2]");
}

TEST(ExternalParaphraser, ShortResponseRaises) {
  ProviderProcess proc(kFake + " --short");
  ExternalParaphraser provider(proc);
  SynthConfig cfg;
  cfg.count_per_sample = 3;
  const auto s = sumaug::testing::make_sample("d", {"a", "b"}, "sum");
  EXPECT_THROW((void)synth_paraphrase(s, cfg, provider), ProviderError);
}
