// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "sumaug/error.hpp"
#include "sumaug/fixtures.hpp"
#include "sumaug/synthesis.hpp"
#include "sumaug/tokenizer.hpp"

using namespace sumaug;
using sumaug::testing::make_sample;

namespace {

std::multiset<std::string> unit_set(const Sample& s) {
  std::multiset<std::string> out;
  for (const auto& u : s.document.units) out.insert(u.text);
  return out;
}

Sample four_units() { return make_sample("doc", {"u1", "u2", "u3", "u4"}, "the summary"); }

/// Returns `give` paraphrases no matter what was asked.
class FixedCountProvider : public ParaphraseProvider {
 public:
  explicit FixedCountProvider(std::size_t give, bool empty_one = false) : give_(give), empty_one_(empty_one) {}
  std::vector<std::string> paraphrase(std::string_view, std::string_view text, std::size_t) override {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < give_; ++k) out.push_back(std::string(text) + " v" + std::to_string(k));
    if (empty_one_ && !out.empty()) out.back().clear();
    return out;
  }

 private:
  std::size_t give_;
  bool empty_one_;
};

}  // namespace

TEST(Shuffle, CountsPermutationsAndSummaries) {
  SynthConfig cfg;
  cfg.count_per_sample = 10;
  const auto s = four_units();
  const auto out = synth_shuffle(s, cfg);
  ASSERT_EQ(out.size(), 10u);
  std::set<std::string> ids;
  for (std::size_t k = 0; k < out.size(); ++k) {
    EXPECT_EQ(unit_set(out[k]), unit_set(s));
    EXPECT_EQ(out[k].summary, s.summary);
    EXPECT_EQ(out[k].origin, Origin::kShuffle);
    EXPECT_EQ(out[k].id(), "doc#shuf" + std::to_string(k + 1));
    EXPECT_EQ(out[k].document.group, s.document.group);
    ids.insert(out[k].id());
  }
  EXPECT_EQ(ids.size(), 10u);
}

TEST(Shuffle, ActuallyReorders) {
  SynthConfig cfg;
  cfg.count_per_sample = 10;
  const auto s = four_units();
  const auto out = synth_shuffle(s, cfg);
  const bool any_moved = std::any_of(out.begin(), out.end(), [&](const Sample& x) {
    return x.document.units != s.document.units;
  });
  EXPECT_TRUE(any_moved);
}

TEST(Shuffle, SingleUnitAndDeterminism) {
  SynthConfig cfg;
  cfg.count_per_sample = 3;
  const auto one = make_sample("one", {"only"}, "sum");
  for (const auto& c : synth_shuffle(one, cfg)) EXPECT_EQ(c.document.units, one.document.units);
  EXPECT_EQ(synth_shuffle(four_units(), cfg), synth_shuffle(four_units(), cfg));
  cfg.seed = 99;
  SynthConfig other = cfg;
  other.seed = 100;
  EXPECT_NE(synth_shuffle(four_units(), cfg), synth_shuffle(four_units(), other));
}

TEST(ShuffleMask, ZeroProbabilityMatchesShuffle) {
  SynthConfig cfg;
  cfg.mask_sample_prob = 0.0;
  const auto s = four_units();
  const auto masked = synth_shuffle_mask(s, cfg);
  const auto shuffled = synth_shuffle(s, cfg);
  ASSERT_EQ(masked.size(), shuffled.size());
  for (std::size_t k = 0; k < masked.size(); ++k) {
    EXPECT_EQ(masked[k].document.units, shuffled[k].document.units);
    EXPECT_EQ(masked[k].origin, Origin::kShuffleMask);
    EXPECT_EQ(masked[k].id(), "doc#mask" + std::to_string(k + 1));
  }
}

TEST(ShuffleMask, SaturationMasksEverything) {
  SynthConfig cfg;
  cfg.mask_sample_prob = 1.0;
  cfg.mask_unit_frac = 1.0;
  for (const auto& s : synth_shuffle_mask(four_units(), cfg)) {
    for (const auto& u : s.document.units) EXPECT_EQ(u.text, special::kMaskText);
  }
}

TEST(ShuffleMask, MaskedSlotRate) {
  SynthConfig cfg;
  cfg.count_per_sample = 50;
  const auto doc = make_sample("d", {"a", "b", "c", "d", "e", "f", "g", "h"}, "s");
  std::size_t masked = 0, slots = 0;
  for (int rep = 0; rep < 100; ++rep) {  // 5000 samples
    cfg.seed = static_cast<std::uint64_t>(rep);
    for (const auto& s : synth_shuffle_mask(doc, cfg)) {
      for (const auto& u : s.document.units) {
        ++slots;
        masked += u.text == special::kMaskText;
      }
    }
  }
  EXPECT_NEAR(static_cast<double>(masked) / static_cast<double>(slots), 0.25, 0.02);
}

TEST(ShuffleMask, MaskedSamplesKeepUnmaskedUnits) {
  SynthConfig cfg;
  cfg.mask_sample_prob = 1.0;
  cfg.count_per_sample = 20;
  const auto s = make_sample("d", {"a", "b", "c", "d", "e"}, "s");
  for (const auto& x : synth_shuffle_mask(s, cfg)) {
    std::size_t masks = 0;
    for (const auto& u : x.document.units) masks += u.text == special::kMaskText;
    EXPECT_EQ(masks, 3u);  // ceil(0.5 * 5)
  }
}

TEST(Paraphrase, CountsWithBuiltinProvider) {
  SynthConfig cfg;
  cfg.count_per_sample = 5;
  RuleParaphraser rule(3);
  const auto s = make_sample("d", {"a", "b"}, "Students liked the lecture about sorting.");
  const auto out = synth_paraphrase(s, cfg, rule);
  ASSERT_EQ(out.size(), 5u);
  for (std::size_t k = 0; k < out.size(); ++k) {
    EXPECT_EQ(out[k].origin, Origin::kParaphrase);
    EXPECT_EQ(out[k].id(), "d#para" + std::to_string(k + 1));
    EXPECT_EQ(unit_set(out[k]), unit_set(s));
    EXPECT_NE(out[k].summary, s.summary);
  }
}

TEST(Paraphrase, TrainSplitOfReflectionFixtureTimesTen) {
  const auto corpus = make_fixture(reflection_fixture_shape());
  ASSERT_EQ(corpus.train.size(), 294u);
  SynthConfig cfg;
  cfg.count_per_sample = 10;
  EXPECT_EQ(synthesize(corpus.train, SynthMethod::kParaphrase, cfg).size(), 2940u);
  cfg.count_per_sample = 5;
  EXPECT_EQ(synthesize(corpus.train, SynthMethod::kShuffle, cfg).size(), 1470u);
}

TEST(Paraphrase, ShortOrEmptyListsAbortWithNoOutput) {
  SynthConfig cfg;
  cfg.count_per_sample = 5;
  const std::vector<Sample> samples{four_units()};
  std::vector<Sample> out;
  FixedCountProvider short_list(3);
  EXPECT_THROW(out = synthesize(samples, SynthMethod::kParaphrase, cfg, &short_list), ProviderError);
  EXPECT_TRUE(out.empty());
  FixedCountProvider with_empty(5, true);
  EXPECT_THROW((void)synth_paraphrase(samples[0], cfg, with_empty), ProviderError);
  FixedCountProvider too_many(6);
  EXPECT_THROW((void)synth_paraphrase(samples[0], cfg, too_many), ProviderError);
}

TEST(RuleParaphrase, DeterministicDistinctAndChanged) {
  const auto a = rule_paraphrase("students liked the lecture.", 2, 7);
  EXPECT_EQ(a, rule_paraphrase("students liked the lecture.", 2, 7));
  for (const std::string text : {"students liked the lecture.", "x", "", "Nothing.", "a b c. d e f. g h."}) {
    const auto out = rule_paraphrase(text, 4, 1);
    ASSERT_EQ(out.size(), 4u) << text;
    EXPECT_EQ(std::set<std::string>(out.begin(), out.end()).size(), 4u) << text;
    for (const auto& p : out) EXPECT_FALSE(p.empty());
  }
}

TEST(RuleParaphrase, FixtureSummariesChangeByAtLeastOneToken) {
  const auto corpus = make_fixture(small_fixture_shape());
  for (const auto& s : corpus.train) {
    for (const auto& p : rule_paraphrase(s.summary, 5, 11)) {
      EXPECT_NE(normalize_tokens(p), normalize_tokens(s.summary)) << p;
    }
  }
}

TEST(SynthConfig, ValidatesRanges) {
  SynthConfig cfg;
  cfg.count_per_sample = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.mask_sample_prob = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.mask_unit_frac = -0.1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(parse_synth_method("rotate"), ConfigError);
}
