// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sumaug/corpus.hpp"
#include "sumaug/provider.hpp"

namespace sumaug {

struct SynthConfig {
  std::size_t count_per_sample = 10;
  double mask_sample_prob = 0.5;
  double mask_unit_frac = 0.5;
  std::uint64_t seed = 0;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

enum class SynthMethod { kShuffle, kShuffleMask, kParaphrase };

SynthMethod parse_synth_method(std::string_view text);
std::string_view to_string(SynthMethod method);

/// count_per_sample copies with seeded unit permutations; summary unchanged.
std::vector<Sample> synth_shuffle(const Sample& sample, const SynthConfig& config);

/// Shuffle, then with probability mask_sample_prob replace
/// ceil(mask_unit_frac * |units|) distinct units by "<mask>".
std::vector<Sample> synth_shuffle_mask(const Sample& sample, const SynthConfig& config);

/// k-th synthetic sample pairs the k-th provider paraphrase of the summary
/// with a fresh unit permutation. Throws ProviderError unless the provider
/// returns exactly count_per_sample non-empty strings.
std::vector<Sample> synth_paraphrase(const Sample& sample, const SynthConfig& config,
                                     ParaphraseProvider& provider);

/// Applies one method to every sample, preserving input order.
std::vector<Sample> synthesize(const std::vector<Sample>& samples, SynthMethod method,
                               const SynthConfig& config, ParaphraseProvider* provider = nullptr);

/// Deterministic lexical paraphraser: seeded synonym substitution, sentence
/// rotation and filler-phrase insertion or removal. Returns n pairwise
/// distinct strings, each differing from `text` in at least one token.
std::vector<std::string> rule_paraphrase(std::string_view text, std::size_t n, std::uint64_t seed);

/// Built-in provider backed by rule_paraphrase; the per-call seed mixes the
/// provider seed with the request id.
class RuleParaphraser : public ParaphraseProvider {
 public:
  explicit RuleParaphraser(std::uint64_t seed = 0) : seed_(seed) {}

  std::vector<std::string> paraphrase(std::string_view id, std::string_view text,
                                      std::size_t n) override;
  [[nodiscard]] bool reentrant() const override { return true; }

 private:
  std::uint64_t seed_;
};

}  // namespace sumaug
