// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sumaug/random.hpp"
#include "sumaug/tensor.hpp"
#include "sumaug/tokenizer.hpp"

namespace sumaug {

struct MixConfig {
  double alpha = 0.75;
  /// Encoder layer after which hidden states are mixed (0 = embeddings).
  /// No default: callers must set it.
  int mix_layer = -1;
  std::size_t partners = 3;
  std::uint64_t seed = 0;

  /// Throws ConfigError. `encoder_layers` bounds mix_layer.
  void validate(int encoder_layers) const;
};

/// x ~ Beta(alpha, alpha), lambda = max(x, 1 - x), so lambda is in [0.5, 1].
double draw_lambda(const MixConfig& config, Rng& rng);

/// Expected distribution at one decoder position: at most two spikes.
struct SparseDist {
  std::size_t vocab_size = 0;
  std::array<TokenId, 2> ids{};
  std::array<double, 2> probs{};
  std::size_t support = 0;

  [[nodiscard]] double prob(TokenId id) const;
  [[nodiscard]] double total() const;
};

struct ExpectedTargets {
  std::vector<SparseDist> positions;
  double lambda = 1.0;
  std::size_t length1 = 0;
  std::size_t length2 = 0;
};

/// Target at 1-based position i: lambda on s1[i] and 1 - lambda on s2[i]
/// while both sequences have a token there (merged when they agree), then a
/// one-hot on the longer sequence. Throws std::out_of_range for bad i.
SparseDist expected_distribution(const TokenSeq& s1, const TokenSeq& s2, std::size_t i,
                                 double lambda, std::size_t vocab_size);

/// expected_distribution at every position 1..max(L1, L2).
ExpectedTargets expected_targets(const TokenSeq& s1, const TokenSeq& s2, double lambda,
                                 std::size_t vocab_size);

/// One-hot targets for ordinary (unmixed) training.
ExpectedTargets one_hot_targets(const TokenSeq& target, std::size_t vocab_size);

/// Teacher tokens: for i <= min(L1, L2) draw P_i ~ U(0,1) and take s1[i]
/// when P_i <= lambda, else s2[i]; past the shorter sequence copy the longer.
TokenSeq sample_teacher_tokens(const TokenSeq& s1, const TokenSeq& s2, double lambda, Rng& rng);

/// Elementwise lambda * h1 + (1 - lambda) * h2. Throws std::invalid_argument
/// on a shape mismatch.
Mat mix_hidden(const Mat& h1, const Mat& h2, double lambda);

/// Mean over positions of KL(target || softmax(logits)). When `grad` is
/// given it receives d loss / d logits (same shape as logits).
double kl_loss(const Mat& logits, const ExpectedTargets& targets, Mat* grad = nullptr);

/// Row-wise numerically stable log-softmax.
Mat log_softmax_rows(const Mat& logits);

}  // namespace sumaug
