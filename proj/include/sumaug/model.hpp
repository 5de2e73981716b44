// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sumaug/corpus.hpp"
#include "sumaug/tensor.hpp"
#include "sumaug/tokenizer.hpp"

namespace sumaug {

struct ModelConfig {
  int width = 64;
  int encoder_layers = 2;
  int decoder_layers = 2;
  int attention_heads = 2;
  int feedforward_width = 128;
  int max_src_len = 256;
  int max_tgt_len = 48;
  std::uint64_t seed = 1;

  /// Throws ConfigError.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// A named trainable array and its gradient accumulator.
struct ParamTensor {
  std::string name;
  Mat value;
  Mat grad;
};

class ParameterSet {
 public:
  std::size_t add(std::string name, Eigen::Index rows, Eigen::Index cols);

  [[nodiscard]] const Mat& value(std::size_t i) const { return tensors_[i].value; }
  Mat& value(std::size_t i) { return tensors_[i].value; }
  Mat& grad(std::size_t i) { return tensors_[i].grad; }

  [[nodiscard]] std::size_t size() const { return tensors_.size(); }
  [[nodiscard]] std::size_t scalar_count() const;
  std::vector<ParamTensor>& tensors() { return tensors_; }
  [[nodiscard]] const std::vector<ParamTensor>& tensors() const { return tensors_; }

  void zero_grad();
  [[nodiscard]] double grad_norm() const;
  void scale_grad(double factor);

 private:
  std::vector<ParamTensor> tensors_;
};

/// Encoder hidden states plus the number of leading rows that may be
/// attended to. Rows past `length` are padding.
struct EncodedSource {
  Mat hidden;
  std::size_t length = 0;
};

/// Second half of a mixed training instance.
struct MixPartner {
  TokenSeq source;
  TokenSeq target;
  double lambda = 1.0;
  std::uint64_t teacher_seed = 0;
};

/// One training example. `target` holds the summary ids followed by EOS
/// (no BOS); it is cut to max_tgt_len.
struct TrainingInstance {
  TokenSeq source;
  TokenSeq target;
  std::optional<MixPartner> partner;
  int mix_layer = 0;
};

/// Serializable snapshot of a model.
struct Checkpoint {
  ModelConfig config;
  std::vector<std::string> vocab_tokens;  // non-reserved tokens in id order
  std::size_t step = 0;
  double val_rouge = 0.0;
  std::vector<std::pair<std::string, Mat>> params;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Parameter indices of each building block inside a ParameterSet.
namespace layout {
struct Linear { std::size_t w = 0, b = 0; };
struct Norm { std::size_t gain = 0, bias = 0; };
struct Attention { Linear q, k, v, o; };
struct FeedForward { Linear in, out; };
struct EncoderBlock { Norm norm1, norm2; Attention attn; FeedForward ff; };
struct DecoderBlock { Norm norm1, norm2, norm3; Attention self_attn, cross_attn; FeedForward ff; };
}  // namespace layout

/// Small pre-norm transformer encoder-decoder with hand-written backward
/// passes. Encoder layers can be run in two halves so that hidden states of
/// two inputs can be mixed at any layer boundary.
class Seq2SeqModel {
 public:
  Seq2SeqModel(const ModelConfig& config, std::size_t vocab_size);
  explicit Seq2SeqModel(const Checkpoint& ckpt);

  [[nodiscard]] const ModelConfig& config() const { return config_; }
  [[nodiscard]] std::size_t vocab_size() const { return vocab_size_; }
  ParameterSet& parameters() { return params_; }
  [[nodiscard]] const ParameterSet& parameters() const { return params_; }

  /// Embeds `input` padded (or cut) to max_src_len and runs the first k
  /// encoder blocks; k = 0 returns embeddings plus positions.
  [[nodiscard]] EncodedSource encode_to_layer(const TokenSeq& input, int k) const;

  /// Runs encoder blocks k+1..encoder_layers on `hidden`.
  [[nodiscard]] EncodedSource resume_encode(const EncodedSource& hidden, int k) const;

  /// Full encoder without padding rows (equivalent on the real rows).
  [[nodiscard]] EncodedSource encode(const TokenSeq& input) const;

  /// Causal decoding over BOS-prefixed teacher tokens; one logits row per
  /// input position. Throws std::invalid_argument past max_tgt_len.
  [[nodiscard]] Mat decode_teacher_forced(const EncodedSource& encoded, const TokenSeq& teacher) const;

  /// Argmax decoding from BOS until EOS or max_len tokens.
  [[nodiscard]] TokenSeq greedy_decode_ids(const TokenSeq& source, std::size_t max_len) const;
  [[nodiscard]] std::string greedy_decode(const Document& doc, const Vocab& vocab,
                                          std::size_t max_len) const;

  /// Forward pass only; the loss train_instance would report.
  [[nodiscard]] double loss(const TrainingInstance& instance) const;

  /// Forward and backward; gradients are added (scaled by grad_scale) into
  /// the parameter accumulators. Returns the unscaled loss.
  double accumulate_gradients(const TrainingInstance& instance, double grad_scale = 1.0);

  [[nodiscard]] Checkpoint to_checkpoint(const Vocab& vocab, std::size_t step, double val_rouge) const;
  void load_parameters(const std::vector<std::pair<std::string, Mat>>& params);

 private:
  void build();
  double run(const TrainingInstance& instance, bool backward, double grad_scale);

  ModelConfig config_;
  std::size_t vocab_size_;
  ParameterSet params_;
  Mat positions_;

  std::size_t src_embed_ = 0;
  std::size_t tgt_embed_ = 0;
  std::vector<layout::EncoderBlock> encoder_;
  layout::Norm memory_norm_{};
  std::vector<layout::DecoderBlock> decoder_;
  layout::Norm final_norm_{};
  layout::Linear output_{};
};

/// Adaptive-moment optimizer with linear warmup to a constant rate and
/// optional global-norm gradient clipping.
class AdamOptimizer {
 public:
  struct Options {
    double learning_rate = 3e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::size_t warmup_steps = 0;
    double clip_norm = 1.0;  // <= 0 disables clipping
  };

  AdamOptimizer(ParameterSet& params, Options options);

  /// Applies one update from the accumulated gradients (does not clear them).
  void step();
  [[nodiscard]] double current_rate() const;
  [[nodiscard]] std::size_t steps_taken() const { return t_; }

 private:
  ParameterSet& params_;
  Options options_;
  std::vector<Mat> m_;
  std::vector<Mat> v_;
  std::size_t t_ = 0;
};

}  // namespace sumaug
