// SPDX-License-Identifier: Apache-2.0
#include "sumaug/mixgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sumaug/error.hpp"

namespace sumaug {

void MixConfig::validate(int encoder_layers) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("mix.alpha must be > 0");
  if (partners < 1) throw ConfigError("mix.partners must be >= 1");
  if (mix_layer < 0) throw ConfigError("mix.layer must be set (0..encoder layers)");
  if (mix_layer > encoder_layers) {
    throw ConfigError("mix.layer " + std::to_string(mix_layer) + " exceeds encoder depth " +
                      std::to_string(encoder_layers));
  }
}

double draw_lambda(const MixConfig& config, Rng& rng) {
  const double a = rng.gamma(config.alpha);
  const double b = rng.gamma(config.alpha);
  const double x = a + b > 0.0 ? a / (a + b) : 0.5;
  return std::max(x, 1.0 - x);
}

double SparseDist::prob(TokenId id) const {
  double p = 0.0;
  for (std::size_t k = 0; k < support; ++k) {
    if (ids[k] == id) p += probs[k];
  }
  return p;
}

double SparseDist::total() const {
  double t = 0.0;
  for (std::size_t k = 0; k < support; ++k) t += probs[k];
  return t;
}

SparseDist expected_distribution(const TokenSeq& s1, const TokenSeq& s2, std::size_t i,
                                 double lambda, std::size_t vocab_size) {
  const std::size_t longest = std::max(s1.size(), s2.size());
  if (i < 1 || i > longest) {
    throw std::out_of_range("position " + std::to_string(i) + " outside 1.." + std::to_string(longest));
  }
  SparseDist d;
  d.vocab_size = vocab_size;
  const std::size_t shortest = std::min(s1.size(), s2.size());
  if (i <= shortest) {
    const TokenId a = s1[i - 1];
    const TokenId b = s2[i - 1];
    if (a == b || lambda >= 1.0 || lambda <= 0.0) {
      // merged spike; a zero-weight side carries no support
      d.ids[0] = lambda <= 0.0 ? b : a;
      d.probs[0] = 1.0;
      d.support = 1;
    } else {
      d.ids = {a, b};
      d.probs = {lambda, 1.0 - lambda};
      d.support = 2;
    }
  } else {
    d.ids[0] = s1.size() > s2.size() ? s1[i - 1] : s2[i - 1];
    d.probs[0] = 1.0;
    d.support = 1;
  }
  return d;
}

ExpectedTargets expected_targets(const TokenSeq& s1, const TokenSeq& s2, double lambda,
                                 std::size_t vocab_size) {
  ExpectedTargets t;
  t.lambda = lambda;
  t.length1 = s1.size();
  t.length2 = s2.size();
  const std::size_t longest = std::max(s1.size(), s2.size());
  t.positions.reserve(longest);
  for (std::size_t i = 1; i <= longest; ++i) {
    t.positions.push_back(expected_distribution(s1, s2, i, lambda, vocab_size));
  }
  return t;
}

ExpectedTargets one_hot_targets(const TokenSeq& target, std::size_t vocab_size) {
  return expected_targets(target, target, 1.0, vocab_size);
}

TokenSeq sample_teacher_tokens(const TokenSeq& s1, const TokenSeq& s2, double lambda, Rng& rng) {
  const std::size_t shortest = std::min(s1.size(), s2.size());
  const TokenSeq& longer = s1.size() >= s2.size() ? s1 : s2;
  TokenSeq out(longer.size());
  for (std::size_t i = 0; i < shortest; ++i) {
    const double p = rng.uniform();
    out[i] = p <= lambda ? s1[i] : s2[i];
  }
  for (std::size_t i = shortest; i < longer.size(); ++i) out[i] = longer[i];
  return out;
}

Mat mix_hidden(const Mat& h1, const Mat& h2, double lambda) {
  if (h1.rows() != h2.rows() || h1.cols() != h2.cols()) {
    throw std::invalid_argument("mix_hidden: shape mismatch");
  }
  return lambda * h1 + (1.0 - lambda) * h2;
}

Mat log_softmax_rows(const Mat& logits) {
  Mat out(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double m = logits.row(r).maxCoeff();
    const double lse = m + std::log((logits.row(r).array() - m).exp().sum());
    out.row(r) = logits.row(r).array() - lse;
  }
  return out;
}

double kl_loss(const Mat& logits, const ExpectedTargets& targets, Mat* grad) {
  const auto positions = static_cast<Eigen::Index>(targets.positions.size());
  if (logits.rows() != positions) {
    throw std::invalid_argument("kl_loss: " + std::to_string(logits.rows()) + " logit rows for " +
                                std::to_string(positions) + " targets");
  }
  if (positions == 0) {
    if (grad) grad->setZero(logits.rows(), logits.cols());
    return 0.0;
  }
  const Mat log_p = log_softmax_rows(logits);
  const double scale = 1.0 / static_cast<double>(positions);
  double loss = 0.0;
  if (grad) *grad = log_p.array().exp() * scale;
  for (Eigen::Index r = 0; r < positions; ++r) {
    const auto& d = targets.positions[static_cast<std::size_t>(r)];
    for (std::size_t k = 0; k < d.support; ++k) {
      const double t = d.probs[k];
      if (t <= 0.0) continue;
      loss += t * (std::log(t) - log_p(r, d.ids[k]));
      if (grad) (*grad)(r, d.ids[k]) -= t * scale;
    }
  }
  return loss * scale;
}

}  // namespace sumaug
