// SPDX-License-Identifier: Apache-2.0
#include "sumaug/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sumaug/error.hpp"
#include "sumaug/mixgen.hpp"
#include "sumaug/random.hpp"

namespace sumaug {

void ModelConfig::validate() const {
  if (width < 1 || attention_heads < 1 || width % attention_heads != 0) {
    throw ConfigError("model.width must be a positive multiple of model.heads");
  }
  if (encoder_layers < 0 || decoder_layers < 1) {
    throw ConfigError("model needs >= 0 encoder layers and >= 1 decoder layer");
  }
  if (feedforward_width < 1 || max_src_len < 1 || max_tgt_len < 1) {
    throw ConfigError("model.ff_width, model.max_src_len and model.max_tgt_len must be >= 1");
  }
}

// ---------------------------------------------------------------------------
// ParameterSet

std::size_t ParameterSet::add(std::string name, Eigen::Index rows, Eigen::Index cols) {
  tensors_.push_back({std::move(name), Mat::Zero(rows, cols), Mat::Zero(rows, cols)});
  return tensors_.size() - 1;
}

std::size_t ParameterSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += static_cast<std::size_t>(t.value.size());
  return n;
}

void ParameterSet::zero_grad() {
  for (auto& t : tensors_) t.grad.setZero();
}

double ParameterSet::grad_norm() const {
  double sq = 0.0;
  for (const auto& t : tensors_) sq += t.grad.squaredNorm();
  return std::sqrt(sq);
}

void ParameterSet::scale_grad(double factor) {
  for (auto& t : tensors_) t.grad *= factor;
}

// ---------------------------------------------------------------------------
// Layer kernels. Forward functions fill an optional cache that the matching
// backward function consumes; backward functions add into parameter grads
// and return the gradient with respect to their input.

namespace {

constexpr double kNormEps = 1e-5;

Mat linear_fwd(const ParameterSet& p, const layout::Linear& l, const Mat& x) {
  Mat y = x * p.value(l.w);
  y.rowwise() += p.value(l.b).row(0);
  return y;
}

Mat linear_bwd(ParameterSet& p, const layout::Linear& l, const Mat& x, const Mat& dy) {
  p.grad(l.w).noalias() += x.transpose() * dy;
  p.grad(l.b) += dy.colwise().sum();
  return dy * p.value(l.w).transpose();
}

struct NormCache {
  Mat xhat;
  Eigen::VectorXd inv_std;
};

Mat norm_fwd(const ParameterSet& p, const layout::Norm& n, const Mat& x, NormCache* cache) {
  Mat xhat(x.rows(), x.cols());
  Eigen::VectorXd inv(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mu = x.row(r).mean();
    const auto centered = (x.row(r).array() - mu).eval();
    inv(r) = 1.0 / std::sqrt(centered.square().mean() + kNormEps);
    xhat.row(r) = centered * inv(r);
  }
  Mat y = (xhat.array().rowwise() * p.value(n.gain).row(0).array()).matrix();
  y.rowwise() += p.value(n.bias).row(0);
  if (cache) {
    cache->xhat = std::move(xhat);
    cache->inv_std = std::move(inv);
  }
  return y;
}

Mat norm_bwd(ParameterSet& p, const layout::Norm& n, const NormCache& c, const Mat& dy) {
  p.grad(n.gain) += (dy.array() * c.xhat.array()).colwise().sum().matrix();
  p.grad(n.bias) += dy.colwise().sum();
  const Mat dxhat = (dy.array().rowwise() * p.value(n.gain).row(0).array()).matrix();
  Mat dx(dy.rows(), dy.cols());
  for (Eigen::Index r = 0; r < dy.rows(); ++r) {
    const double m1 = dxhat.row(r).mean();
    const double m2 = (dxhat.row(r).array() * c.xhat.row(r).array()).mean();
    dx.row(r) = c.inv_std(r) * (dxhat.row(r).array() - m1 - c.xhat.row(r).array() * m2);
  }
  return dx;
}

struct AttentionCache {
  Mat xq, xkv, q, k, v, context;
  std::vector<Mat> probs;  // per head: query rows x key_len
  Eigen::Index key_len = 0;
};

Mat attention_fwd(const ParameterSet& p, const layout::Attention& a, int heads, const Mat& xq,
                  const Mat& xkv, std::size_t key_len, bool causal, AttentionCache* cache) {
  Mat q = linear_fwd(p, a.q, xq);
  Mat k = linear_fwd(p, a.k, xkv);
  Mat v = linear_fwd(p, a.v, xkv);
  const Eigen::Index width = q.cols();
  const Eigen::Index dh = width / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const Eigen::Index klen = std::min<Eigen::Index>(static_cast<Eigen::Index>(key_len), xkv.rows());

  Mat context(xq.rows(), width);
  std::vector<Mat> probs(static_cast<std::size_t>(heads));
  for (int h = 0; h < heads; ++h) {
    Mat s = (q.middleCols(h * dh, dh) * k.middleCols(h * dh, dh).topRows(klen).transpose()) * scale;
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
      const Eigen::Index valid = causal ? std::min(klen, r + 1) : klen;
      auto row = s.row(r);
      const double m = row.head(valid).maxCoeff();
      row.head(valid) = (row.head(valid).array() - m).exp().matrix();
      row.head(valid) /= row.head(valid).sum();
      row.tail(klen - valid).setZero();
    }
    context.middleCols(h * dh, dh).noalias() = s * v.middleCols(h * dh, dh).topRows(klen);
    probs[static_cast<std::size_t>(h)] = std::move(s);
  }
  Mat out = linear_fwd(p, a.o, context);
  if (cache) {
    cache->xq = xq;
    cache->xkv = xkv;
    cache->q = std::move(q);
    cache->k = std::move(k);
    cache->v = std::move(v);
    cache->context = std::move(context);
    cache->probs = std::move(probs);
    cache->key_len = klen;
  }
  return out;
}

struct AttentionGrads {
  Mat dxq;
  Mat dxkv;
};

AttentionGrads attention_bwd(ParameterSet& p, const layout::Attention& a, int heads,
                             const AttentionCache& c, const Mat& dy) {
  const Mat dctx = linear_bwd(p, a.o, c.context, dy);
  const Eigen::Index width = c.q.cols();
  const Eigen::Index dh = width / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const Eigen::Index klen = c.key_len;

  Mat dq = Mat::Zero(c.q.rows(), width);
  Mat dk = Mat::Zero(c.k.rows(), width);
  Mat dv = Mat::Zero(c.v.rows(), width);
  for (int h = 0; h < heads; ++h) {
    const Mat& prob = c.probs[static_cast<std::size_t>(h)];
    const auto dctx_h = dctx.middleCols(h * dh, dh);
    const Mat dprob = dctx_h * c.v.middleCols(h * dh, dh).topRows(klen).transpose();
    dv.middleCols(h * dh, dh).topRows(klen).noalias() += prob.transpose() * dctx_h;
    const Eigen::VectorXd dots = (dprob.array() * prob.array()).rowwise().sum();
    const Mat dscore = (prob.array() * (dprob.array().colwise() - dots.array())).matrix() * scale;
    dq.middleCols(h * dh, dh).noalias() += dscore * c.k.middleCols(h * dh, dh).topRows(klen);
    dk.middleCols(h * dh, dh).topRows(klen).noalias() += dscore.transpose() * c.q.middleCols(h * dh, dh);
  }
  AttentionGrads g;
  g.dxq = linear_bwd(p, a.q, c.xq, dq);
  g.dxkv = linear_bwd(p, a.k, c.xkv, dk);
  g.dxkv += linear_bwd(p, a.v, c.xkv, dv);
  return g;
}

struct FeedForwardCache {
  Mat x, pre, act;
};

Mat ff_fwd(const ParameterSet& p, const layout::FeedForward& f, const Mat& x, FeedForwardCache* cache) {
  Mat pre = linear_fwd(p, f.in, x);
  Mat act = pre.cwiseMax(0.0);
  Mat y = linear_fwd(p, f.out, act);
  if (cache) {
    cache->x = x;
    cache->pre = std::move(pre);
    cache->act = std::move(act);
  }
  return y;
}

Mat ff_bwd(ParameterSet& p, const layout::FeedForward& f, const FeedForwardCache& c, const Mat& dy) {
  const Mat dact = linear_bwd(p, f.out, c.act, dy);
  const Mat dpre = (c.pre.array() > 0.0).select(dact, Mat::Zero(dact.rows(), dact.cols()));
  return linear_bwd(p, f.in, c.x, dpre);
}

struct EncoderBlockCache {
  NormCache n1, n2;
  AttentionCache attn;
  FeedForwardCache ff;
};

Mat encoder_block_fwd(const ParameterSet& p, const layout::EncoderBlock& blk, int heads, const Mat& x,
                      std::size_t key_len, EncoderBlockCache* c) {
  const Mat a = norm_fwd(p, blk.norm1, x, c ? &c->n1 : nullptr);
  Mat x1 = x + attention_fwd(p, blk.attn, heads, a, a, key_len, false, c ? &c->attn : nullptr);
  const Mat b = norm_fwd(p, blk.norm2, x1, c ? &c->n2 : nullptr);
  x1 += ff_fwd(p, blk.ff, b, c ? &c->ff : nullptr);
  return x1;
}

Mat encoder_block_bwd(ParameterSet& p, const layout::EncoderBlock& blk, int heads,
                      const EncoderBlockCache& c, const Mat& dy) {
  Mat dx1 = dy + norm_bwd(p, blk.norm2, c.n2, ff_bwd(p, blk.ff, c.ff, dy));
  const auto g = attention_bwd(p, blk.attn, heads, c.attn, dx1);
  dx1 += norm_bwd(p, blk.norm1, c.n1, g.dxq + g.dxkv);
  return dx1;
}

struct DecoderBlockCache {
  NormCache n1, n2, n3;
  AttentionCache self_attn, cross_attn;
  FeedForwardCache ff;
};

Mat decoder_block_fwd(const ParameterSet& p, const layout::DecoderBlock& blk, int heads, const Mat& x,
                      const Mat& memory, std::size_t memory_len, DecoderBlockCache* c) {
  const Mat a = norm_fwd(p, blk.norm1, x, c ? &c->n1 : nullptr);
  Mat y = x + attention_fwd(p, blk.self_attn, heads, a, a, static_cast<std::size_t>(x.rows()), true,
                            c ? &c->self_attn : nullptr);
  const Mat b = norm_fwd(p, blk.norm2, y, c ? &c->n2 : nullptr);
  y += attention_fwd(p, blk.cross_attn, heads, b, memory, memory_len, false, c ? &c->cross_attn : nullptr);
  const Mat d = norm_fwd(p, blk.norm3, y, c ? &c->n3 : nullptr);
  y += ff_fwd(p, blk.ff, d, c ? &c->ff : nullptr);
  return y;
}

Mat decoder_block_bwd(ParameterSet& p, const layout::DecoderBlock& blk, int heads,
                      const DecoderBlockCache& c, const Mat& dy, Mat& dmemory) {
  Mat dx = dy + norm_bwd(p, blk.norm3, c.n3, ff_bwd(p, blk.ff, c.ff, dy));
  const auto cross = attention_bwd(p, blk.cross_attn, heads, c.cross_attn, dx);
  dmemory += cross.dxkv;
  dx += norm_bwd(p, blk.norm2, c.n2, cross.dxq);
  const auto self = attention_bwd(p, blk.self_attn, heads, c.self_attn, dx);
  dx += norm_bwd(p, blk.norm1, c.n1, self.dxq + self.dxkv);
  return dx;
}

TokenSeq clip(const TokenSeq& s, int max_len) {
  return TokenSeq(s.begin(), s.begin() + std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(s.size()), max_len));
}

}  // namespace

// ---------------------------------------------------------------------------
// Seq2SeqModel

Seq2SeqModel::Seq2SeqModel(const ModelConfig& config, std::size_t vocab_size)
    : config_(config), vocab_size_(vocab_size) {
  config_.validate();
  if (vocab_size_ < special::kCount) throw ConfigError("vocabulary must hold the reserved tokens");
  build();

  Rng rng(SeedBuilder(config_.seed).add("init").value());
  const double embed_range = std::sqrt(3.0 / config_.width);
  for (auto& t : params_.tensors()) {
    const auto& name = t.name;
    if (name.ends_with(".gain")) {
      t.value.setOnes();
    } else if (name.ends_with(".bias")) {
      t.value.setZero();
    } else {
      const double range = name.ends_with("embed")
                               ? embed_range
                               : std::sqrt(6.0 / static_cast<double>(t.value.rows() + t.value.cols()));
      for (Eigen::Index i = 0; i < t.value.size(); ++i) t.value.data()[i] = (2.0 * rng.uniform() - 1.0) * range;
    }
  }
}

Seq2SeqModel::Seq2SeqModel(const Checkpoint& ckpt)
    : config_(ckpt.config), vocab_size_(ckpt.vocab_tokens.size() + special::kCount) {
  config_.validate();
  build();
  load_parameters(ckpt.params);
}

void Seq2SeqModel::build() {
  const Eigen::Index w = config_.width;
  const Eigen::Index ff = config_.feedforward_width;
  const auto v = static_cast<Eigen::Index>(vocab_size_);
  auto linear = [&](const std::string& name, Eigen::Index in, Eigen::Index out) {
    layout::Linear l;
    l.w = params_.add(name + ".weight", in, out);
    l.b = params_.add(name + ".bias", 1, out);
    return l;
  };
  auto norm = [&](const std::string& name) {
    layout::Norm n;
    n.gain = params_.add(name + ".gain", 1, w);
    n.bias = params_.add(name + ".bias", 1, w);
    return n;
  };
  auto attention = [&](const std::string& name) {
    return layout::Attention{linear(name + ".q", w, w), linear(name + ".k", w, w),
                             linear(name + ".v", w, w), linear(name + ".o", w, w)};
  };
  auto feed_forward = [&](const std::string& name) {
    return layout::FeedForward{linear(name + ".in", w, ff), linear(name + ".out", ff, w)};
  };

  src_embed_ = params_.add("encoder.embed", v, w);
  for (int b = 0; b < config_.encoder_layers; ++b) {
    const std::string prefix = "encoder." + std::to_string(b);
    layout::EncoderBlock blk;
    blk.norm1 = norm(prefix + ".norm1");
    blk.attn = attention(prefix + ".attn");
    blk.norm2 = norm(prefix + ".norm2");
    blk.ff = feed_forward(prefix + ".ff");
    encoder_.push_back(blk);
  }
  memory_norm_ = norm("encoder.memory_norm");

  tgt_embed_ = params_.add("decoder.embed", v, w);
  for (int b = 0; b < config_.decoder_layers; ++b) {
    const std::string prefix = "decoder." + std::to_string(b);
    layout::DecoderBlock blk;
    blk.norm1 = norm(prefix + ".norm1");
    blk.self_attn = attention(prefix + ".self_attn");
    blk.norm2 = norm(prefix + ".norm2");
    blk.cross_attn = attention(prefix + ".cross_attn");
    blk.norm3 = norm(prefix + ".norm3");
    blk.ff = feed_forward(prefix + ".ff");
    decoder_.push_back(blk);
  }
  final_norm_ = norm("decoder.final_norm");
  output_ = linear("output", w, v);

  const int rows = std::max(config_.max_src_len, config_.max_tgt_len) + 1;
  positions_.resize(rows, w);
  for (int pos = 0; pos < rows; ++pos) {
    for (Eigen::Index i = 0; i < w; ++i) {
      const double freq = std::pow(10000.0, -static_cast<double>(2 * (i / 2)) / static_cast<double>(w));
      positions_(pos, i) = i % 2 == 0 ? std::sin(pos * freq) : std::cos(pos * freq);
    }
  }
}

namespace {

Mat embed(const ParameterSet& p, std::size_t table, const TokenSeq& ids, Eigen::Index rows,
          const Mat& positions) {
  const Mat& e = p.value(table);
  const double scale = std::sqrt(static_cast<double>(e.cols()));
  Mat x(rows, e.cols());
  for (Eigen::Index r = 0; r < rows; ++r) {
    const TokenId id = static_cast<std::size_t>(r) < ids.size() ? ids[static_cast<std::size_t>(r)] : special::kPad;
    if (id < 0 || id >= e.rows()) throw std::out_of_range("token id outside the embedding table");
    x.row(r) = e.row(id) * scale + positions.row(r);
  }
  return x;
}

void embed_bwd(ParameterSet& p, std::size_t table, const TokenSeq& ids, const Mat& dx) {
  Mat& g = p.grad(table);
  const double scale = std::sqrt(static_cast<double>(g.cols()));
  for (Eigen::Index r = 0; r < dx.rows(); ++r) {
    const TokenId id = static_cast<std::size_t>(r) < ids.size() ? ids[static_cast<std::size_t>(r)] : special::kPad;
    g.row(id) += dx.row(r) * scale;
  }
}

}  // namespace

EncodedSource Seq2SeqModel::encode_to_layer(const TokenSeq& input, int k) const {
  if (k < 0 || k > config_.encoder_layers) {
    throw std::out_of_range("encoder layer " + std::to_string(k) + " outside 0.." +
                            std::to_string(config_.encoder_layers));
  }
  const TokenSeq src = clip(input, config_.max_src_len);
  EncodedSource out;
  out.length = std::max<std::size_t>(1, src.size());
  out.hidden = embed(params_, src_embed_, src, config_.max_src_len, positions_);
  for (int b = 0; b < k; ++b) {
    out.hidden = encoder_block_fwd(params_, encoder_[static_cast<std::size_t>(b)], config_.attention_heads,
                                   out.hidden, out.length, nullptr);
  }
  return out;
}

EncodedSource Seq2SeqModel::resume_encode(const EncodedSource& hidden, int k) const {
  if (k < 0 || k > config_.encoder_layers) throw std::out_of_range("encoder layer outside range");
  if (hidden.hidden.cols() != config_.width ||
      static_cast<std::size_t>(hidden.hidden.rows()) < hidden.length || hidden.length == 0) {
    throw std::invalid_argument("resume_encode: hidden state shape mismatch");
  }
  EncodedSource out = hidden;
  for (int b = k; b < config_.encoder_layers; ++b) {
    out.hidden = encoder_block_fwd(params_, encoder_[static_cast<std::size_t>(b)], config_.attention_heads,
                                   out.hidden, out.length, nullptr);
  }
  return out;
}

EncodedSource Seq2SeqModel::encode(const TokenSeq& input) const {
  const TokenSeq src = clip(input, config_.max_src_len);
  EncodedSource out;
  out.length = std::max<std::size_t>(1, src.size());
  out.hidden = embed(params_, src_embed_, src, static_cast<Eigen::Index>(out.length), positions_);
  for (const auto& blk : encoder_) {
    out.hidden = encoder_block_fwd(params_, blk, config_.attention_heads, out.hidden, out.length, nullptr);
  }
  return out;
}

Mat Seq2SeqModel::decode_teacher_forced(const EncodedSource& encoded, const TokenSeq& teacher) const {
  if (teacher.empty() || teacher.size() > static_cast<std::size_t>(config_.max_tgt_len)) {
    throw std::invalid_argument("teacher sequence length " + std::to_string(teacher.size()) +
                                " outside 1.." + std::to_string(config_.max_tgt_len));
  }
  const Mat memory = norm_fwd(params_, memory_norm_, encoded.hidden, nullptr);
  Mat y = embed(params_, tgt_embed_, teacher, static_cast<Eigen::Index>(teacher.size()), positions_);
  for (const auto& blk : decoder_) {
    y = decoder_block_fwd(params_, blk, config_.attention_heads, y, memory, encoded.length, nullptr);
  }
  return linear_fwd(params_, output_, norm_fwd(params_, final_norm_, y, nullptr));
}

TokenSeq Seq2SeqModel::greedy_decode_ids(const TokenSeq& source, std::size_t max_len) const {
  const std::size_t limit = std::min<std::size_t>(max_len, static_cast<std::size_t>(config_.max_tgt_len));
  const EncodedSource enc = encode(source);
  const Mat memory = norm_fwd(params_, memory_norm_, enc.hidden, nullptr);
  TokenSeq input{special::kBos};
  TokenSeq out;
  while (out.size() < limit) {
    Mat y = embed(params_, tgt_embed_, input, static_cast<Eigen::Index>(input.size()), positions_);
    for (const auto& blk : decoder_) {
      y = decoder_block_fwd(params_, blk, config_.attention_heads, y, memory, enc.length, nullptr);
    }
    const Mat last = norm_fwd(params_, final_norm_, y.bottomRows(1), nullptr);
    RowVec logits = last * params_.value(output_.w) + params_.value(output_.b);
    logits(special::kPad) = -std::numeric_limits<double>::infinity();
    logits(special::kBos) = -std::numeric_limits<double>::infinity();
    Eigen::Index best = 0;
    logits.maxCoeff(&best);
    if (best == special::kEos) break;
    out.push_back(static_cast<TokenId>(best));
    input.push_back(static_cast<TokenId>(best));
  }
  return out;
}

std::string Seq2SeqModel::greedy_decode(const Document& doc, const Vocab& vocab, std::size_t max_len) const {
  return decode(greedy_decode_ids(encode_document(doc, vocab), max_len), vocab);
}

double Seq2SeqModel::loss(const TrainingInstance& instance) const {
  return const_cast<Seq2SeqModel*>(this)->run(instance, false, 1.0);
}

double Seq2SeqModel::accumulate_gradients(const TrainingInstance& instance, double grad_scale) {
  return run(instance, true, grad_scale);
}

double Seq2SeqModel::run(const TrainingInstance& instance, bool backward, double grad_scale) {
  const int heads = config_.attention_heads;
  const auto encoder_depth = static_cast<int>(encoder_.size());

  const TokenSeq src1 = clip(instance.source, config_.max_src_len);
  const TokenSeq tgt1 = clip(instance.target, config_.max_tgt_len);
  if (tgt1.empty()) throw DataError("training instance with an empty target");
  const std::size_t len1 = std::max<std::size_t>(1, src1.size());

  // ---- encoder
  std::vector<EncoderBlockCache> lower1, lower2, upper;
  TokenSeq src2;
  Mat hidden;
  std::size_t key_len = len1;
  int split = 0;
  double lambda = 1.0;
  if (!instance.partner) {
    hidden = embed(params_, src_embed_, src1, static_cast<Eigen::Index>(len1), positions_);
  } else {
    const auto& partner = *instance.partner;
    split = instance.mix_layer;
    if (split < 0 || split > encoder_depth) throw std::out_of_range("mix layer outside encoder depth");
    lambda = partner.lambda;
    src2 = clip(partner.source, config_.max_src_len);
    const std::size_t len2 = std::max<std::size_t>(1, src2.size());
    key_len = std::max(len1, len2);
    const auto rows = static_cast<Eigen::Index>(key_len);
    Mat h1 = embed(params_, src_embed_, src1, rows, positions_);
    Mat h2 = embed(params_, src_embed_, src2, rows, positions_);
    lower1.resize(static_cast<std::size_t>(split));
    lower2.resize(static_cast<std::size_t>(split));
    for (int b = 0; b < split; ++b) {
      const auto& blk = encoder_[static_cast<std::size_t>(b)];
      h1 = encoder_block_fwd(params_, blk, heads, h1, len1, backward ? &lower1[b] : nullptr);
      h2 = encoder_block_fwd(params_, blk, heads, h2, len2, backward ? &lower2[b] : nullptr);
    }
    hidden = mix_hidden(h1, h2, lambda);
  }
  upper.resize(static_cast<std::size_t>(encoder_depth - split));
  for (int b = split; b < encoder_depth; ++b) {
    hidden = encoder_block_fwd(params_, encoder_[static_cast<std::size_t>(b)], heads, hidden, key_len,
                               backward ? &upper[static_cast<std::size_t>(b - split)] : nullptr);
  }
  NormCache memory_cache;
  const Mat memory = norm_fwd(params_, memory_norm_, hidden, backward ? &memory_cache : nullptr);

  // ---- targets and teacher tokens
  ExpectedTargets targets;
  TokenSeq teacher;
  if (!instance.partner) {
    targets = one_hot_targets(tgt1, vocab_size_);
    teacher = tgt1;
  } else {
    const TokenSeq tgt2 = clip(instance.partner->target, config_.max_tgt_len);
    if (tgt2.empty()) throw DataError("mix partner with an empty target");
    targets = expected_targets(tgt1, tgt2, lambda, vocab_size_);
    Rng rng(instance.partner->teacher_seed);
    teacher = sample_teacher_tokens(tgt1, tgt2, lambda, rng);
  }
  TokenSeq dec_in{special::kBos};
  dec_in.insert(dec_in.end(), teacher.begin(), teacher.end() - 1);

  // ---- decoder
  const auto steps = static_cast<Eigen::Index>(dec_in.size());
  Mat y = embed(params_, tgt_embed_, dec_in, steps, positions_);
  std::vector<DecoderBlockCache> dec_cache(decoder_.size());
  for (std::size_t b = 0; b < decoder_.size(); ++b) {
    y = decoder_block_fwd(params_, decoder_[b], heads, y, memory, key_len, backward ? &dec_cache[b] : nullptr);
  }
  NormCache final_cache;
  const Mat z = norm_fwd(params_, final_norm_, y, backward ? &final_cache : nullptr);
  const Mat logits = linear_fwd(params_, output_, z);

  Mat dlogits;
  const double loss_value = kl_loss(logits, targets, backward ? &dlogits : nullptr);
  if (!std::isfinite(loss_value)) {
    throw Error("non-finite loss (" + std::to_string(loss_value) + ") for a " +
                std::to_string(src1.size()) + "-token source and " + std::to_string(tgt1.size()) +
                "-token target");
  }
  if (!backward) return loss_value;

  // ---- backward
  dlogits *= grad_scale;
  Mat dy = norm_bwd(params_, final_norm_, final_cache, linear_bwd(params_, output_, z, dlogits));
  Mat dmemory = Mat::Zero(memory.rows(), memory.cols());
  for (std::size_t b = decoder_.size(); b-- > 0;) {
    dy = decoder_block_bwd(params_, decoder_[b], heads, dec_cache[b], dy, dmemory);
  }
  embed_bwd(params_, tgt_embed_, dec_in, dy);

  Mat dh = norm_bwd(params_, memory_norm_, memory_cache, dmemory);
  for (int b = encoder_depth; b-- > split;) {
    dh = encoder_block_bwd(params_, encoder_[static_cast<std::size_t>(b)], heads,
                           upper[static_cast<std::size_t>(b - split)], dh);
  }
  if (!instance.partner) {
    embed_bwd(params_, src_embed_, src1, dh);
  } else {
    Mat dh1 = lambda * dh;
    Mat dh2 = (1.0 - lambda) * dh;
    for (int b = split; b-- > 0;) {
      const auto& blk = encoder_[static_cast<std::size_t>(b)];
      dh1 = encoder_block_bwd(params_, blk, heads, lower1[static_cast<std::size_t>(b)], dh1);
      dh2 = encoder_block_bwd(params_, blk, heads, lower2[static_cast<std::size_t>(b)], dh2);
    }
    embed_bwd(params_, src_embed_, src1, dh1);
    embed_bwd(params_, src_embed_, src2, dh2);
  }
  return loss_value;
}

Checkpoint Seq2SeqModel::to_checkpoint(const Vocab& vocab, std::size_t step, double val_rouge) const {
  if (vocab.size() != vocab_size_) throw DataError("vocabulary size does not match the model");
  Checkpoint c;
  c.config = config_;
  c.vocab_tokens = vocab.regular_tokens();
  c.step = step;
  c.val_rouge = val_rouge;
  for (const auto& t : params_.tensors()) c.params.emplace_back(t.name, t.value);
  return c;
}

void Seq2SeqModel::load_parameters(const std::vector<std::pair<std::string, Mat>>& params) {
  auto& tensors = params_.tensors();
  if (params.size() != tensors.size()) throw DataError("checkpoint parameter count mismatch");
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const auto& [name, value] = params[i];
    if (name != tensors[i].name || value.rows() != tensors[i].value.rows() ||
        value.cols() != tensors[i].value.cols()) {
      throw DataError("checkpoint parameter '" + name + "' does not match '" + tensors[i].name + "'");
    }
    tensors[i].value = value;
  }
}

// ---------------------------------------------------------------------------
// AdamOptimizer

AdamOptimizer::AdamOptimizer(ParameterSet& params, Options options)
    : params_(params), options_(options) {
  for (const auto& t : params_.tensors()) {
    m_.push_back(Mat::Zero(t.value.rows(), t.value.cols()));
    v_.push_back(Mat::Zero(t.value.rows(), t.value.cols()));
  }
}

double AdamOptimizer::current_rate() const {
  if (options_.warmup_steps == 0) return options_.learning_rate;
  const double t = static_cast<double>(std::max<std::size_t>(t_, 1));
  return options_.learning_rate * std::min(1.0, t / static_cast<double>(options_.warmup_steps));
}

void AdamOptimizer::step() {
  ++t_;
  if (options_.clip_norm > 0.0) {
    const double norm = params_.grad_norm();
    if (norm > options_.clip_norm) params_.scale_grad(options_.clip_norm / norm);
  }
  const double lr = current_rate();
  const double c1 = 1.0 - std::pow(options_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(options_.beta2, static_cast<double>(t_));
  auto& tensors = params_.tensors();
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    m_[i] = options_.beta1 * m_[i] + (1.0 - options_.beta1) * tensors[i].grad;
    v_[i] = options_.beta2 * v_[i] + (1.0 - options_.beta2) * tensors[i].grad.cwiseAbs2();
    if (lr == 0.0) continue;
    tensors[i].value.array() -=
        lr * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + options_.epsilon);
  }
}

}  // namespace sumaug
