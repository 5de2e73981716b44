// SPDX-License-Identifier: Apache-2.0
#include "sumaug/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "sumaug/error.hpp"
#include "sumaug/random.hpp"
#include "sumaug/rouge.hpp"
#include "sumaug/specificity.hpp"
#include "sumaug/tokenizer.hpp"

namespace sumaug {

namespace {

struct RegimeName {
  Regime regime;
  std::string_view name;
};

constexpr RegimeName kRegimeNames[] = {
    {Regime::kOriginal, "original"},
    {Regime::kSynthShuffle, "synth_shuffle"},
    {Regime::kSynthShuffleMask, "synth_shuffle_mask"},
    {Regime::kPretrainParaphraseThenFinetune, "pretrain_paraphrase_then_finetune"},
    {Regime::kCurriculum, "curriculum"},
    {Regime::kMixgen, "mixgen"},
    {Regime::kSynthThenCurriculumFinetune, "synth_then_curriculum_finetune"},
};

bool is_shuffle_regime(Regime r) { return r == Regime::kSynthShuffle || r == Regime::kSynthShuffleMask; }

bool is_paraphrase_regime(Regime r) {
  return r == Regime::kPretrainParaphraseThenFinetune || r == Regime::kSynthThenCurriculumFinetune;
}

bool has_pretraining(const RegimeConfig& c) {
  return is_paraphrase_regime(c.regime) || (is_shuffle_regime(c.regime) && c.two_phase);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int as_int(const ConfigMap& map, const std::string& key, int fallback) {
  const auto v = map.get_int(key, fallback);
  if (v < 0 || v > 1'000'000'000) throw ConfigError("config key '" + key + "' is out of range");
  return static_cast<int>(v);
}

std::size_t as_size(const ConfigMap& map, const std::string& key, std::size_t fallback) {
  return static_cast<std::size_t>(as_int(map, key, static_cast<int>(fallback)));
}

bool choose_source(const ConfigMap& map, const std::string& key) {
  const auto v = map.get_string(key, "builtin");
  if (v == "builtin") return false;
  if (v == "external") return true;
  throw ConfigError("config key '" + key + "' must be builtin or external, got '" + v + "'");
}

}  // namespace

Regime parse_regime(std::string_view text) {
  for (const auto& r : kRegimeNames) {
    if (r.name == text) return r.regime;
  }
  throw ConfigError("unknown regime '" + std::string(text) + "'");
}

std::string_view to_string(Regime regime) {
  for (const auto& r : kRegimeNames) {
    if (r.regime == regime) return r.name;
  }
  return "unknown";
}

const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys{
      "regime",
      "seed",
      "data.path",
      "data.resplit",
      "model.width",
      "model.encoder_layers",
      "model.decoder_layers",
      "model.heads",
      "model.ff_width",
      "model.max_src_len",
      "model.max_tgt_len",
      "model.seed",
      "vocab.min_freq",
      "train.steps",
      "train.pretrain_steps",
      "train.finetune_steps",
      "train.batch_size",
      "train.eval_interval",
      "train.learning_rate",
      "train.warmup_frac",
      "train.clip_norm",
      "synth.n",
      "synth.mask_sample_prob",
      "synth.mask_unit_frac",
      "synth.provider",
      "synth.two_phase",
      "synth.seed",
      "curriculum.metric",
      "curriculum.buckets",
      "curriculum.scorer",
      "curriculum.pretrain",
      "curriculum.finetune",
      "mix.enabled",
      "mix.alpha",
      "mix.partners",
      "mix.layer",
  };
  return keys;
}

RegimeConfig RegimeConfig::from_map(const ConfigMap& map) {
  map.reject_unknown(config_keys());
  RegimeConfig c;
  c.regime = parse_regime(map.get_string("regime", "original"));
  c.seed = map.get_uint("seed", 1);

  c.model.width = as_int(map, "model.width", c.model.width);
  c.model.encoder_layers = as_int(map, "model.encoder_layers", c.model.encoder_layers);
  c.model.decoder_layers = as_int(map, "model.decoder_layers", c.model.decoder_layers);
  c.model.attention_heads = as_int(map, "model.heads", c.model.attention_heads);
  c.model.feedforward_width = as_int(map, "model.ff_width", c.model.feedforward_width);
  c.model.max_src_len = as_int(map, "model.max_src_len", c.model.max_src_len);
  c.model.max_tgt_len = as_int(map, "model.max_tgt_len", c.model.max_tgt_len);
  c.model.seed = map.get_uint("model.seed", c.seed);
  c.vocab_min_freq = as_size(map, "vocab.min_freq", c.vocab_min_freq);

  c.steps = as_size(map, "train.steps", c.steps);
  c.pretrain_steps = as_size(map, "train.pretrain_steps", c.pretrain_steps);
  c.finetune_steps = as_size(map, "train.finetune_steps", c.finetune_steps);
  c.batch_size = as_size(map, "train.batch_size", c.batch_size);
  c.eval_interval = as_size(map, "train.eval_interval", c.eval_interval);
  c.learning_rate = map.get_double("train.learning_rate", c.learning_rate);
  c.warmup_frac = map.get_double("train.warmup_frac", c.warmup_frac);
  c.clip_norm = map.get_double("train.clip_norm", c.clip_norm);

  c.synth.count_per_sample = as_size(map, "synth.n", c.synth.count_per_sample);
  c.synth.mask_sample_prob = map.get_double("synth.mask_sample_prob", c.synth.mask_sample_prob);
  c.synth.mask_unit_frac = map.get_double("synth.mask_unit_frac", c.synth.mask_unit_frac);
  c.synth.seed = map.get_uint("synth.seed", c.seed);
  c.external_provider = choose_source(map, "synth.provider");
  c.two_phase = map.get_bool("synth.two_phase", false);

  c.metric = parse_metric(map.get_string("curriculum.metric", "specificity"));
  c.buckets = as_size(map, "curriculum.buckets", c.buckets);
  c.external_scorer = choose_source(map, "curriculum.scorer");
  const bool curriculum_regime =
      c.regime == Regime::kCurriculum || c.regime == Regime::kSynthThenCurriculumFinetune;
  c.curriculum_pretrain = map.get_bool("curriculum.pretrain", false);
  c.curriculum_finetune = map.get_bool("curriculum.finetune", curriculum_regime);

  c.mix_enabled = map.get_bool("mix.enabled", c.regime == Regime::kMixgen);
  c.mix.alpha = map.get_double("mix.alpha", c.mix.alpha);
  c.mix.partners = as_size(map, "mix.partners", c.mix.partners);
  c.mix.mix_layer = static_cast<int>(map.get_int("mix.layer", -1));
  c.mix.seed = c.seed;

  c.validate();
  return c;
}

void RegimeConfig::validate() const {
  model.validate();
  synth.validate();
  if (steps < 1 || pretrain_steps < 1 || finetune_steps < 1) {
    throw ConfigError("train.steps, train.pretrain_steps and train.finetune_steps must be >= 1");
  }
  if (batch_size < 1) throw ConfigError("train.batch_size must be >= 1");
  if (eval_interval < 1) throw ConfigError("train.eval_interval must be >= 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("train.learning_rate must be a finite value >= 0");
  }
  if (!(warmup_frac >= 0.0 && warmup_frac <= 1.0)) throw ConfigError("train.warmup_frac must be in [0, 1]");
  if (!std::isfinite(clip_norm)) throw ConfigError("train.clip_norm must be finite");
  if (buckets < 1) throw ConfigError("curriculum.buckets must be >= 1");
  if (curriculum_pretrain && !has_pretraining(*this)) {
    throw ConfigError("curriculum.pretrain needs a regime with a pretraining phase");
  }
  if (mix_enabled) {
    if (mix.mix_layer < 0) throw ConfigError("mix.layer is required when mixing is enabled");
    mix.validate(model.encoder_layers);
    if (curriculum_finetune) {
      throw ConfigError("mixing and curriculum cannot both drive the same phase");
    }
  }
  const std::size_t last_steps = has_pretraining(*this) ? finetune_steps : steps;
  if (curriculum_finetune && last_steps < buckets) {
    throw ConfigError("curriculum phase needs at least curriculum.buckets steps");
  }
  if (curriculum_pretrain && pretrain_steps < buckets) {
    throw ConfigError("curriculum pretraining needs at least curriculum.buckets steps");
  }
}

std::vector<PhasePlan> plan_phases(const Corpus& corpus, const RegimeConfig& config,
                                   ParaphraseProvider* provider) {
  if (corpus.train.empty()) throw DataError("train split is empty");
  std::vector<Sample> synthetic;
  if (is_shuffle_regime(config.regime)) {
    const auto method =
        config.regime == Regime::kSynthShuffle ? SynthMethod::kShuffle : SynthMethod::kShuffleMask;
    synthetic = synthesize(corpus.train, method, config.synth);
  } else if (is_paraphrase_regime(config.regime)) {
    std::unique_ptr<ProviderProcess> process;
    std::unique_ptr<ExternalParaphraser> external;
    if (provider == nullptr && config.external_provider) {
      process = std::make_unique<ProviderProcess>(ProviderProcess::command_from_env());
      external = std::make_unique<ExternalParaphraser>(*process);
      provider = external.get();
    }
    synthetic = synthesize(corpus.train, SynthMethod::kParaphrase, config.synth, provider);
  }

  std::vector<PhasePlan> phases;
  if (has_pretraining(config)) {
    phases.push_back({"pretrain", std::move(synthetic), config.pretrain_steps, config.curriculum_pretrain, false});
    phases.push_back({"finetune", corpus.train, config.finetune_steps, config.curriculum_finetune,
                      config.mix_enabled});
  } else {
    PhasePlan single{"train", corpus.train, config.steps, config.curriculum_finetune, config.mix_enabled};
    std::move(synthetic.begin(), synthetic.end(), std::back_inserter(single.data));
    phases.push_back(std::move(single));
  }
  return phases;
}

std::string provenance_to_json_line(const ProvenanceRecord& record) {
  using nlohmann::ordered_json;
  ordered_json root;
  root["phase"] = record.phase;
  root["step"] = record.step;
  if (record.stage > 0) root["stage"] = record.stage;
  root["loss"] = record.loss;
  ordered_json items = ordered_json::array();
  for (const auto& item : record.items) {
    ordered_json it;
    it["id"] = item.id;
    it["origin"] = std::string(to_string(item.origin));
    if (item.bucket > 0) it["bucket"] = item.bucket;
    if (!item.partner.empty()) {
      it["partner"] = item.partner;
      it["lambda"] = item.lambda;
    }
    items.push_back(std::move(it));
  }
  root["items"] = std::move(items);
  return root.dump() + "\n";
}

const HistoryEntry& select_checkpoint(const std::vector<HistoryEntry>& history) {
  if (history.empty()) throw std::invalid_argument("select_checkpoint: empty history");
  const HistoryEntry* best = &history.front();
  for (const auto& entry : history) {
    const double m = entry.validation.mean();
    const double b = best->validation.mean();
    if (m > b || (m == b && entry.step < best->step)) best = &entry;
  }
  return *best;
}

SplitReport evaluate_with(std::string split, const std::vector<Sample>& samples,
                          const std::function<std::string(const Sample&)>& summarize) {
  if (samples.empty()) throw DataError("cannot evaluate an empty " + split + " split");
  std::vector<SampleScore> scores;
  scores.reserve(samples.size());
  for (const auto& s : samples) {
    const auto suite = rouge_suite(summarize(s), s.summary);
    scores.push_back({s.id(), suite.r1.f1, suite.r2.f1, suite.rl.f1});
  }
  return aggregate(std::move(split), std::move(scores));
}

SplitReport evaluate(const Seq2SeqModel& model, const Vocab& vocab, std::string split,
                     const std::vector<Sample>& samples) {
  const auto max_len = static_cast<std::size_t>(model.config().max_tgt_len);
  return evaluate_with(std::move(split), samples, [&](const Sample& s) {
    return model.greedy_decode(s.document, vocab, max_len);
  });
}

SplitReport evaluate(const Checkpoint& checkpoint, std::string split, const std::vector<Sample>& samples) {
  const Seq2SeqModel model(checkpoint);
  return evaluate(model, Vocab(checkpoint.vocab_tokens), std::move(split), samples);
}

std::pair<std::string, std::string> regime_labels(const RegimeConfig& config) {
  const std::string cur = config.metric == DifficultyMetric::kSpecificity ? "Cur.(S)" : "Cur.(R)";
  const std::string synth_label = config.regime == Regime::kSynthShuffle       ? "shuff."
                                  : config.regime == Regime::kSynthShuffleMask ? "shuff.+mask"
                                  : "Synth.(n=" + std::to_string(config.synth.count_per_sample) + ")";
  std::string pre = "None";
  std::vector<std::string> ft;
  if (has_pretraining(config)) {
    pre = synth_label;
    if (config.curriculum_pretrain) pre += "+" + cur;
  } else if (is_shuffle_regime(config.regime)) {
    ft.push_back(synth_label);
  }
  if (config.curriculum_finetune) ft.push_back(cur);
  if (config.mix_enabled) ft.push_back("Mix(n=" + std::to_string(config.mix.partners) + ")");
  std::string fine;
  for (const auto& part : ft) fine += (fine.empty() ? "" : "+") + part;
  return {pre, fine.empty() ? "Original" : fine};
}

std::vector<std::string> provenance_violations(const std::vector<ProvenanceRecord>& records,
                                               const Corpus& corpus) {
  std::unordered_set<std::string> train;
  for (const auto& s : corpus.train) train.insert(s.id());
  auto base_of = [](const std::string& id) { return id.substr(0, id.find('#')); };

  std::vector<std::string> out;
  for (const auto& r : records) {
    const auto where = r.phase + " step " + std::to_string(r.step) + ": ";
    for (const auto& item : r.items) {
      if (!train.count(base_of(item.id))) out.push_back(where + item.id + " is not derived from train");
      if (!item.partner.empty() && !train.count(base_of(item.partner))) {
        out.push_back(where + "partner " + item.partner + " is not derived from train");
      }
      if (r.phase == "finetune" && item.origin != Origin::kOriginal) {
        out.push_back(where + "synthetic " + item.id + " in finetuning");
      }
      if (r.phase == "pretrain" && item.origin == Origin::kOriginal) {
        out.push_back(where + "original " + item.id + " in pretraining");
      }
    }
  }
  return out;
}

namespace {

struct Encoded {
  TokenSeq source;
  TokenSeq target;
};

/// Index into the phase data plus an optional partner (-1 when unmixed).
struct Item {
  std::size_t index;
  long partner;
};

class PhaseRunner {
 public:
  PhaseRunner(const PhasePlan& plan, const RegimeConfig& config, const Corpus& corpus,
              const Vocab& vocab, Seq2SeqModel& model, const RunOptions& options)
      : plan_(plan),
        config_(config),
        corpus_(corpus),
        vocab_(vocab),
        model_(model),
        options_(options),
        rng_(SeedBuilder(config.seed).add("train").add(plan.name).value()) {}

  PhaseSummary run(std::vector<ProvenanceRecord>& provenance) {
    PhaseSummary summary;
    summary.name = plan_.name;
    summary.samples = plan_.data.size();
    summary.steps = plan_.steps;
    for (const auto& s : plan_.data) summary.synthetic += s.origin != Origin::kOriginal;
    if (plan_.data.empty()) throw DataError("phase has no training data");

    encoded_.reserve(plan_.data.size());
    for (std::size_t i = 0; i < plan_.data.size(); ++i) {
      const auto& s = plan_.data[i];
      TokenSeq target = encode(s.summary, vocab_);
      target.push_back(special::kEos);
      encoded_.push_back({encode_document(s.document, vocab_), std::move(target)});
      index_of_.emplace(s.id(), i);
    }
    if (plan_.curriculum) {
      schedule_ = make_schedule();
      sampler_.emplace(*schedule_);
      summary.schedule = schedule_;
    }
    if (plan_.mix) pick_partners();

    AdamOptimizer::Options opt;
    opt.learning_rate = config_.learning_rate;
    opt.warmup_steps = static_cast<std::size_t>(std::llround(config_.warmup_frac * static_cast<double>(plan_.steps)));
    opt.clip_norm = config_.clip_norm;
    AdamOptimizer optimizer(model_.parameters(), opt);

    std::vector<HistoryEntry> history;
    double loss_window = 0.0;
    for (std::size_t step = 1; step <= plan_.steps; ++step) {
      ProvenanceRecord record;
      record.phase = plan_.name;
      record.step = step;
      const auto items = next_batch(record.stage);
      model_.parameters().zero_grad();
      const double scale = 1.0 / static_cast<double>(items.size());
      for (const auto& item : items) {
        record.loss += scale * train_item(item, scale, record);
      }
      optimizer.step();
      loss_window += record.loss;
      provenance.push_back(std::move(record));

      if (step % config_.eval_interval == 0 || step == plan_.steps) {
        HistoryEntry entry;
        entry.step = step;
        if (!corpus_.val.empty()) entry.validation = evaluate(model_, vocab_, "val", corpus_.val);
        entry.checkpoint = model_.to_checkpoint(vocab_, step, entry.validation.mean());
        summary.validation.emplace_back(step, entry.validation.mean());
        if (options_.log != nullptr) {
          const auto since = step % config_.eval_interval == 0 ? config_.eval_interval : step % config_.eval_interval;
          *options_.log << plan_.name << " step " << step << "/" << plan_.steps << " loss "
                        << loss_window / static_cast<double>(since) << " val "
                        << entry.validation.mean() << "\n";
        }
        loss_window = 0.0;
        // without a validation split the last step is the only candidate
        if (corpus_.val.empty()) history.clear();
        history.push_back(std::move(entry));
      }
    }
    const auto& best = select_checkpoint(history);
    summary.selected_step = best.step;
    model_.load_parameters(best.checkpoint.params);
    return summary;
  }

 private:
  Schedule make_schedule() {
    std::vector<DifficultyScore> scores;
    if (config_.metric == DifficultyMetric::kRouge) {
      scores = score_difficulty(plan_.data, config_.metric);
    } else if (options_.scorer != nullptr) {
      scores = score_difficulty(plan_.data, config_.metric, options_.scorer);
    } else if (config_.external_scorer) {
      ProviderProcess process(ProviderProcess::command_from_env());
      ExternalScorer scorer(process);
      scores = score_difficulty(plan_.data, config_.metric, &scorer);
    } else {
      auto scorer = fit_heuristic_scorer(corpus_.train);
      scores = score_difficulty(plan_.data, config_.metric, &scorer);
    }
    return build_schedule(bucketize(scores, config_.buckets), plan_.steps,
                          SeedBuilder(config_.seed).add("curriculum").add(plan_.name).value());
  }

  void pick_partners() {
    const std::size_t n = plan_.data.size();
    const std::size_t k = std::min(config_.mix.partners, n - 1);
    partners_.resize(n);
    std::vector<std::size_t> others(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::iota(others.begin(), others.end(), std::size_t{0});
      std::swap(others[i], others.back());
      // partial Fisher-Yates over everyone except i (parked in the last slot)
      for (std::size_t j = 0; j < k; ++j) {
        const auto r = j + rng_.below(n - 1 - j);
        std::swap(others[j], others[r]);
        partners_[i].push_back(others[j]);
      }
    }
  }

  void refill_epoch() {
    epoch_.clear();
    for (std::size_t i = 0; i < plan_.data.size(); ++i) {
      epoch_.push_back({i, -1});
      if (plan_.mix) {
        for (auto p : partners_[i]) epoch_.push_back({i, static_cast<long>(p)});
      }
    }
    rng_.shuffle(epoch_.begin(), epoch_.end());
    cursor_ = 0;
  }

  std::vector<Item> next_batch(std::size_t& stage) {
    std::vector<Item> items;
    if (sampler_) {
      auto batch = sampler_->next(config_.batch_size);
      stage = batch.stage;
      for (const auto& id : batch.ids) items.push_back({index_of_.at(id), -1});
      return items;
    }
    while (items.size() < config_.batch_size) {
      if (cursor_ >= epoch_.size()) refill_epoch();
      items.push_back(epoch_[cursor_++]);
    }
    return items;
  }

  double train_item(const Item& item, double scale, ProvenanceRecord& record) {
    const auto& sample = plan_.data[item.index];
    TrainingInstance instance;
    instance.source = encoded_[item.index].source;
    instance.target = encoded_[item.index].target;
    ProvenanceItem prov{sample.id(), sample.origin, 0, {}, 1.0};
    if (schedule_) prov.bucket = schedule_->assignment.bucket_of[item.index];
    if (item.partner >= 0) {
      const auto p = static_cast<std::size_t>(item.partner);
      MixPartner partner;
      partner.source = encoded_[p].source;
      partner.target = encoded_[p].target;
      partner.lambda = draw_lambda(config_.mix, rng_);
      partner.teacher_seed = rng_();
      instance.partner = std::move(partner);
      instance.mix_layer = config_.mix.mix_layer;
      prov.partner = plan_.data[p].id();
      prov.lambda = instance.partner->lambda;
    }
    record.items.push_back(std::move(prov));
    return model_.accumulate_gradients(instance, scale);
  }

  const PhasePlan& plan_;
  const RegimeConfig& config_;
  const Corpus& corpus_;
  const Vocab& vocab_;
  Seq2SeqModel& model_;
  const RunOptions& options_;
  Rng rng_;

  std::vector<Encoded> encoded_;
  std::unordered_map<std::string, std::size_t> index_of_;
  std::optional<Schedule> schedule_;
  std::optional<CurriculumSampler> sampler_;
  std::vector<std::vector<std::size_t>> partners_;
  std::vector<Item> epoch_;
  std::size_t cursor_ = 0;
};

template <typename E>
[[noreturn]] void rethrow_in_phase(const std::string& phase, const E& e) {
  throw E("phase " + phase + ": " + e.what());
}

}  // namespace

RunResult run_regime(const Corpus& corpus, const RegimeConfig& config, const RunOptions& options) {
  config.validate();
  validate_corpus(corpus);
  const auto phases = plan_phases(corpus, config, options.provider);

  // vocabulary over the train split and everything derived from it
  std::vector<Sample> vocab_source;
  std::unordered_set<std::string> seen;
  for (const auto& phase : phases) {
    for (const auto& s : phase.data) {
      if (seen.insert(s.id()).second) vocab_source.push_back(s);
    }
  }
  const Vocab vocab = build_vocab(vocab_source, config.vocab_min_freq);
  Seq2SeqModel model(config.model, vocab.size());

  RunResult result;
  for (const auto& phase : phases) {
    if (options.log != nullptr) {
      *options.log << "phase " << phase.name << ": " << phase.data.size() << " samples, " << phase.steps
                   << " steps\n";
    }
    PhaseRunner runner(phase, config, corpus, vocab, model, options);
    try {
      result.phases.push_back(runner.run(result.provenance));
    } catch (const ConfigError& e) {
      rethrow_in_phase(phase.name, e);
    } catch (const DataError& e) {
      rethrow_in_phase(phase.name, e);
    } catch (const ProviderError& e) {
      rethrow_in_phase(phase.name, e);
    }
  }

  const auto& last = result.phases.back();
  double selected_val = 0.0;
  for (const auto& [step, mean] : last.validation) {
    if (step == last.selected_step) selected_val = mean;
  }
  result.checkpoint = model.to_checkpoint(vocab, last.selected_step, selected_val);

  auto& report = result.report;
  report.regime = std::string(to_string(config.regime));
  std::tie(report.pretraining, report.finetuning) = regime_labels(config);
  report.selected_step = last.selected_step;
  report.metadata["seed"] = std::to_string(config.seed);
  report.metadata["vocab_size"] = std::to_string(vocab.size());
  report.metadata["batch_size"] = std::to_string(config.batch_size);
  report.metadata["learning_rate"] = format_double(config.learning_rate);
  if (config.mix_enabled) {
    report.metadata["mix.alpha"] = format_double(config.mix.alpha);
    report.metadata["mix.layer"] = std::to_string(config.mix.mix_layer);
  }
  if (config.curriculum_finetune || config.curriculum_pretrain) {
    report.metadata["curriculum.metric"] = std::string(to_string(config.metric));
    report.metadata["curriculum.buckets"] = std::to_string(config.buckets);
  }
  for (const auto& p : result.phases) {
    report.metadata["phase." + p.name + ".samples"] = std::to_string(p.samples);
    report.metadata["phase." + p.name + ".synthetic"] = std::to_string(p.synthetic);
    report.metadata["phase." + p.name + ".steps"] = std::to_string(p.steps);
    report.metadata["phase." + p.name + ".selected_step"] = std::to_string(p.selected_step);
  }
  for (auto split : {Split::kVal, Split::kTest}) {
    const auto& samples = corpus.split(split);
    if (!samples.empty()) report.splits.push_back(evaluate(model, vocab, std::string(to_string(split)), samples));
  }
  return result;
}

}  // namespace sumaug
