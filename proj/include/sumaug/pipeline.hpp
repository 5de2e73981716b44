// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sumaug/config.hpp"
#include "sumaug/corpus.hpp"
#include "sumaug/curriculum.hpp"
#include "sumaug/mixgen.hpp"
#include "sumaug/model.hpp"
#include "sumaug/report.hpp"
#include "sumaug/synthesis.hpp"

namespace sumaug {

enum class Regime {
  kOriginal,
  kSynthShuffle,
  kSynthShuffleMask,
  kPretrainParaphraseThenFinetune,
  kCurriculum,
  kMixgen,
  kSynthThenCurriculumFinetune,
};

inline constexpr Regime kAllRegimes[] = {
    Regime::kOriginal,   Regime::kSynthShuffle, Regime::kSynthShuffleMask,
    Regime::kPretrainParaphraseThenFinetune,    Regime::kCurriculum,
    Regime::kMixgen,     Regime::kSynthThenCurriculumFinetune,
};

Regime parse_regime(std::string_view text);
std::string_view to_string(Regime regime);

struct RegimeConfig {
  Regime regime = Regime::kOriginal;
  std::uint64_t seed = 1;
  ModelConfig model;
  std::size_t vocab_min_freq = 1;

  std::size_t steps = 2000;  // single-phase regimes
  std::size_t pretrain_steps = 2000;
  std::size_t finetune_steps = 2000;
  std::size_t batch_size = 8;
  std::size_t eval_interval = 200;
  double learning_rate = 3e-4;
  double warmup_frac = 0.05;
  double clip_norm = 1.0;

  SynthConfig synth;
  bool external_provider = false;  // paraphrases from SUMAUG_PROVIDER
  bool two_phase = false;          // shuffle baselines: pretrain on synthetic only

  DifficultyMetric metric = DifficultyMetric::kSpecificity;
  std::size_t buckets = 10;
  bool external_scorer = false;
  bool curriculum_pretrain = false;
  bool curriculum_finetune = false;

  bool mix_enabled = false;
  MixConfig mix;

  /// Reads "regime" (default original), applies that regime's defaults
  /// (curriculum on for curriculum regimes, mixing on for mixgen), then the
  /// remaining keys. Unknown keys and invalid values throw ConfigError.
  static RegimeConfig from_map(const ConfigMap& map);

  /// Throws ConfigError.
  void validate() const;
};

/// Every key accepted by RegimeConfig::from_map.
const std::set<std::string>& config_keys();

/// One training phase of a regime.
struct PhasePlan {
  std::string name;  // "train" for single-phase regimes, else "pretrain" / "finetune"
  std::vector<Sample> data;
  std::size_t steps = 0;
  bool curriculum = false;
  bool mix = false;
};

/// Builds the phase list. Synthetic samples are derived from corpus.train
/// only. `provider` overrides the configured paraphrase source.
std::vector<PhasePlan> plan_phases(const Corpus& corpus, const RegimeConfig& config,
                                   ParaphraseProvider* provider = nullptr);

/// One consumed training item.
struct ProvenanceItem {
  std::string id;
  Origin origin = Origin::kOriginal;
  int bucket = 0;           // 0 outside curriculum phases
  std::string partner;      // mixing partner id, empty when unmixed
  double lambda = 1.0;
};

/// One optimizer step.
struct ProvenanceRecord {
  std::string phase;
  std::size_t step = 0;     // 1-based within the phase
  std::size_t stage = 0;    // curriculum stage, 0 outside curriculum phases
  double loss = 0.0;
  std::vector<ProvenanceItem> items;
};

std::string provenance_to_json_line(const ProvenanceRecord& record);

/// Validation score of one evaluated step.
struct HistoryEntry {
  std::size_t step = 0;
  SplitReport validation;
  Checkpoint checkpoint;
};

/// Entry with the highest validation mean(R1, R2, RL); ties go to the
/// earliest step. The result refers into `history`. Throws
/// std::invalid_argument on an empty history.
const HistoryEntry& select_checkpoint(const std::vector<HistoryEntry>& history);

struct PhaseSummary {
  std::string name;
  std::size_t samples = 0;
  std::size_t synthetic = 0;
  std::size_t steps = 0;
  std::size_t selected_step = 0;
  std::optional<Schedule> schedule;
  std::vector<std::pair<std::size_t, double>> validation;  // (step, mean)
};

struct RunResult {
  Checkpoint checkpoint;
  EvalReport report;
  std::vector<PhaseSummary> phases;
  std::vector<ProvenanceRecord> provenance;
};

struct RunOptions {
  ParaphraseProvider* provider = nullptr;  // overrides the configured source
  SpecificityScorer* scorer = nullptr;     // overrides the configured scorer
  std::ostream* log = nullptr;             // progress lines when set
};

/// Runs every phase of the regime, keeping the best validation checkpoint
/// of each phase, and evaluates the final model on val and test. Errors
/// from the modules propagate with the phase name prepended.
RunResult run_regime(const Corpus& corpus, const RegimeConfig& config, const RunOptions& options = {});

/// Scores `summarize(sample)` against each reference.
SplitReport evaluate_with(std::string split, const std::vector<Sample>& samples,
                          const std::function<std::string(const Sample&)>& summarize);

/// Greedy-decodes every document with the checkpoint's model. Throws
/// DataError on an empty split.
SplitReport evaluate(const Checkpoint& checkpoint, std::string split, const std::vector<Sample>& samples);
SplitReport evaluate(const Seq2SeqModel& model, const Vocab& vocab, std::string split,
                     const std::vector<Sample>& samples);

/// Table labels for a configuration, e.g. ("Synth.(n=10)", "Cur.(S)").
std::pair<std::string, std::string> regime_labels(const RegimeConfig& config);

/// Phase-isolation audit. Lists items whose id (or partner id, or the id a
/// synthetic sample was derived from) is not a train id, synthetic items in
/// a finetuning phase and original items in a pretraining phase. Empty
/// means clean.
std::vector<std::string> provenance_violations(const std::vector<ProvenanceRecord>& records,
                                               const Corpus& corpus);

}  // namespace sumaug
