// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sumaug/corpus.hpp"
#include "sumaug/random.hpp"
#include "sumaug/specificity.hpp"

namespace sumaug {

enum class DifficultyMetric { kSpecificity, kRouge };

DifficultyMetric parse_metric(std::string_view text);
std::string_view to_string(DifficultyMetric metric);

/// Higher raw value means harder.
struct DifficultyScore {
  std::string sample_id;
  DifficultyMetric metric = DifficultyMetric::kSpecificity;
  double raw = 0.0;
};

/// Token that separates units when a document is flattened for ROUGE.
inline constexpr std::string_view kUnitSeparator = "<sep>";

/// raw = mean unit specificity of the document.
DifficultyScore difficulty_specificity(const Sample& sample, SpecificityScorer& scorer);

/// raw = 1 - avg_rouge(document, summary); the document is its units'
/// tokens joined by kUnitSeparator in stored order.
DifficultyScore difficulty_rouge(const Sample& sample);

std::vector<DifficultyScore> score_difficulty(const std::vector<Sample>& samples,
                                              DifficultyMetric metric,
                                              SpecificityScorer* scorer = nullptr);

struct BucketAssignment {
  std::size_t buckets = 1;
  /// Parallel to the scored samples, in input order.
  std::vector<std::string> sample_ids;
  std::vector<int> bucket_of;

  [[nodiscard]] std::vector<std::string> members(int bucket) const;
  [[nodiscard]] int bucket(std::string_view sample_id) const;
};

/// Min-max normalizes raws and maps them to 1 + floor(norm * N), clamped to
/// [1, N]. Throws ConfigError for N < 1, DataError for empty or mixed input.
BucketAssignment bucketize(const std::vector<DifficultyScore>& scores, std::size_t buckets);

struct Stage {
  std::size_t index = 1;  // 1-based; eligible buckets are 1..index
  std::size_t steps = 0;
};

struct Schedule {
  BucketAssignment assignment;
  std::vector<Stage> stages;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t total_steps() const;
  /// Sample ids allowed at a stage (buckets 1..stage.index), in assignment order.
  [[nodiscard]] std::vector<std::string> eligible(std::size_t stage_index) const;
  /// Stage active at a 0-based step counter.
  [[nodiscard]] std::size_t stage_at(std::size_t step) const;
};

/// N stages of floor(total/N) steps each; stage N absorbs the remainder.
/// Throws ConfigError when total_steps < N.
Schedule build_schedule(const BucketAssignment& assignment, std::size_t total_steps,
                        std::uint64_t seed);

/// Deterministic JSON rendering: stages with bucket sets and budgets, and
/// sample-id membership per bucket.
std::string schedule_to_json(const Schedule& schedule, DifficultyMetric metric);

/// Draws minibatches for a schedule. Each batch is a uniform draw without
/// replacement from the current stage's eligible set (with replacement only
/// once the batch outgrows the set).
class CurriculumSampler {
 public:
  explicit CurriculumSampler(const Schedule& schedule);

  struct Batch {
    std::size_t stage = 1;
    std::vector<std::string> ids;
  };

  Batch next(std::size_t batch_size);
  [[nodiscard]] std::size_t step() const { return step_; }

 private:
  const Schedule& schedule_;
  std::vector<std::vector<std::string>> eligible_;
  Rng rng_;
  std::size_t step_ = 0;
};

}  // namespace sumaug
