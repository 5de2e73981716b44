// SPDX-License-Identifier: Apache-2.0
#include "sumaug/curriculum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "json.hpp"
#include "sumaug/error.hpp"
#include "sumaug/rouge.hpp"
#include "sumaug/tokenizer.hpp"

namespace sumaug {

DifficultyMetric parse_metric(std::string_view text) {
  if (text == "specificity" || text == "S") return DifficultyMetric::kSpecificity;
  if (text == "rouge" || text == "R") return DifficultyMetric::kRouge;
  throw ConfigError("unknown difficulty metric '" + std::string(text) + "'");
}

std::string_view to_string(DifficultyMetric metric) {
  return metric == DifficultyMetric::kSpecificity ? "specificity" : "rouge";
}

DifficultyScore difficulty_specificity(const Sample& sample, SpecificityScorer& scorer) {
  return {sample.id(), DifficultyMetric::kSpecificity, score_document(sample.document, scorer)};
}

DifficultyScore difficulty_rouge(const Sample& sample) {
  std::vector<std::string> doc;
  for (std::size_t i = 0; i < sample.document.units.size(); ++i) {
    if (i > 0) doc.emplace_back(kUnitSeparator);
    auto tokens = normalize_tokens(sample.document.units[i].text);
    std::move(tokens.begin(), tokens.end(), std::back_inserter(doc));
  }
  const auto summary = normalize_tokens(sample.summary);
  return {sample.id(), DifficultyMetric::kRouge, 1.0 - avg_rouge(rouge_suite_tokens(doc, summary))};
}

std::vector<DifficultyScore> score_difficulty(const std::vector<Sample>& samples,
                                              DifficultyMetric metric, SpecificityScorer* scorer) {
  std::vector<DifficultyScore> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if (metric == DifficultyMetric::kRouge) {
      out.push_back(difficulty_rouge(s));
    } else {
      if (scorer == nullptr) throw ConfigError("specificity difficulty needs a scorer");
      out.push_back(difficulty_specificity(s, *scorer));
    }
  }
  return out;
}

std::vector<std::string> BucketAssignment::members(int b) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < sample_ids.size(); ++i) {
    if (bucket_of[i] == b) out.push_back(sample_ids[i]);
  }
  return out;
}

int BucketAssignment::bucket(std::string_view sample_id) const {
  for (std::size_t i = 0; i < sample_ids.size(); ++i) {
    if (sample_ids[i] == sample_id) return bucket_of[i];
  }
  throw DataError("sample '" + std::string(sample_id) + "' has no bucket");
}

BucketAssignment bucketize(const std::vector<DifficultyScore>& scores, std::size_t buckets) {
  if (buckets < 1) throw ConfigError("bucket count must be >= 1");
  if (scores.empty()) throw DataError("cannot bucketize an empty score list");
  for (const auto& s : scores) {
    if (s.metric != scores.front().metric) throw DataError("bucketize needs scores from a single metric");
    if (!std::isfinite(s.raw)) throw DataError("non-finite difficulty for '" + s.sample_id + "'");
  }
  const auto [lo_it, hi_it] = std::minmax_element(
      scores.begin(), scores.end(), [](const auto& a, const auto& b) { return a.raw < b.raw; });
  const double lo = lo_it->raw;
  const double hi = hi_it->raw;
  const double n = static_cast<double>(buckets);

  BucketAssignment out;
  out.buckets = buckets;
  for (const auto& s : scores) {
    const double norm = hi > lo ? (s.raw - lo) / (hi - lo) : 0.0;
    // slack keeps exact bucket boundaries (e.g. norm 0.5 with N=10) from
    // falling one bucket short under rounding
    const double b = 1.0 + std::floor(norm * n + 1e-9);
    out.sample_ids.push_back(s.sample_id);
    out.bucket_of.push_back(static_cast<int>(std::clamp(b, 1.0, n)));
  }
  return out;
}

std::size_t Schedule::total_steps() const {
  std::size_t total = 0;
  for (const auto& s : stages) total += s.steps;
  return total;
}

std::vector<std::string> Schedule::eligible(std::size_t stage_index) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < assignment.sample_ids.size(); ++i) {
    if (static_cast<std::size_t>(assignment.bucket_of[i]) <= stage_index) {
      out.push_back(assignment.sample_ids[i]);
    }
  }
  return out;
}

std::size_t Schedule::stage_at(std::size_t step) const {
  std::size_t end = 0;
  for (const auto& s : stages) {
    end += s.steps;
    if (step < end) return s.index;
  }
  return stages.empty() ? 1 : stages.back().index;
}

Schedule build_schedule(const BucketAssignment& assignment, std::size_t total_steps,
                        std::uint64_t seed) {
  const std::size_t n = assignment.buckets;
  if (n < 1) throw ConfigError("schedule needs at least one bucket");
  if (total_steps < n) {
    throw ConfigError("total steps (" + std::to_string(total_steps) + ") must be >= bucket count (" +
                      std::to_string(n) + ")");
  }
  Schedule schedule;
  schedule.assignment = assignment;
  schedule.seed = seed;
  const std::size_t per_stage = total_steps / n;
  for (std::size_t k = 1; k <= n; ++k) {
    schedule.stages.push_back({k, per_stage + (k == n ? total_steps % n : 0)});
  }
  return schedule;
}

std::string schedule_to_json(const Schedule& schedule, DifficultyMetric metric) {
  using nlohmann::ordered_json;
  ordered_json root;
  root["metric"] = std::string(to_string(metric));
  root["buckets"] = schedule.assignment.buckets;
  root["seed"] = schedule.seed;
  root["total_steps"] = schedule.total_steps();
  ordered_json stages = ordered_json::array();
  for (const auto& s : schedule.stages) {
    ordered_json st;
    st["stage"] = s.index;
    std::vector<std::size_t> allowed(s.index);
    std::iota(allowed.begin(), allowed.end(), std::size_t{1});
    st["buckets"] = allowed;
    st["steps"] = s.steps;
    st["eligible"] = schedule.eligible(s.index).size();
    stages.push_back(std::move(st));
  }
  root["stages"] = std::move(stages);
  ordered_json members = ordered_json::object();
  for (std::size_t b = 1; b <= schedule.assignment.buckets; ++b) {
    members[std::to_string(b)] = schedule.assignment.members(static_cast<int>(b));
  }
  root["members"] = std::move(members);
  return root.dump(2) + "\n";
}

CurriculumSampler::CurriculumSampler(const Schedule& schedule)
    : schedule_(schedule), rng_(SeedBuilder(schedule.seed).add("curriculum").value()) {
  for (const auto& s : schedule.stages) eligible_.push_back(schedule.eligible(s.index));
}

CurriculumSampler::Batch CurriculumSampler::next(std::size_t batch_size) {
  Batch batch;
  batch.stage = schedule_.stage_at(step_);
  ++step_;
  const auto& pool = eligible_.at(batch.stage - 1);
  if (pool.empty()) return batch;
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t taken = 0;
  while (taken < batch_size) {
    // partial Fisher-Yates over the pool; repeats start only after a full pass
    for (std::size_t i = 0; i < order.size() && taken < batch_size; ++i, ++taken) {
      const auto j = i + rng_.below(order.size() - i);
      std::swap(order[i], order[j]);
      batch.ids.push_back(pool[order[i]]);
    }
  }
  return batch;
}

}  // namespace sumaug
