// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sumaug {

/// F1 scores of one decoded sample against its reference.
struct SampleScore {
  std::string id;
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;

  friend bool operator==(const SampleScore&, const SampleScore&) = default;
};

struct SplitReport {
  std::string split;
  std::vector<SampleScore> samples;
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;

  /// mean(R1, R2, RL); the checkpoint-selection key.
  [[nodiscard]] double mean() const { return (r1 + r2 + rl) / 3.0; }

  friend bool operator==(const SplitReport&, const SplitReport&) = default;
};

/// Builds a split report whose means are the plain averages of `samples`.
SplitReport aggregate(std::string split, std::vector<SampleScore> samples);

struct EvalReport {
  std::string regime;
  std::string pretraining = "None";  // table label, e.g. "Synth.(n=10)"
  std::string finetuning = "Original";
  std::size_t selected_step = 0;
  std::map<std::string, std::string> metadata;
  std::vector<SplitReport> splits;

  /// nullptr when the split was not evaluated.
  [[nodiscard]] const SplitReport* find(std::string_view split) const;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

std::string report_to_json(const EvalReport& report);
/// Throws DataError on malformed input.
EvalReport report_from_json(std::string_view text);
EvalReport load_report(const std::filesystem::path& path);

/// Plain-text table with columns Pretraining | Finetuning | R1 | R2 | RL
/// (scores x100). Rows without pretraining come first under "No
/// Pretraining", the rest under "With synthetic data pretraining"; input
/// order is kept inside each section. Each row uses the test split, falling
/// back to val and then to the first evaluated split.
std::string render_table(const std::vector<EvalReport>& reports);

/// Writes report.json and report.txt into `dir` (created if missing).
/// Throws Error when the files cannot be written.
void emit_report(const EvalReport& report, const std::filesystem::path& dir);

}  // namespace sumaug
