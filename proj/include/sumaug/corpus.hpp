// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sumaug {

/// One reflection or review inside a document.
struct SourceUnit {
  std::string text;

  friend bool operator==(const SourceUnit&, const SourceUnit&) = default;
};

/// An input document: an ordered list of independent source units. `group`
/// is the course (reflection corpora) or product/business (review corpora).
struct Document {
  std::string id;
  std::string group;
  std::vector<SourceUnit> units;

  friend bool operator==(const Document&, const Document&) = default;
};

enum class Origin { kOriginal, kShuffle, kShuffleMask, kParaphrase };

std::string_view to_string(Origin origin);
Origin parse_origin(std::string_view text);

struct Sample {
  Document document;
  std::string summary;
  Origin origin = Origin::kOriginal;

  [[nodiscard]] const std::string& id() const { return document.id; }

  friend bool operator==(const Sample&, const Sample&) = default;
};

enum class Split { kTrain, kVal, kTest };

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view text);

struct Corpus {
  std::vector<Sample> train;
  std::vector<Sample> val;
  std::vector<Sample> test;

  [[nodiscard]] const std::vector<Sample>& split(Split s) const;
  [[nodiscard]] std::vector<Sample>& split(Split s);
  [[nodiscard]] std::size_t size() const { return train.size() + val.size() + test.size(); }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

/// A sample together with the split tag it carried on disk, if any.
struct TaggedSample {
  Sample sample;
  std::optional<Split> split;
};

struct CorpusStats {
  std::size_t documents = 0;
  std::size_t groups = 0;
  double mean_units = 0.0;
  std::array<std::size_t, 3> split_sizes{};
};

/// Trims ASCII whitespace from both ends.
std::string_view trim(std::string_view text);

/// Throws DataError when a sample breaks a data-model invariant.
void validate_sample(const Sample& sample);

/// Checks id uniqueness across all three splits plus per-sample invariants.
void validate_corpus(const Corpus& corpus);

/// Parses JSONL from a stream. `source_name` only decorates error messages.
std::vector<TaggedSample> read_samples(std::istream& in, std::string_view source_name);
std::vector<TaggedSample> read_samples_file(const std::filesystem::path& path);

/// Loads a JSONL file (lines without "split" land in train) or a directory
/// holding train.jsonl / val.jsonl / test.jsonl. Throws DataError.
Corpus load_corpus(const std::filesystem::path& path);

/// One JSON object per line. `split` is written when provided.
std::string sample_to_json_line(const Sample& sample, std::optional<Split> split = std::nullopt);
void write_samples(std::ostream& out, const std::vector<Sample>& samples,
                   std::optional<Split> split = std::nullopt);
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);
void save_samples(const std::filesystem::path& path, const std::vector<Sample>& samples,
                  std::optional<Split> split = std::nullopt);

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

/// Per-group stratified split. Groups are visited in lexicographic order;
/// inside a group the samples are shuffled by a stream derived from
/// (seed, group) and cut by largest-remainder rounding. A group smaller than
/// the number of non-zero parts goes entirely to the largest-ratio split and
/// a warning is appended to `warnings` when provided.
Corpus split_corpus(const std::vector<Sample>& samples, const SplitRatios& ratios,
                    std::uint64_t seed, std::vector<std::string>* warnings = nullptr);

/// Largest-remainder apportionment of `n` items over three ratios.
std::array<std::size_t, 3> apportion(std::size_t n, const SplitRatios& ratios);

CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace sumaug
