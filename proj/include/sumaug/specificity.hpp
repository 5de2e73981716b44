// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sumaug/corpus.hpp"
#include "sumaug/provider.hpp"

namespace sumaug {

inline constexpr double kSpecificityMin = 1.0;
inline constexpr double kSpecificityMax = 4.0;

/// Maps a text to a specificity value on the 1 (vague) .. 4 (specific) scale.
class SpecificityScorer {
 public:
  virtual ~SpecificityScorer() = default;
  virtual double score(std::string_view text) = 0;
};

/// Lexical scorer: S(r) = 1 + 3 * (0.5 * len + 0.5 * rarity), where
/// len = min(|tokens|, 20) / 20 and rarity is the mean of idf(t) / max_idf.
///
/// idf(t) = ln((1 + U) / (1 + df(t))) over U train units, and
/// max_idf = ln(1 + U) is the value for a token never seen (df = 0), so
/// rarity stays in [0, 1] and unseen tokens count as maximally rare.
class HeuristicScorer : public SpecificityScorer {
 public:
  HeuristicScorer(std::unordered_map<std::string, double> idf, double max_idf);

  double score(std::string_view text) override;

  [[nodiscard]] double idf(std::string_view token) const;
  [[nodiscard]] double max_idf() const { return max_idf_; }

 private:
  std::unordered_map<std::string, double> idf_;
  double max_idf_;
};

/// Builds the heuristic scorer from train-split units (each unit is one
/// document for document-frequency purposes). Throws DataError on an empty
/// train split.
HeuristicScorer fit_heuristic_scorer(const Corpus& corpus);
HeuristicScorer fit_heuristic_scorer(const std::vector<Sample>& train);

/// Scores through a provider process ("score" op). Responses are clamped to
/// [1, 4]; non-finite scores raise ProviderError.
class ExternalScorer : public SpecificityScorer {
 public:
  explicit ExternalScorer(ProviderProcess& process) : process_(process) {}
  double score(std::string_view text) override;

 private:
  ProviderProcess& process_;
  std::size_t next_id_ = 0;
};

/// Document score: arithmetic mean of the unit scores.
double score_document(const Document& doc, SpecificityScorer& scorer);

}  // namespace sumaug
