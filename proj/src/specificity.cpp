// SPDX-License-Identifier: Apache-2.0
#include "sumaug/specificity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sumaug/error.hpp"
#include "sumaug/tokenizer.hpp"

namespace sumaug {

HeuristicScorer::HeuristicScorer(std::unordered_map<std::string, double> idf, double max_idf)
    : idf_(std::move(idf)), max_idf_(max_idf) {
  if (!(max_idf_ > 0.0)) throw DataError("heuristic scorer needs a positive max idf");
}

double HeuristicScorer::idf(std::string_view token) const {
  auto it = idf_.find(std::string(token));
  return it == idf_.end() ? max_idf_ : it->second;
}

double HeuristicScorer::score(std::string_view text) {
  const auto tokens = normalize_tokens(text);
  if (tokens.empty()) return kSpecificityMin;
  const double len = static_cast<double>(std::min<std::size_t>(tokens.size(), 20)) / 20.0;
  double rarity = 0.0;
  for (const auto& t : tokens) rarity += idf(t) / max_idf_;
  rarity /= static_cast<double>(tokens.size());
  const double s = 1.0 + 3.0 * (0.5 * len + 0.5 * rarity);
  return std::clamp(s, kSpecificityMin, kSpecificityMax);
}

HeuristicScorer fit_heuristic_scorer(const std::vector<Sample>& train) {
  if (train.empty()) throw DataError("cannot fit a specificity scorer on an empty train split");
  std::unordered_map<std::string, std::size_t> df;
  std::size_t units = 0;
  for (const auto& s : train) {
    for (const auto& u : s.document.units) {
      ++units;
      const auto tokens = normalize_tokens(u.text);
      for (const auto& t : std::set<std::string>(tokens.begin(), tokens.end())) ++df[t];
    }
  }
  const double total = static_cast<double>(units);
  std::unordered_map<std::string, double> idf;
  idf.reserve(df.size());
  for (const auto& [t, n] : df) idf.emplace(t, std::log((1.0 + total) / (1.0 + static_cast<double>(n))));
  return HeuristicScorer(std::move(idf), std::log(1.0 + total));
}

HeuristicScorer fit_heuristic_scorer(const Corpus& corpus) { return fit_heuristic_scorer(corpus.train); }

double ExternalScorer::score(std::string_view text) {
  const double s = process_.score("u" + std::to_string(next_id_++), text);
  if (!std::isfinite(s)) throw ProviderError("provider returned a non-finite specificity score");
  return std::clamp(s, kSpecificityMin, kSpecificityMax);
}

double score_document(const Document& doc, SpecificityScorer& scorer) {
  if (doc.units.empty()) throw DataError("document '" + doc.id + "' has no units to score");
  double sum = 0.0;
  for (const auto& u : doc.units) sum += scorer.score(u.text);
  return sum / static_cast<double>(doc.units.size());
}

}  // namespace sumaug
