// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sumaug {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  /// Builds a score from an overlap count and the two totals; any zero
  /// total yields the all-zero score.
  static RougeScore from_counts(std::size_t overlap, std::size_t candidate_total,
                                std::size_t reference_total) {
    RougeScore s;
    if (candidate_total == 0 || reference_total == 0) return s;
    s.precision = static_cast<double>(overlap) / static_cast<double>(candidate_total);
    s.recall = static_cast<double>(overlap) / static_cast<double>(reference_total);
    s.f1 = s.precision + s.recall > 0.0
               ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    return s;
  }
};

struct RougeSuite {
  RougeScore r1;
  RougeScore r2;
  RougeScore rl;
};

/// Clipped n-gram overlap. Works on any totally ordered token type, so the
/// same code scores vocabulary ids and raw token strings.
template <typename Token>
RougeScore rouge_n(std::span<const Token> candidate, std::span<const Token> reference,
                   std::size_t n) {
  if (n == 0 || candidate.size() < n || reference.size() < n) return {};
  using Gram = std::span<const Token>;
  auto less = [](Gram a, Gram b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  };
  std::map<Gram, std::size_t, decltype(less)> ref_counts(less);
  for (std::size_t i = 0; i + n <= reference.size(); ++i) ++ref_counts[reference.subspan(i, n)];

  std::size_t overlap = 0;
  for (std::size_t i = 0; i + n <= candidate.size(); ++i) {
    auto it = ref_counts.find(candidate.subspan(i, n));
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return RougeScore::from_counts(overlap, candidate.size() - n + 1, reference.size() - n + 1);
}

/// Length of the longest common subsequence, O(|a|*|b|) time, O(|b|) memory.
template <typename Token>
std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t up = row[j + 1];
      row[j + 1] = a[i] == b[j] ? diag + 1 : std::max(up, row[j]);
      diag = up;
    }
  }
  return row[b.size()];
}

template <typename Token>
RougeScore rouge_l(std::span<const Token> candidate, std::span<const Token> reference) {
  return RougeScore::from_counts(lcs_length(candidate, reference), candidate.size(),
                                 reference.size());
}

template <typename Token>
RougeSuite rouge_suite_tokens(std::span<const Token> candidate, std::span<const Token> reference) {
  return {rouge_n(candidate, reference, 1), rouge_n(candidate, reference, 2),
          rouge_l(candidate, reference)};
}

// Convenience overloads so callers can pass vectors directly.
template <typename Token>
RougeScore rouge_n(const std::vector<Token>& c, const std::vector<Token>& r, std::size_t n) {
  return rouge_n(std::span<const Token>(c), std::span<const Token>(r), n);
}
template <typename Token>
RougeScore rouge_l(const std::vector<Token>& c, const std::vector<Token>& r) {
  return rouge_l(std::span<const Token>(c), std::span<const Token>(r));
}
template <typename Token>
RougeSuite rouge_suite_tokens(const std::vector<Token>& c, const std::vector<Token>& r) {
  return rouge_suite_tokens(std::span<const Token>(c), std::span<const Token>(r));
}

/// Scores two raw texts after the shared tokenizer normalization; no
/// vocabulary involved.
RougeSuite rouge_suite(std::string_view candidate, std::string_view reference);

/// Mean of the three f1 values.
inline double avg_rouge(const RougeSuite& s) { return (s.r1.f1 + s.r2.f1 + s.rl.f1) / 3.0; }

}  // namespace sumaug
