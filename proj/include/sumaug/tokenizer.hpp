// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sumaug/corpus.hpp"

namespace sumaug {

using TokenId = std::int32_t;

/// A sequence of vocabulary ids; its length is the sequence length L.
using TokenSeq = std::vector<TokenId>;

namespace special {
inline constexpr TokenId kPad = 0;
inline constexpr TokenId kUnk = 1;
inline constexpr TokenId kBos = 2;
inline constexpr TokenId kEos = 3;
inline constexpr TokenId kMask = 4;
inline constexpr TokenId kCount = 5;

inline constexpr std::string_view kPadText = "<pad>";
inline constexpr std::string_view kUnkText = "<unk>";
inline constexpr std::string_view kBosText = "<s>";
inline constexpr std::string_view kEosText = "</s>";
inline constexpr std::string_view kMaskText = "<mask>";
}  // namespace special

/// Lowercases, splits on whitespace and peels leading/trailing ASCII
/// punctuation into single-character tokens. "<mask>" and "<unk>" survive as
/// whole tokens.
std::vector<std::string> normalize_tokens(std::string_view text);

/// Token-string to id mapping with the five reserved ids in front.
class Vocab {
 public:
  /// Only reserved tokens (v = 5).
  Vocab();

  /// Reserved tokens followed by `tokens` in the given order. Throws
  /// DataError on duplicates or on a token that collides with a reserved one.
  explicit Vocab(const std::vector<std::string>& tokens);

  [[nodiscard]] std::size_t size() const { return id_to_token_.size(); }
  [[nodiscard]] TokenId id(std::string_view token) const;
  [[nodiscard]] const std::string& token(TokenId id) const;
  [[nodiscard]] bool contains(std::string_view token) const;

  /// Non-reserved tokens in id order.
  [[nodiscard]] std::vector<std::string> regular_tokens() const;

  /// One token per line; line number equals id - 5.
  void save(const std::filesystem::path& path) const;
  static Vocab load(const std::filesystem::path& path);

  friend bool operator==(const Vocab& a, const Vocab& b) { return a.id_to_token_ == b.id_to_token_; }

 private:
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, TokenId> token_to_id_;
};

/// Builds the vocabulary from train-split unit texts and summaries. Tokens
/// with count >= min_freq are ordered by descending count, then bytewise.
Vocab build_vocab(const Corpus& corpus, std::size_t min_freq = 1);
Vocab build_vocab(const std::vector<Sample>& train, std::size_t min_freq = 1);

TokenSeq encode(std::string_view text, const Vocab& vocab, bool add_bos_eos = false);

/// Joins tokens with single spaces; PAD, BOS and EOS are dropped.
std::string decode(const TokenSeq& ids, const Vocab& vocab);

/// The model-side source sequence for a document: the concatenated tokens
/// of its units in stored order.
TokenSeq encode_document(const Document& doc, const Vocab& vocab);

}  // namespace sumaug
