// SPDX-License-Identifier: Apache-2.0
#include "sumaug/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>

#include "sumaug/error.hpp"

namespace sumaug {

namespace {

constexpr std::array<std::string_view, special::kCount> kReserved = {
    special::kPadText, special::kUnkText, special::kBosText, special::kEosText, special::kMaskText};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

bool is_reserved(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

// Reserved strings that text may carry verbatim. <pad>, <s> and </s> are
// deliberately absent so encode never emits PAD, BOS or EOS from text.
bool is_whole_word(std::string_view word) { return word == special::kMaskText || word == special::kUnkText; }

void split_word(std::string_view word, std::vector<std::string>& out) {
  if (is_whole_word(word)) {
    out.emplace_back(word);
    return;
  }
  std::size_t begin = 0;
  std::size_t end = word.size();
  while (begin < end && is_punct(word[begin])) out.emplace_back(1, word[begin++]);
  std::size_t tail = end;
  while (tail > begin && is_punct(word[tail - 1])) --tail;
  if (tail > begin) out.emplace_back(word.substr(begin, tail - begin));
  for (std::size_t i = tail; i < end; ++i) out.emplace_back(1, word[i]);
}

}  // namespace

std::vector<std::string> normalize_tokens(std::string_view text) {
  std::string lowered(text);
  for (char& c : lowered) {
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  std::vector<std::string> out;
  std::string_view rest(lowered);
  std::size_t i = 0;
  while (i < rest.size()) {
    while (i < rest.size() && is_space(rest[i])) ++i;
    std::size_t j = i;
    while (j < rest.size() && !is_space(rest[j])) ++j;
    if (j > i) split_word(rest.substr(i, j - i), out);
    i = j;
  }
  return out;
}

Vocab::Vocab() : Vocab(std::vector<std::string>{}) {}

Vocab::Vocab(const std::vector<std::string>& tokens) {
  id_to_token_.reserve(special::kCount + tokens.size());
  for (auto r : kReserved) {
    token_to_id_.emplace(std::string(r), static_cast<TokenId>(id_to_token_.size()));
    id_to_token_.emplace_back(r);
  }
  for (const auto& t : tokens) {
    if (t.empty()) throw DataError("empty vocabulary token");
    if (!token_to_id_.emplace(t, static_cast<TokenId>(id_to_token_.size())).second) {
      throw DataError("duplicate vocabulary token '" + t + "'");
    }
    id_to_token_.push_back(t);
  }
}

TokenId Vocab::id(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? special::kUnk : it->second;
}

const std::string& Vocab::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= id_to_token_.size()) {
    throw DataError("token id " + std::to_string(id) + " outside vocabulary of size " +
                    std::to_string(id_to_token_.size()));
  }
  return id_to_token_[static_cast<std::size_t>(id)];
}

bool Vocab::contains(std::string_view token) const { return token_to_id_.count(std::string(token)) > 0; }

std::vector<std::string> Vocab::regular_tokens() const {
  return {id_to_token_.begin() + special::kCount, id_to_token_.end()};
}

void Vocab::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t i = special::kCount; i < id_to_token_.size(); ++i) out << id_to_token_[i] << '\n';
}

Vocab Vocab::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  return Vocab(tokens);
}

Vocab build_vocab(const std::vector<Sample>& train, std::size_t min_freq) {
  if (train.empty()) throw DataError("cannot build a vocabulary from an empty train split");
  if (min_freq < 1) min_freq = 1;
  std::map<std::string, std::size_t> counts;
  auto count_text = [&](std::string_view text) {
    for (auto& t : normalize_tokens(text)) {
      if (!is_reserved(t)) ++counts[std::move(t)];
    }
  };
  for (const auto& s : train) {
    for (const auto& u : s.document.units) count_text(u.text);
    count_text(s.summary);
  }
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (auto& [tok, n] : counts) {
    if (n >= min_freq) ranked.emplace_back(tok, n);
  }
  // map iteration is already bytewise ascending; stable sort keeps it for ties
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens;
  tokens.reserve(ranked.size());
  for (auto& [tok, n] : ranked) tokens.push_back(std::move(tok));
  return Vocab(tokens);
}

Vocab build_vocab(const Corpus& corpus, std::size_t min_freq) { return build_vocab(corpus.train, min_freq); }

TokenSeq encode(std::string_view text, const Vocab& vocab, bool add_bos_eos) {
  TokenSeq out;
  if (add_bos_eos) out.push_back(special::kBos);
  for (const auto& t : normalize_tokens(text)) out.push_back(vocab.id(t));
  if (add_bos_eos) out.push_back(special::kEos);
  return out;
}

std::string decode(const TokenSeq& ids, const Vocab& vocab) {
  std::string out;
  for (TokenId id : ids) {
    if (id == special::kPad || id == special::kBos || id == special::kEos) continue;
    if (!out.empty()) out += ' ';
    out += vocab.token(id);
  }
  return out;
}

TokenSeq encode_document(const Document& doc, const Vocab& vocab) {
  TokenSeq out;
  for (const auto& u : doc.units) {
    auto ids = encode(u.text, vocab, false);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

}  // namespace sumaug
