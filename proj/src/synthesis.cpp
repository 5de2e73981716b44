// SPDX-License-Identifier: Apache-2.0
#include "sumaug/synthesis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "sumaug/error.hpp"
#include "sumaug/random.hpp"
#include "sumaug/tokenizer.hpp"

namespace sumaug {

void SynthConfig::validate() const {
  if (count_per_sample < 1) throw ConfigError("synthesis count must be >= 1");
  if (!(mask_sample_prob >= 0.0 && mask_sample_prob <= 1.0)) {
    throw ConfigError("mask_sample_prob must lie in [0,1]");
  }
  if (!(mask_unit_frac >= 0.0 && mask_unit_frac <= 1.0)) {
    throw ConfigError("mask_unit_frac must lie in [0,1]");
  }
}

SynthMethod parse_synth_method(std::string_view text) {
  if (text == "shuffle") return SynthMethod::kShuffle;
  if (text == "shuffle-mask" || text == "shuffle_mask") return SynthMethod::kShuffleMask;
  if (text == "paraphrase") return SynthMethod::kParaphrase;
  throw ConfigError("unknown synthesis method '" + std::string(text) + "'");
}

std::string_view to_string(SynthMethod method) {
  switch (method) {
    case SynthMethod::kShuffle: return "shuffle";
    case SynthMethod::kShuffleMask: return "shuffle-mask";
    case SynthMethod::kParaphrase: return "paraphrase";
  }
  return "shuffle";
}

namespace {

// Both shuffle flavours draw the permutation first from the same stream,
// so shuffle-mask with zero mask probability reproduces shuffle exactly.
Rng sample_stream(const SynthConfig& config, const Sample& sample, std::size_t k) {
  return Rng(SeedBuilder(config.seed).add(sample.id()).add(static_cast<std::uint64_t>(k)).value());
}

Sample permuted_copy(const Sample& sample, Rng& rng, std::string_view tag, std::size_t k,
                     Origin origin) {
  Sample out = sample;
  out.document.id = sample.id() + "#" + std::string(tag) + std::to_string(k);
  out.origin = origin;
  rng.shuffle(out.document.units.begin(), out.document.units.end());
  return out;
}

}  // namespace

std::vector<Sample> synth_shuffle(const Sample& sample, const SynthConfig& config) {
  config.validate();
  std::vector<Sample> out;
  out.reserve(config.count_per_sample);
  for (std::size_t k = 1; k <= config.count_per_sample; ++k) {
    Rng rng = sample_stream(config, sample, k);
    out.push_back(permuted_copy(sample, rng, "shuf", k, Origin::kShuffle));
  }
  return out;
}

std::vector<Sample> synth_shuffle_mask(const Sample& sample, const SynthConfig& config) {
  config.validate();
  std::vector<Sample> out;
  out.reserve(config.count_per_sample);
  for (std::size_t k = 1; k <= config.count_per_sample; ++k) {
    Rng rng = sample_stream(config, sample, k);
    Sample s = permuted_copy(sample, rng, "mask", k, Origin::kShuffleMask);
    auto& units = s.document.units;
    if (config.mask_sample_prob > 0.0 && rng.uniform() < config.mask_sample_prob) {
      const double want = config.mask_unit_frac * static_cast<double>(units.size());
      const auto count = std::min(units.size(), static_cast<std::size_t>(std::ceil(want - 1e-9)));
      std::vector<std::size_t> slots(units.size());
      std::iota(slots.begin(), slots.end(), std::size_t{0});
      // partial Fisher-Yates: the first `count` slots are a uniform draw
      for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + rng.below(slots.size() - i);
        std::swap(slots[i], slots[j]);
        units[slots[i]].text = std::string(special::kMaskText);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sample> synth_paraphrase(const Sample& sample, const SynthConfig& config,
                                     ParaphraseProvider& provider) {
  config.validate();
  const auto paraphrases = provider.paraphrase(sample.id(), sample.summary, config.count_per_sample);
  if (paraphrases.size() != config.count_per_sample) {
    throw ProviderError("provider returned " + std::to_string(paraphrases.size()) + " of " +
                        std::to_string(config.count_per_sample) + " paraphrases for '" +
                        sample.id() + "'");
  }
  for (const auto& p : paraphrases) {
    if (trim(p).empty()) throw ProviderError("provider returned an empty paraphrase for '" + sample.id() + "'");
  }
  std::vector<Sample> out;
  out.reserve(config.count_per_sample);
  for (std::size_t k = 1; k <= config.count_per_sample; ++k) {
    Rng rng = sample_stream(config, sample, k);
    Sample s = permuted_copy(sample, rng, "para", k, Origin::kParaphrase);
    s.summary = paraphrases[k - 1];
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sample> synthesize(const std::vector<Sample>& samples, SynthMethod method,
                               const SynthConfig& config, ParaphraseProvider* provider) {
  config.validate();
  RuleParaphraser builtin(config.seed);
  if (provider == nullptr) provider = &builtin;
  std::vector<Sample> out;
  out.reserve(samples.size() * config.count_per_sample);
  for (const auto& s : samples) {
    std::vector<Sample> batch;
    switch (method) {
      case SynthMethod::kShuffle: batch = synth_shuffle(s, config); break;
      case SynthMethod::kShuffleMask: batch = synth_shuffle_mask(s, config); break;
      case SynthMethod::kParaphrase: batch = synth_paraphrase(s, config, *provider); break;
    }
    std::move(batch.begin(), batch.end(), std::back_inserter(out));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rule-based paraphraser

namespace {

// Each row is a set of mutually substitutable words.
const std::vector<std::vector<std::string>>& synonym_groups() {
  static const std::vector<std::vector<std::string>> groups = {
      {"students", "learners", "pupils"},
      {"student", "learner", "pupil"},
      {"lecture", "class", "lesson", "session"},
      {"lectures", "classes", "lessons", "sessions"},
      {"liked", "enjoyed", "appreciated"},
      {"like", "enjoy", "appreciate"},
      {"interesting", "engaging", "fascinating"},
      {"interested", "intrigued", "engaged"},
      {"many", "several", "numerous"},
      {"some", "a few", "certain"},
      {"others", "other students", "the rest"},
      {"found", "felt", "considered"},
      {"confusing", "unclear", "puzzling"},
      {"difficult", "hard", "challenging"},
      {"easy", "simple", "straightforward"},
      {"helpful", "useful", "valuable"},
      {"great", "excellent", "fantastic"},
      {"good", "fine", "solid"},
      {"bad", "poor", "weak"},
      {"product", "item", "purchase"},
      {"price", "cost"},
      {"cheap", "inexpensive", "affordable"},
      {"quality", "build quality", "craftsmanship"},
      {"recommend", "suggest", "endorse"},
      {"recommended", "suggested", "endorsed"},
      {"beautiful", "lovely", "pretty"},
      {"big", "large"},
      {"small", "little", "tiny"},
      {"fast", "quick", "rapid"},
      {"slow", "sluggish"},
      {"happy", "pleased", "satisfied"},
      {"overall", "in general", "all in all"},
      {"also", "additionally", "moreover"},
      {"understand", "grasp", "comprehend"},
      {"discussed", "covered", "talked about"},
      {"concept", "idea", "notion"},
      {"concepts", "ideas", "notions"},
      {"example", "illustration", "instance"},
      {"examples", "illustrations", "instances"},
      {"reviewers", "customers", "buyers"},
      {"service", "staff", "support"},
      {"food", "meals", "dishes"},
      {"often", "frequently", "regularly"},
      {"very", "really", "quite"},
      {"mentioned", "noted", "pointed out"},
      {"wanted", "asked for", "requested"},
      {"more", "additional", "extra"},
      {"important", "key", "essential"},
  };
  return groups;
}

const std::unordered_map<std::string, std::size_t>& synonym_index() {
  static const auto index = [] {
    std::unordered_map<std::string, std::size_t> m;
    const auto& groups = synonym_groups();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (const auto& w : groups[g]) {
        if (w.find(' ') == std::string::npos) m.emplace(w, g);
      }
    }
    return m;
  }();
  return index;
}

const std::vector<std::string>& fillers() {
  static const std::vector<std::string> f = {"Overall,", "In general,", "Basically,", "Generally speaking,"};
  return f;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (w.empty()) continue;
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

bool ends_sentence(const std::string& word) {
  return !word.empty() && (word.back() == '.' || word.back() == '!' || word.back() == '?');
}

// Replaces the alphabetic core of `word` by a synonym, keeping surrounding
// punctuation and a leading capital.
std::string substitute(const std::string& word, Rng& rng) {
  std::size_t b = 0;
  std::size_t e = word.size();
  while (b < e && !std::isalpha(static_cast<unsigned char>(word[b]))) ++b;
  while (e > b && !std::isalpha(static_cast<unsigned char>(word[e - 1]))) --e;
  if (b == e) return word;
  const std::string core = word.substr(b, e - b);
  auto it = synonym_index().find(lower(core));
  if (it == synonym_index().end()) return word;
  const auto& group = synonym_groups()[it->second];
  std::vector<const std::string*> options;
  for (const auto& g : group) {
    if (g != lower(core)) options.push_back(&g);
  }
  std::string repl = *options[rng.below(options.size())];
  if (std::isupper(static_cast<unsigned char>(core[0]))) {
    repl[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(repl[0])));
  }
  return word.substr(0, b) + repl + word.substr(e);
}

std::string make_variant(std::string_view text, Rng& rng) {
  std::vector<std::vector<std::string>> sentences(1);
  for (auto& w : split_ws(text)) {
    const bool end = ends_sentence(w);
    sentences.back().push_back(std::move(w));
    if (end) sentences.emplace_back();
  }
  if (sentences.back().empty()) sentences.pop_back();
  if (sentences.empty()) return std::string(text);

  for (auto& sentence : sentences) {
    for (auto& w : sentence) {
      if (rng.uniform() < 0.6) w = substitute(w, rng);
    }
  }
  if (sentences.size() > 1 && rng.uniform() < 0.5) {
    const auto shift = 1 + rng.below(sentences.size() - 1);
    std::rotate(sentences.begin(), sentences.begin() + static_cast<std::ptrdiff_t>(shift), sentences.end());
  }
  auto& first = sentences.front();
  bool removed = false;
  for (const auto& f : fillers()) {
    const auto parts = split_ws(f);
    if (first.size() > parts.size() &&
        std::equal(parts.begin(), parts.end(), first.begin(),
                   [](const std::string& a, const std::string& b) { return lower(a) == lower(b); })) {
      if (rng.uniform() < 0.5) {
        first.erase(first.begin(), first.begin() + static_cast<std::ptrdiff_t>(parts.size()));
        first[0][0] = static_cast<char>(std::toupper(static_cast<unsigned char>(first[0][0])));
        removed = true;
      }
      break;
    }
  }
  if (!removed && rng.uniform() < 0.4) {
    const auto& f = fillers()[rng.below(fillers().size())];
    if (!first.empty() && first[0].size() > 1 &&
        !std::isupper(static_cast<unsigned char>(first[0][1]))) {
      first[0][0] = static_cast<char>(std::tolower(static_cast<unsigned char>(first[0][0])));
    }
    auto parts = split_ws(f);
    first.insert(first.begin(), parts.begin(), parts.end());
  }
  std::vector<std::string> words;
  for (auto& s : sentences) std::move(s.begin(), s.end(), std::back_inserter(words));
  return join(words);
}

}  // namespace

std::vector<std::string> rule_paraphrase(std::string_view text, std::size_t n, std::uint64_t seed) {
  std::vector<std::string> out;
  if (n == 0) return out;
  const auto original_tokens = normalize_tokens(text);
  std::set<std::string> seen;
  const std::size_t attempts = 20 * n + 20;
  for (std::size_t a = 0; a < attempts && out.size() < n; ++a) {
    Rng rng(SeedBuilder(seed).add(text).add(static_cast<std::uint64_t>(a)).value());
    std::string v = make_variant(text, rng);
    if (trim(v).empty() || normalize_tokens(v) == original_tokens) continue;
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  // suffix markers keep the distinctness contract on untransformable text
  const std::string base = trim(text).empty() ? std::string("summary") : std::string(trim(text));
  for (std::size_t k = 1; out.size() < n; ++k) {
    std::string v = base + " (variant " + std::to_string(k) + ")";
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::string> RuleParaphraser::paraphrase(std::string_view id, std::string_view text,
                                                     std::size_t n) {
  return rule_paraphrase(text, n, SeedBuilder(seed_).add(id).value());
}

}  // namespace sumaug
