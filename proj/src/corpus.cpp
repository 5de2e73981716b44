// SPDX-License-Identifier: Apache-2.0
#include "sumaug/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sumaug/error.hpp"
#include "sumaug/random.hpp"

namespace sumaug {

using nlohmann::json;

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::kOriginal: return "original";
    case Origin::kShuffle: return "shuffle";
    case Origin::kShuffleMask: return "shuffle_mask";
    case Origin::kParaphrase: return "paraphrase";
  }
  return "original";
}

Origin parse_origin(std::string_view text) {
  if (text == "original") return Origin::kOriginal;
  if (text == "shuffle") return Origin::kShuffle;
  if (text == "shuffle_mask") return Origin::kShuffleMask;
  if (text == "paraphrase") return Origin::kParaphrase;
  throw DataError("unknown origin '" + std::string(text) + "'");
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "train";
}

std::optional<Split> parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "val") return Split::kVal;
  if (text == "test") return Split::kTest;
  return std::nullopt;
}

const std::vector<Sample>& Corpus::split(Split s) const {
  switch (s) {
    case Split::kTrain: return train;
    case Split::kVal: return val;
    case Split::kTest: return test;
  }
  return train;
}

std::vector<Sample>& Corpus::split(Split s) {
  return const_cast<std::vector<Sample>&>(std::as_const(*this).split(s));
}

std::string_view trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

void validate_sample(const Sample& sample) {
  const auto& doc = sample.document;
  if (doc.id.empty()) throw DataError("sample with empty id");
  if (doc.units.empty()) throw DataError("sample '" + doc.id + "' has no units");
  for (std::size_t i = 0; i < doc.units.size(); ++i) {
    if (trim(doc.units[i].text).empty()) {
      throw DataError("sample '" + doc.id + "' unit " + std::to_string(i) + " is empty");
    }
  }
  if (trim(sample.summary).empty()) throw DataError("sample '" + doc.id + "' has an empty summary");
}

void validate_corpus(const Corpus& corpus) {
  std::set<std::string_view> seen;
  for (Split s : {Split::kTrain, Split::kVal, Split::kTest}) {
    for (const auto& sample : corpus.split(s)) {
      validate_sample(sample);
      if (!seen.insert(sample.id()).second) {
        throw DataError("duplicate id '" + sample.id() + "'");
      }
    }
  }
}

namespace {

std::string require_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw DataError(where + ": field \"" + key + "\" missing or not a string");
  }
  return it->get<std::string>();
}

TaggedSample parse_line(const std::string& line, const std::string& where) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(where + ": malformed JSON (" + e.what() + ")");
  }
  if (!obj.is_object()) throw DataError(where + ": expected a JSON object");

  TaggedSample out;
  auto& doc = out.sample.document;
  doc.id = require_string(obj, "id", where);
  doc.group = obj.contains("group") ? require_string(obj, "group", where) : std::string();
  out.sample.summary = require_string(obj, "summary", where);

  auto units = obj.find("units");
  if (units == obj.end() || !units->is_array()) {
    throw DataError(where + ": field \"units\" missing or not an array (id '" + doc.id + "')");
  }
  for (const auto& u : *units) {
    if (!u.is_string()) throw DataError(where + ": non-string unit in '" + doc.id + "'");
    doc.units.push_back({u.get<std::string>()});
  }
  if (auto it = obj.find("split"); it != obj.end()) {
    if (!it->is_string() || !parse_split(it->get<std::string>())) {
      throw DataError(where + ": invalid split for '" + doc.id + "'");
    }
    out.split = parse_split(it->get<std::string>());
  }
  if (auto it = obj.find("origin"); it != obj.end()) {
    if (!it->is_string()) throw DataError(where + ": invalid origin for '" + doc.id + "'");
    out.sample.origin = parse_origin(it->get<std::string>());
  }
  try {
    validate_sample(out.sample);
  } catch (const DataError& e) {
    throw DataError(where + ": " + e.what());
  }
  return out;
}

}  // namespace

std::vector<TaggedSample> read_samples(std::istream& in, std::string_view source_name) {
  std::vector<TaggedSample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    out.push_back(parse_line(line, std::string(source_name) + ":" + std::to_string(line_no)));
  }
  return out;
}

std::vector<TaggedSample> read_samples_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_samples(in, path.string());
}

Corpus load_corpus(const std::filesystem::path& path) {
  Corpus corpus;
  if (std::filesystem::is_directory(path)) {
    bool any = false;
    for (Split s : {Split::kTrain, Split::kVal, Split::kTest}) {
      const auto file = path / (std::string(to_string(s)) + ".jsonl");
      if (!std::filesystem::exists(file)) continue;
      any = true;
      for (auto& tagged : read_samples_file(file)) {
        if (tagged.split && *tagged.split != s) {
          throw DataError(file.string() + ": sample '" + tagged.sample.id() +
                          "' tagged with a different split");
        }
        corpus.split(s).push_back(std::move(tagged.sample));
      }
    }
    if (!any) throw DataError(path.string() + ": no train/val/test .jsonl files");
  } else {
    for (auto& tagged : read_samples_file(path)) {
      corpus.split(tagged.split.value_or(Split::kTrain)).push_back(std::move(tagged.sample));
    }
  }
  validate_corpus(corpus);
  return corpus;
}

std::string sample_to_json_line(const Sample& sample, std::optional<Split> split) {
  json obj;
  obj["id"] = sample.document.id;
  obj["group"] = sample.document.group;
  json units = json::array();
  for (const auto& u : sample.document.units) units.push_back(u.text);
  obj["units"] = std::move(units);
  obj["summary"] = sample.summary;
  if (split) obj["split"] = std::string(to_string(*split));
  if (sample.origin != Origin::kOriginal) obj["origin"] = std::string(to_string(sample.origin));
  return obj.dump();
}

void write_samples(std::ostream& out, const std::vector<Sample>& samples,
                   std::optional<Split> split) {
  for (const auto& s : samples) out << sample_to_json_line(s, split) << '\n';
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (Split s : {Split::kTrain, Split::kVal, Split::kTest}) write_samples(out, corpus.split(s), s);
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_corpus(out, corpus);
}

void save_samples(const std::filesystem::path& path, const std::vector<Sample>& samples,
                  std::optional<Split> split) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_samples(out, samples, split);
}

std::array<std::size_t, 3> apportion(std::size_t n, const SplitRatios& ratios) {
  const std::array<double, 3> r{ratios.train, ratios.val, ratios.test};
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = r[i] * static_cast<double>(n);
    // slack absorbs representation error such as 0.7 * 10 = 6.9999...
    const double whole = std::floor(exact + 1e-9);
    sizes[i] = static_cast<std::size_t>(whole);
    frac[i] = std::max(0.0, exact - whole);
    assigned += sizes[i];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return frac[a] > frac[b]; });
  for (int k = 0; assigned < n; k = (k + 1) % 3) {
    if (r[order[k]] <= 0.0) continue;
    ++sizes[order[k]];
    ++assigned;
  }
  return sizes;
}

Corpus split_corpus(const std::vector<Sample>& samples, const SplitRatios& ratios,
                    std::uint64_t seed, std::vector<std::string>* warnings) {
  const std::array<double, 3> r{ratios.train, ratios.val, ratios.test};
  for (double x : r) {
    if (!(x >= 0.0)) throw ConfigError("split ratios must be non-negative");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1");
  }
  const int nonzero = static_cast<int>(std::count_if(r.begin(), r.end(), [](double x) { return x > 0.0; }));
  const int largest = static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());

  std::map<std::string, std::vector<const Sample*>> groups;
  for (const auto& s : samples) groups[s.document.group].push_back(&s);

  Corpus out;
  for (auto& [group, members] : groups) {
    Rng rng(SeedBuilder(seed).add("split").add(group).value());
    rng.shuffle(members.begin(), members.end());

    std::array<std::size_t, 3> sizes{};
    if (members.size() < static_cast<std::size_t>(nonzero)) {
      sizes[largest] = members.size();
      if (warnings) {
        warnings->push_back("group '" + group + "' has " + std::to_string(members.size()) +
                            " samples; assigned wholly to " +
                            std::string(to_string(static_cast<Split>(largest))));
      }
    } else {
      sizes = apportion(members.size(), ratios);
    }
    std::size_t pos = 0;
    for (int part = 0; part < 3; ++part) {
      auto& dest = out.split(static_cast<Split>(part));
      for (std::size_t i = 0; i < sizes[part]; ++i) dest.push_back(*members[pos++]);
    }
  }
  return out;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  std::set<std::string_view> groups;
  std::size_t units = 0;
  for (int part = 0; part < 3; ++part) {
    const auto& split = corpus.split(static_cast<Split>(part));
    stats.split_sizes[part] = split.size();
    for (const auto& s : split) {
      groups.insert(s.document.group);
      units += s.document.units.size();
    }
  }
  stats.documents = corpus.size();
  stats.groups = groups.size();
  stats.mean_units = stats.documents ? static_cast<double>(units) / static_cast<double>(stats.documents) : 0.0;
  return stats;
}

}  // namespace sumaug
