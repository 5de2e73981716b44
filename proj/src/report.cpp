// SPDX-License-Identifier: Apache-2.0
#include "sumaug/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sumaug/error.hpp"

namespace sumaug {

using nlohmann::ordered_json;

SplitReport aggregate(std::string split, std::vector<SampleScore> samples) {
  SplitReport out;
  out.split = std::move(split);
  out.samples = std::move(samples);
  if (out.samples.empty()) return out;
  for (const auto& s : out.samples) {
    out.r1 += s.r1;
    out.r2 += s.r2;
    out.rl += s.rl;
  }
  const auto n = static_cast<double>(out.samples.size());
  out.r1 /= n;
  out.r2 /= n;
  out.rl /= n;
  return out;
}

const SplitReport* EvalReport::find(std::string_view split) const {
  for (const auto& s : splits) {
    if (s.split == split) return &s;
  }
  return nullptr;
}

std::string report_to_json(const EvalReport& report) {
  ordered_json root;
  root["regime"] = report.regime;
  root["pretraining"] = report.pretraining;
  root["finetuning"] = report.finetuning;
  root["selected_step"] = report.selected_step;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : report.metadata) meta[k] = v;
  root["metadata"] = std::move(meta);
  ordered_json splits = ordered_json::array();
  for (const auto& s : report.splits) {
    ordered_json js;
    js["split"] = s.split;
    js["r1"] = s.r1;
    js["r2"] = s.r2;
    js["rl"] = s.rl;
    ordered_json samples = ordered_json::array();
    for (const auto& x : s.samples) {
      samples.push_back(ordered_json{{"id", x.id}, {"r1", x.r1}, {"r2", x.r2}, {"rl", x.rl}});
    }
    js["samples"] = std::move(samples);
    splits.push_back(std::move(js));
  }
  root["splits"] = std::move(splits);
  return root.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
  try {
    const auto root = ordered_json::parse(text);
    EvalReport r;
    r.regime = root.at("regime").get<std::string>();
    r.pretraining = root.at("pretraining").get<std::string>();
    r.finetuning = root.at("finetuning").get<std::string>();
    r.selected_step = root.at("selected_step").get<std::size_t>();
    for (const auto& [k, v] : root.at("metadata").items()) r.metadata[k] = v.get<std::string>();
    for (const auto& js : root.at("splits")) {
      SplitReport s;
      s.split = js.at("split").get<std::string>();
      s.r1 = js.at("r1").get<double>();
      s.r2 = js.at("r2").get<double>();
      s.rl = js.at("rl").get<double>();
      for (const auto& x : js.at("samples")) {
        s.samples.push_back({x.at("id").get<std::string>(), x.at("r1").get<double>(),
                             x.at("r2").get<double>(), x.at("rl").get<double>()});
      }
      r.splits.push_back(std::move(s));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

EvalReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open report " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

namespace {

const SplitReport* table_split(const EvalReport& r) {
  if (const auto* s = r.find("test"); s && !s->samples.empty()) return s;
  if (const auto* s = r.find("val"); s && !s->samples.empty()) return s;
  return r.splits.empty() ? nullptr : &r.splits.front();
}

std::string score_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
  return buf;
}

}  // namespace

std::string render_table(const std::vector<EvalReport>& reports) {
  using Row = std::vector<std::string>;
  const Row header{"Pretraining", "Finetuning", "R1", "R2", "RL"};
  std::vector<Row> plain;
  std::vector<Row> pretrained;
  for (const auto& r : reports) {
    const auto* s = table_split(r);
    Row row{r.pretraining, r.finetuning, "-", "-", "-"};
    if (s != nullptr) row = {r.pretraining, r.finetuning, score_cell(s->r1), score_cell(s->r2), score_cell(s->rl)};
    (r.pretraining == "None" ? plain : pretrained).push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto* rows : {&plain, &pretrained}) {
    for (const auto& row : *rows) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
  }
  std::size_t inner = 0;
  for (auto w : width) inner += w + 3;
  inner -= 1;

  std::ostringstream out;
  auto rule = [&] {
    out << '+';
    for (auto w : width) out << std::string(w + 2, '-') << '+';
    out << '\n';
  };
  auto line = [&](const Row& row) {
    out << '|';
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto pad = width[c] - row[c].size();
      // text columns flush left, scores flush right
      if (c < 2) out << ' ' << row[c] << std::string(pad, ' ') << " |";
      else out << ' ' << std::string(pad, ' ') << row[c] << " |";
    }
    out << '\n';
  };
  auto section = [&](const std::string& title) {
    const auto left = (inner - std::min(inner, title.size())) / 2;
    const auto right = inner - std::min(inner, title.size()) - left;
    out << '|' << std::string(left, ' ') << title << std::string(right, ' ') << "|\n";
  };

  rule();
  line(header);
  rule();
  if (!plain.empty()) {
    section("No Pretraining");
    rule();
    for (const auto& row : plain) line(row);
    rule();
  }
  if (!pretrained.empty()) {
    section("With synthetic data pretraining");
    rule();
    for (const auto& row : pretrained) line(row);
    rule();
  }
  return out.str();
}

void emit_report(const EvalReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.flush();
    if (!out) throw Error("cannot write " + path.string());
  };
  write(dir / "report.json", report_to_json(report));
  write(dir / "report.txt", render_table({report}));
}

}  // namespace sumaug
