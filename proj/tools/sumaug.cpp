// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Exit codes: 0 ok, 1 other failure, 2 bad
// configuration or usage, 3 bad data, 4 provider failure.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sumaug/config.hpp"
#include "sumaug/corpus.hpp"
#include "sumaug/curriculum.hpp"
#include "sumaug/error.hpp"
#include "sumaug/fixtures.hpp"
#include "sumaug/pipeline.hpp"
#include "sumaug/provider.hpp"
#include "sumaug/report.hpp"
#include "sumaug/rouge.hpp"
#include "sumaug/specificity.hpp"
#include "sumaug/synthesis.hpp"

namespace fs = std::filesystem;
using namespace sumaug;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) throw Error("cannot write " + path.string());
}

bool external_source(const std::string& value, const char* flag) {
  if (value == "builtin") return false;
  if (value == "external") return true;
  throw ConfigError(std::string(flag) + " must be builtin or external");
}

struct SynthArgs {
  std::string method = "paraphrase";
  std::size_t n = 10;
  std::uint64_t seed = 1;
  std::string provider = "builtin";
  double mask_prob = 0.5;
  double mask_frac = 0.5;
  std::string in, out;
};

int run_synth(const SynthArgs& a) {
  SynthConfig config;
  config.count_per_sample = a.n;
  config.seed = a.seed;
  config.mask_sample_prob = a.mask_prob;
  config.mask_unit_frac = a.mask_frac;
  config.validate();
  const auto method = parse_synth_method(a.method);
  const bool external = external_source(a.provider, "--provider");
  const Corpus corpus = load_corpus(a.in);

  std::unique_ptr<ProviderProcess> process;
  std::unique_ptr<ExternalParaphraser> paraphraser;
  if (external && method == SynthMethod::kParaphrase) {
    process = std::make_unique<ProviderProcess>(ProviderProcess::command_from_env());
    paraphraser = std::make_unique<ExternalParaphraser>(*process);
  }
  // only train samples are expanded, so held-out ids never leak into synthetic data
  const auto samples = synthesize(corpus.train, method, config, paraphraser.get());
  std::ostringstream out;
  write_samples(out, samples, Split::kTrain);
  write_file(a.out, out.str());
  std::cerr << "wrote " << samples.size() << " synthetic samples from " << corpus.train.size() << " originals\n";
  return 0;
}

struct CurriculumArgs {
  std::string metric = "specificity";
  std::size_t buckets = 10;
  std::size_t steps = 2000;
  std::uint64_t seed = 1;
  std::string scorer = "builtin";
  std::string in, out;
};

int run_curriculum(const CurriculumArgs& a) {
  const auto metric = parse_metric(a.metric);
  const bool external = external_source(a.scorer, "--scorer");
  const Corpus corpus = load_corpus(a.in);
  if (corpus.train.empty()) throw DataError("no train samples in " + a.in);

  std::vector<DifficultyScore> scores;
  if (metric == DifficultyMetric::kRouge) {
    scores = score_difficulty(corpus.train, metric);
  } else if (external) {
    ProviderProcess process(ProviderProcess::command_from_env());
    ExternalScorer scorer(process);
    scores = score_difficulty(corpus.train, metric, &scorer);
  } else {
    auto scorer = fit_heuristic_scorer(corpus);
    scores = score_difficulty(corpus.train, metric, &scorer);
  }
  const auto schedule = build_schedule(bucketize(scores, a.buckets), a.steps, a.seed);
  write_file(a.out, schedule_to_json(schedule, metric));
  return 0;
}

struct TrainArgs {
  std::string regime;
  std::string config;
  std::string data;
  std::string out;
  std::vector<std::string> overrides;
  bool quiet = false;
};

int run_train(const TrainArgs& a) {
  ConfigMap map;
  if (!a.config.empty()) map = ConfigMap::load(a.config);
  for (const auto& o : a.overrides) map.apply_override(o);
  if (!a.regime.empty()) map.set("regime", a.regime);
  if (!a.data.empty()) map.set("data.path", a.data);
  const auto config = RegimeConfig::from_map(map);
  const auto data_path = map.get_string("data.path", "");
  if (data_path.empty()) throw ConfigError("no corpus given (--data or data.path)");

  Corpus corpus = load_corpus(data_path);
  if (map.get_bool("data.resplit", false)) {
    std::vector<Sample> all;
    for (auto* part : {&corpus.train, &corpus.val, &corpus.test}) {
      std::move(part->begin(), part->end(), std::back_inserter(all));
    }
    std::vector<std::string> warnings;
    corpus = split_corpus(all, SplitRatios{}, config.seed, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  }

  RunOptions options;
  if (!a.quiet) options.log = &std::cerr;
  const auto result = run_regime(corpus, config, options);

  const fs::path out = a.out;
  emit_report(result.report, out);
  save_checkpoint(out / "checkpoint.bin", result.checkpoint);
  Vocab(result.checkpoint.vocab_tokens).save(out / "vocab.txt");
  std::ostringstream prov;
  for (const auto& r : result.provenance) prov << provenance_to_json_line(r);
  write_file(out / "provenance.jsonl", prov.str());
  for (const auto& phase : result.phases) {
    if (phase.schedule) write_file(out / ("schedule." + phase.name + ".json"), schedule_to_json(*phase.schedule, config.metric));
  }
  std::cout << render_table({result.report});
  return 0;
}

struct EvalArgs {
  std::string checkpoint, data, split = "test", out;
};

int run_eval(const EvalArgs& a) {
  const auto split = parse_split(a.split);
  if (!split) throw ConfigError("--split must be train, val or test");
  const Corpus corpus = load_corpus(a.data);
  const auto ckpt = load_checkpoint(a.checkpoint);

  EvalReport report;
  report.regime = "eval";
  report.selected_step = ckpt.step;
  report.metadata["checkpoint"] = a.checkpoint;
  report.splits.push_back(evaluate(ckpt, a.split, corpus.split(*split)));
  if (!a.out.empty()) emit_report(report, a.out);
  const auto& s = report.splits.front();
  std::printf("%s\tR1 %.4f\tR2 %.4f\tRL %.4f\n", a.split.c_str(), s.r1, s.r2, s.rl);
  return 0;
}

int run_rouge(const std::string& candidate, const std::string& reference) {
  const auto suite = rouge_suite(read_file(candidate), read_file(reference));
  std::printf("metric\tprecision\trecall\tf1\n");
  const std::pair<const char*, const RougeScore*> rows[] = {{"R1", &suite.r1}, {"R2", &suite.r2}, {"RL", &suite.rl}};
  for (const auto& [name, s] : rows) std::printf("%s\t%.6f\t%.6f\t%.6f\n", name, s->precision, s->recall, s->f1);
  return 0;
}

int run_report(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<EvalReport> reports;
  for (const auto& path : inputs) {
    const fs::path p = path;
    reports.push_back(load_report(fs::is_directory(p) ? p / "report.json" : p));
  }
  const auto table = render_table(reports);
  if (out.empty()) std::cout << table;
  else write_file(out, table);
  return 0;
}

int run_fixture(const std::string& shape, const std::string& out) {
  const auto corpus = make_fixture(fixture_shape(shape));
  std::ostringstream buf;
  write_corpus(buf, corpus);
  write_file(out, buf.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data synthesis, sample mixing and curriculum learning for low-resource summarization"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic samples from the train split");
  synth_cmd->add_option("--method", synth.method, "shuffle | shuffle_mask | paraphrase")->capture_default_str();
  synth_cmd->add_option("--n", synth.n, "Synthetic samples per original")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed)->capture_default_str();
  synth_cmd->add_option("--provider", synth.provider, "builtin | external")->capture_default_str();
  synth_cmd->add_option("--mask-prob", synth.mask_prob, "Chance a sample is masked")->capture_default_str();
  synth_cmd->add_option("--mask-frac", synth.mask_frac, "Fraction of units masked")->capture_default_str();
  synth_cmd->add_option("--in", synth.in, "Corpus (JSONL file or split directory)")->required();
  synth_cmd->add_option("--out", synth.out, "Output JSONL")->required();

  CurriculumArgs cur;
  auto* cur_cmd = app.add_subcommand("curriculum", "Score difficulty and write a bucket schedule");
  cur_cmd->add_option("--metric", cur.metric, "specificity | rouge")->capture_default_str();
  cur_cmd->add_option("--buckets", cur.buckets)->capture_default_str();
  cur_cmd->add_option("--steps", cur.steps, "Total training steps")->capture_default_str();
  cur_cmd->add_option("--seed", cur.seed)->capture_default_str();
  cur_cmd->add_option("--scorer", cur.scorer, "builtin | external")->capture_default_str();
  cur_cmd->add_option("--in", cur.in)->required();
  cur_cmd->add_option("--out", cur.out, "Schedule JSON")->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Run a training regime");
  train_cmd->add_option("--regime", train.regime, "Overrides the config's regime");
  train_cmd->add_option("--config", train.config, "key = value config file");
  train_cmd->add_option("--data", train.data, "Corpus; overrides data.path");
  train_cmd->add_option("--out", train.out, "Output directory")->required();
  train_cmd->add_option("--set", train.overrides, "key=value override (repeatable)");
  train_cmd->add_flag("--quiet", train.quiet, "No progress lines");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on one split");
  eval_cmd->add_option("--checkpoint", ev.checkpoint)->required();
  eval_cmd->add_option("--data", ev.data)->required();
  eval_cmd->add_option("--split", ev.split)->capture_default_str();
  eval_cmd->add_option("--out", ev.out, "Report directory");

  std::string candidate, reference;
  auto* rouge_cmd = app.add_subcommand("rouge", "ROUGE-1/2/L of one candidate text against one reference");
  rouge_cmd->add_option("--candidate", candidate)->required();
  rouge_cmd->add_option("--reference", reference)->required();

  std::vector<std::string> report_inputs;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Merge report.json files into one table");
  report_cmd->add_option("inputs", report_inputs, "report.json files or run directories")->required();
  report_cmd->add_option("--out", report_out, "Table file (default stdout)");

  std::string shape = "small", fixture_out;
  auto* fixture_cmd = app.add_subcommand("fixture", "Write a synthetic corpus");
  fixture_cmd->add_option("--shape", shape, "cm | ay | toy | small")->capture_default_str();
  fixture_cmd->add_option("--out", fixture_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*synth_cmd) return run_synth(synth);
    if (*cur_cmd) return run_curriculum(cur);
    if (*train_cmd) return run_train(train);
    if (*eval_cmd) return run_eval(ev);
    if (*rouge_cmd) return run_rouge(candidate, reference);
    if (*report_cmd) return run_report(report_inputs, report_out);
    if (*fixture_cmd) return run_fixture(shape, fixture_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const ProviderError& e) {
    std::cerr << "provider error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
