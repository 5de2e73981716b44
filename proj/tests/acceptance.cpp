// SPDX-License-Identifier: Apache-2.0
// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gradcheck.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "sumaug/curriculum.hpp"
#include "sumaug/fixtures.hpp"
#include "sumaug/mixgen.hpp"
#include "sumaug/model.hpp"
#include "sumaug/pipeline.hpp"
#include "sumaug/provider.hpp"
#include "sumaug/report.hpp"
#include "sumaug/rouge.hpp"
#include "sumaug/specificity.hpp"
#include "sumaug/synthesis.hpp"

using namespace sumaug;
using sumaug::testing::make_sample;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  std::string name;
  double budget_seconds;  // 0 = no runtime bound
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- ROUGE ---------------------------------------------------------------

std::vector<std::vector<int>> all_sequences(int alphabet, std::size_t max_len) {
  std::vector<std::vector<int>> out{{}};
  std::vector<std::vector<int>> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& s : frontier) {
      for (int a = 0; a < alphabet; ++a) {
        auto t = s;
        t.push_back(a);
        next.push_back(t);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

double rouge_gap(const std::vector<int>& c, const std::vector<int>& r) {
  double worst = 0.0;
  auto cmp = [&](const RougeScore& s, const oracle::Prf& o) {
    worst = std::max({worst, std::abs(s.precision - o.p), std::abs(s.recall - o.r), std::abs(s.f1 - o.f)});
  };
  cmp(rouge_n(c, r, 1), oracle::rouge_n(c, r, 1));
  cmp(rouge_n(c, r, 2), oracle::rouge_n(c, r, 2));
  cmp(rouge_l(c, r), oracle::rouge_l(c, r));
  return worst;
}

Outcome rouge_oracle() {
  Outcome o;
  const auto seqs = all_sequences(3, 6);
  double worst = 0.0;
  std::size_t pairs = 0;
  for (const auto& c : seqs) {
    for (const auto& r : seqs) {
      worst = std::max(worst, rouge_gap(c, r));
      ++pairs;
    }
  }
  std::mt19937 gen(11);
  std::uniform_int_distribution<int> len(7, 16), sym(0, 4);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> c(static_cast<std::size_t>(len(gen))), r(static_cast<std::size_t>(len(gen)));
    for (auto& x : c) x = sym(gen);
    for (auto& x : r) x = sym(gen);
    worst = std::max(worst, rouge_gap(c, r));
    ++pairs;
  }
  o.require(worst <= 1e-12, "max |delta| " + fmt("%.3g", worst));
  o.detail = o.pass ? std::to_string(pairs) + " pairs, max |delta| " + fmt("%.3g", worst) : o.detail;
  return o;
}

Outcome rouge_worked() {
  Outcome o;
  const double r1 = rouge_suite("the cat sat", "the cat").r1.f1;
  const double rl = rouge_suite("a c b", "a b c").rl.f1;
  o.require(r1 == 0.8, "R1 f1 " + fmt("%.17g", r1));
  o.require(rl == 2.0 / 3.0, "RL f1 " + fmt("%.17g", rl));
  if (o.pass) o.detail = "R1 " + fmt("%.17g", r1) + ", RL " + fmt("%.17g", rl);
  return o;
}

// ---- MixGen --------------------------------------------------------------

TokenSeq random_tokens(std::mt19937& gen, std::size_t len, int v) {
  std::uniform_int_distribution<int> tok(0, v - 1);
  TokenSeq s(len);
  for (auto& x : s) x = tok(gen);
  return s;
}

Outcome mixgen_fuzz() {
  Outcome o;
  std::mt19937 gen(23);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_real_distribution<double> lam(0.5, 1.0);
  const int v = 7;
  for (int trial = 0; trial < 1000 && o.pass; ++trial) {
    const auto s1 = random_tokens(gen, static_cast<std::size_t>(len(gen)), v);
    const auto s2 = random_tokens(gen, static_cast<std::size_t>(len(gen)), v);
    const double lambda = lam(gen);
    const std::size_t longest = std::max(s1.size(), s2.size());
    const std::size_t shortest = std::min(s1.size(), s2.size());
    const std::size_t i = std::uniform_int_distribution<std::size_t>(1, longest)(gen);
    const auto d = expected_distribution(s1, s2, i, lambda, v);
    const auto m = expected_distribution(s2, s1, i, 1.0 - lambda, v);
    const std::string at = "case " + std::to_string(trial);
    o.require(std::abs(d.total() - 1.0) <= 1e-9, at + ": mass " + fmt("%.17g", d.total()));
    o.require(d.support <= 2, at + ": support > 2");
    if (i > shortest) o.require(d.support == 1, at + ": tail position not one-hot");
    for (int t = 0; t < v && i <= shortest; ++t) {
      o.require(std::abs(d.prob(t) - m.prob(t)) <= 1e-12, at + ": lambda symmetry");
    }
  }
  if (o.pass) o.detail = "1000 cases";
  return o;
}

Outcome teacher_frequency() {
  Outcome o;
  TokenSeq s1(10000, 4), s2(10000, 5);
  Rng rng(2024);
  const auto t = sample_teacher_tokens(s1, s2, 0.75, rng);
  const double frac = static_cast<double>(std::count(t.begin(), t.end(), 4)) / 10000.0;
  const auto all = sample_teacher_tokens(s1, s2, 1.0, rng);
  const double frac1 = static_cast<double>(std::count(all.begin(), all.end(), 4)) / 10000.0;
  o.require(frac >= 0.73 && frac <= 0.77, "lambda 0.75 fraction " + fmt("%.4f", frac));
  o.require(frac1 == 1.0, "lambda 1 fraction " + fmt("%.4f", frac1));
  if (o.pass) o.detail = "fraction " + fmt("%.4f", frac) + " at 0.75, " + fmt("%.1f", frac1) + " at 1.0";
  return o;
}

ModelConfig width16() {
  ModelConfig c;
  c.width = 16;
  c.encoder_layers = 2;
  c.decoder_layers = 1;
  c.attention_heads = 2;
  c.feedforward_width = 32;
  c.max_src_len = 12;
  c.max_tgt_len = 8;
  c.seed = 5;
  return c;
}

Outcome kl_loss_checks() {
  Outcome o;
  // zero at matching distributions
  const auto t = expected_targets({1, 2, 3}, {3, 2}, 0.8, 5);
  Mat logits = Mat::Constant(3, 5, -1e30);
  logits(0, 1) = std::log(0.8);
  logits(0, 3) = std::log(0.2);
  logits(1, 2) = 0.0;
  logits(2, 3) = 0.0;
  const double zero = kl_loss(logits, t);
  o.require(std::abs(zero) <= 1e-12, "loss at target " + fmt("%.3g", zero));

  // dense oracle
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  double dense_gap = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int v = 9;
    const auto s1 = random_tokens(gen, 2 + static_cast<std::size_t>(trial % 6), v);
    const auto s2 = random_tokens(gen, 1 + static_cast<std::size_t>(trial % 5), v);
    const double lambda = 0.5 + 0.5 * (trial % 11) / 10.0;
    const auto tg = expected_targets(s1, s2, lambda, v);
    Mat lg(static_cast<Eigen::Index>(tg.positions.size()), v);
    for (Eigen::Index r = 0; r < lg.rows(); ++r) {
      for (Eigen::Index c = 0; c < v; ++c) lg(r, c) = u(gen);
    }
    double dense = 0.0;
    for (Eigen::Index r = 0; r < lg.rows(); ++r) {
      std::vector<double> row(lg.row(r).data(), lg.row(r).data() + v);
      dense += oracle::dense_kl(row, oracle::dense_target({s1.begin(), s1.end()}, {s2.begin(), s2.end()},
                                                          static_cast<std::size_t>(r + 1), lambda, v));
    }
    dense /= static_cast<double>(lg.rows());
    dense_gap = std::max(dense_gap, std::abs(dense - kl_loss(lg, tg)));
  }
  o.require(dense_gap <= 1e-9, "dense oracle gap " + fmt("%.3g", dense_gap));

  // every parameter of a width-16 model, plain and mixed
  Seq2SeqModel model(width16(), 14);
  TrainingInstance inst;
  inst.source = {5, 6, 7, 8, 9, 10};
  inst.target = {10, 11, 12, special::kEos};
  const auto plain = sumaug::testing::gradient_check(model, inst);
  inst.partner = MixPartner{{9, 13, 6}, {12, 13, 5, 6, special::kEos}, 0.7, 99};
  inst.mix_layer = 1;
  const auto mixed = sumaug::testing::gradient_check(model, inst);
  o.require(plain.worst < 1e-4, "plain gradient rel err " + fmt("%.3g", plain.worst) + " at " + plain.where);
  o.require(mixed.worst < 1e-4, "mixed gradient rel err " + fmt("%.3g", mixed.worst) + " at " + mixed.where);
  if (o.pass) {
    o.detail = "dense gap " + fmt("%.2g", dense_gap) + ", grad rel err " +
               fmt("%.2g", std::max(plain.worst, mixed.worst)) + " over " +
               std::to_string(plain.checked + mixed.checked) + " entries";
  }
  return o;
}

Outcome compositionality() {
  Outcome o;
  ModelConfig cfg = width16();
  cfg.encoder_layers = 3;
  cfg.max_src_len = 24;
  Seq2SeqModel model(cfg, 20);
  std::mt19937 gen(41);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    TokenSeq x(1 + static_cast<std::size_t>(trial % 24));
    for (auto& t : x) t = std::uniform_int_distribution<int>(special::kCount, 19)(gen);
    const Mat full = model.encode(x).hidden;
    for (int k = 0; k <= cfg.encoder_layers; ++k) {
      const Mat resumed = model.resume_encode(model.encode_to_layer(x, k), k).hidden;
      worst = std::max(worst, (resumed - full).cwiseAbs().maxCoeff());
    }
  }
  o.require(worst <= 1e-12, "max |delta| " + fmt("%.3g", worst));
  if (o.pass) o.detail = "k = 0..3, max |delta| " + fmt("%.3g", worst);
  return o;
}

// ---- Training ------------------------------------------------------------

Outcome overfit_smoke() {
  Outcome o;
  const auto corpus = make_fixture(toy_fixture_shape());
  std::istringstream in("regime = original\n");
  const auto cfg = RegimeConfig::from_map(ConfigMap::parse(in));
  o.require(cfg.steps <= 2000, "step budget " + std::to_string(cfg.steps));
  const auto a = run_regime(corpus, cfg);
  const auto b = run_regime(corpus, cfg);
  const auto train = evaluate(a.checkpoint, "train", corpus.train);
  o.require(corpus.train.size() == 16, "fixture size " + std::to_string(corpus.train.size()));
  o.require(train.r1 >= 0.9, "train R1 " + fmt("%.4f", train.r1));
  bool same = a.checkpoint.params.size() == b.checkpoint.params.size();
  for (std::size_t i = 0; same && i < a.checkpoint.params.size(); ++i) {
    same = a.checkpoint.params[i].second == b.checkpoint.params[i].second;
  }
  o.require(same, "parameters differ between identical runs");
  o.require(report_to_json(a.report) == report_to_json(b.report), "reports differ between identical runs");
  if (o.pass) o.detail = std::to_string(cfg.steps) + " steps, train R1 " + fmt("%.4f", train.r1) + ", runs identical";
  return o;
}

// ---- Synthesis -----------------------------------------------------------

Outcome synthesis_counts() {
  Outcome o;
  const auto small = make_fixture(small_fixture_shape());
  SynthConfig cfg;
  cfg.count_per_sample = 5;
  cfg.seed = 9;
  for (auto method : {SynthMethod::kShuffle, SynthMethod::kShuffleMask, SynthMethod::kParaphrase}) {
    const auto out = synthesize(small.train, method, cfg);
    o.require(out.size() == 5 * small.train.size(),
              std::string(to_string(method)) + " produced " + std::to_string(out.size()));
  }
  const auto cm = make_fixture(reflection_fixture_shape());
  cfg.count_per_sample = 10;
  const auto para = synthesize(cm.train, SynthMethod::kParaphrase, cfg);
  o.require(cm.train.size() == 294 && para.size() == 2940,
            std::to_string(cm.train.size()) + " originals gave " + std::to_string(para.size()));

  for (const auto& s : small.train) {
    auto units = [](const Document& d) {
      std::vector<std::string> u;
      for (const auto& x : d.units) u.push_back(x.text);
      std::sort(u.begin(), u.end());
      return u;
    };
    for (const auto& sh : synth_shuffle(s, cfg)) {
      o.require(units(sh.document) == units(s.document), "shuffle changed the units of " + s.id());
      o.require(sh.summary == s.summary, "shuffle changed the summary of " + s.id());
    }
  }

  SynthConfig mask;
  mask.count_per_sample = 50;
  const auto doc = make_sample("d", {"a", "b", "c", "d", "e", "f", "g", "h"}, "s");
  std::size_t masked = 0, slots = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    mask.seed = rep + 1000;
    for (const auto& s : synth_shuffle_mask(doc, mask)) {
      for (const auto& u : s.document.units) {
        ++slots;
        masked += u.text == special::kMaskText;
      }
    }
  }
  const double rate = static_cast<double>(masked) / static_cast<double>(slots);
  o.require(std::abs(rate - 0.25) <= 0.02, "mask rate " + fmt("%.4f", rate));
  if (o.pass) o.detail = "294 -> 2940, mask rate " + fmt("%.4f", rate) + " over 5000 samples";
  return o;
}

// ---- Curriculum ----------------------------------------------------------

Outcome curriculum_checks() {
  Outcome o;
  const std::vector<DifficultyScore> raws{{"a", DifficultyMetric::kRouge, 0.2},
                                          {"b", DifficultyMetric::kRouge, 0.5},
                                          {"c", DifficultyMetric::kRouge, 0.8}};
  const auto ten = bucketize(raws, 10);
  o.require(ten.bucket("a") == 1 && ten.bucket("b") == 6 && ten.bucket("c") == 10,
            "buckets " + std::to_string(ten.bucket("a")) + "," + std::to_string(ten.bucket("b")) + "," +
                std::to_string(ten.bucket("c")));

  auto flat = raws;
  for (auto& r : flat) r.raw = 0.4;
  const auto one = bucketize(flat, 10);
  for (const auto& id : {"a", "b", "c"}) o.require(one.bucket(id) == one.bucket("a"), "equal raws split");

  const auto corpus = make_fixture(reflection_fixture_shape());
  auto scorer = fit_heuristic_scorer(corpus);
  for (auto metric : {DifficultyMetric::kSpecificity, DifficultyMetric::kRouge}) {
    const auto assignment = bucketize(score_difficulty(corpus.train, metric, &scorer), 10);
    const auto schedule = build_schedule(assignment, 1000, 77);
    std::vector<std::string> previous;
    for (std::size_t k = 1; k <= 10; ++k) {
      auto now = schedule.eligible(k);
      std::sort(now.begin(), now.end());
      o.require(std::includes(now.begin(), now.end(), previous.begin(), previous.end()),
                "stage " + std::to_string(k) + " drops samples");
      previous = std::move(now);
    }
    o.require(previous.size() == corpus.train.size(), "last stage misses samples");
    const auto again = build_schedule(bucketize(score_difficulty(corpus.train, metric, &scorer), 10), 1000, 77);
    o.require(schedule_to_json(schedule, metric) == schedule_to_json(again, metric), "schedule JSON differs");
  }
  if (o.pass) o.detail = "buckets {1,6,10}, nested stages, stable JSON";
  return o;
}

// ---- Specificity ---------------------------------------------------------

class TableScorer : public SpecificityScorer {
 public:
  explicit TableScorer(std::map<std::string, double> t) : table_(std::move(t)) {}
  double score(std::string_view text) override { return table_.at(std::string(text)); }

 private:
  std::map<std::string, double> table_;
};

Outcome specificity_checks() {
  Outcome o;
  TableScorer table({{"a", 1.0}, {"b", 2.0}, {"c", 3.0}});
  const double ds = score_document(make_sample("d", {"a", "b", "c"}, "s").document, table);
  o.require(ds == 2.0, "document score " + fmt("%.17g", ds));

  double lo = 4.0, hi = 1.0, gap = 0.0;
  for (const auto& shape : {reflection_fixture_shape(), review_fixture_shape()}) {
    const auto corpus = make_fixture(shape);
    auto scorer = fit_heuristic_scorer(corpus);
    for (const auto* split : {&corpus.train, &corpus.val, &corpus.test}) {
      for (const auto& s : *split) {
        double sum = 0.0;
        for (const auto& u : s.document.units) {
          const double v = scorer.score(u.text);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
          sum += v;
        }
        const double mean = sum / static_cast<double>(s.document.units.size());
        gap = std::max(gap, std::abs(mean - score_document(s.document, scorer)));
      }
    }
  }
  o.require(lo >= 1.0 && hi <= 4.0, "score range [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]");
  o.require(gap <= 1e-12, "document mean gap " + fmt("%.3g", gap));
  if (o.pass) o.detail = "document score 2.0, range [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "], gap " + fmt("%.2g", gap);
  return o;
}

// ---- Pipeline ------------------------------------------------------------

constexpr const char* kPipelineConfig =
    "model.width = 32\nmodel.encoder_layers = 2\nmodel.decoder_layers = 1\nmodel.ff_width = 64\n"
    "model.max_src_len = 96\nmodel.max_tgt_len = 24\n"
    "train.steps = 60\ntrain.pretrain_steps = 60\ntrain.finetune_steps = 60\ntrain.eval_interval = 20\n"
    "train.batch_size = 4\ntrain.learning_rate = 0.002\nsynth.n = 10\ncurriculum.buckets = 4\nmix.layer = 1\n";

Outcome pipeline_regimes() {
  Outcome o;
  const auto corpus = make_fixture(small_fixture_shape());
  std::vector<EvalReport> reports;
  std::map<std::string, double> test_mean;
  for (auto regime : kAllRegimes) {
    std::istringstream in(std::string("regime = ") + std::string(to_string(regime)) + "\n" + kPipelineConfig);
    const auto cfg = RegimeConfig::from_map(ConfigMap::parse(in));
    const auto result = run_regime(corpus, cfg);
    const auto name = std::string(to_string(regime));
    const auto violations = provenance_violations(result.provenance, corpus);
    o.require(violations.empty(), name + ": " + (violations.empty() ? "" : violations.front()));
    o.require(!result.provenance.empty(), name + ": no provenance");
    std::size_t synthetic = 0;
    for (const auto& rec : result.provenance) {
      for (const auto& item : rec.items) synthetic += item.origin != Origin::kOriginal;
    }
    const bool wants_synth = regime != Regime::kOriginal && regime != Regime::kCurriculum && regime != Regime::kMixgen;
    o.require(wants_synth == (synthetic > 0), name + ": synthetic items " + std::to_string(synthetic));
    const auto* test = result.report.find("test");
    o.require(test != nullptr, name + ": no test split in report");
    if (test != nullptr) test_mean[name] = test->mean();
    reports.push_back(result.report);
  }
  const auto table = render_table(reports);
  for (const char* needle : {"Pretraining", "Finetuning", "R1", "R2", "RL", "No Pretraining",
                             "With synthetic data pretraining", "None", "Original", "shuff.", "shuff.+mask",
                             "Cur.(S)", "Mix(n=3)", "Synth.(n=10)"}) {
    o.require(table.find(needle) != std::string::npos, std::string("table lacks '") + needle + "'");
  }
  const auto header = table.find("Pretraining");
  o.require(header != std::string::npos && table.find("Finetuning", header) < table.find("R1", header) &&
                table.find("R1", header) < table.find("R2", header) && table.find("R2", header) < table.find("RL", header),
            "column order");
  std::printf("%s", table.c_str());
  std::printf("note: test mean original %.4f, pretrain_paraphrase_then_finetune %.4f\n", test_mean["original"],
              test_mean["pretrain_paraphrase_then_finetune"]);
  if (o.pass) o.detail = "7 regimes, table sections present, no provenance leaks";
  return o;
}

HistoryEntry history(std::size_t step, double mean) {
  HistoryEntry e;
  e.step = step;
  e.validation = aggregate("val", {{"v", mean, mean, mean}});
  e.checkpoint.step = step;
  return e;
}

Outcome checkpoint_selection() {
  Outcome o;
  const std::vector<HistoryEntry> run{history(100, 0.2), history(200, 0.5), history(300, 0.3)};
  const auto& pick = select_checkpoint(run);
  o.require(pick.step == 200 && pick.validation.mean() == 0.5, "picked step " + std::to_string(pick.step));
  const std::vector<HistoryEntry> tied{history(100, 0.4), history(200, 0.4)};
  const auto& tie = select_checkpoint(tied);
  o.require(tie.step == 100, "tie picked step " + std::to_string(tie.step));
  if (o.pass) o.detail = "0.5 at step 200, tie -> step 100";
  return o;
}

// ---- Provider (secondary side) -------------------------------------------

Outcome provider_conformance() {
  Outcome o;
  ProviderProcess proc(FAKE_PROVIDER);
  for (int i = 0; i < 100; ++i) {
    const auto id = "q" + std::to_string(i);
    if (i % 2 == 0) {
      const auto p = proc.paraphrase(id, "text " + id, 2);
      o.require(p.size() == 2 && p[0] == "text " + id + " [p1]", id + ": paraphrase mismatch");
    } else {
      const double s = proc.score(id, "one two");
      o.require(s == 1.3, id + ": score " + fmt("%.4f", s));
    }
  }
  const auto corpus = make_fixture(small_fixture_shape());
  ExternalParaphraser provider(proc);
  SynthConfig cfg;
  cfg.count_per_sample = 3;
  const auto out = synthesize(corpus.train, SynthMethod::kParaphrase, cfg, &provider);
  std::map<std::string, int> per;
  for (const auto& s : out) per[s.id().substr(0, s.id().find('#'))] += s.origin == Origin::kParaphrase;
  o.require(per.size() == corpus.train.size(), "originals covered " + std::to_string(per.size()));
  for (const auto& [id, n] : per) o.require(n == 3, id + ": " + std::to_string(n) + " paraphrases");
  if (o.pass) o.detail = "100 requests in order, 3 paraphrases per original";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> primary{
      {"ROUGE oracle equivalence", 10, rouge_oracle},
      {"Worked ROUGE values", 0, rouge_worked},
      {"MixGen distribution fuzz", 5, mixgen_fuzz},
      {"Teacher sampling frequency", 0, teacher_frequency},
      {"KL loss", 120, kl_loss_checks},
      {"Encoder compositionality", 0, compositionality},
      {"Overfit smoke", 600, overfit_smoke},
      {"Synthesis counts and statistics", 0, synthesis_counts},
      {"Curriculum", 0, curriculum_checks},
      {"Specificity", 0, specificity_checks},
      {"Pipeline regimes", 0, pipeline_regimes},
      {"Checkpoint selection", 0, checkpoint_selection},
  };
  const std::vector<Criterion> secondary{{"Provider conformance (secondary)", 0, provider_conformance}};

  int failures = 0;
  auto run = [&](const Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.pass && c.budget_seconds > 0 && secs >= c.budget_seconds) {
      outcome.pass = false;
      outcome.detail = "took " + fmt("%.1f", secs) + " s, limit " + fmt("%.0f", c.budget_seconds) + " s";
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("%s  %s  (%s; %.2f s)\n", outcome.pass ? "PASS" : "FAIL", c.name.c_str(), outcome.detail.c_str(),
                secs);
    std::fflush(stdout);
  };
  for (const auto& c : primary) run(c);
  for (const auto& c : secondary) run(c);
  return failures == 0 ? 0 : 1;
}
