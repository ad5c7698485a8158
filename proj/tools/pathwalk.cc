// Copyright 2026 The PathWalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pathwalk: build term graphs, train and evaluate walk-of-words classifiers,
// and run noise and K sweeps. See README.md for the command reference.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathwalk/config.h"
#include "pathwalk/corpus.h"
#include "pathwalk/graph_io.h"
#include "pathwalk/nn/checkpoint.h"
#include "pathwalk/nn/trainer.h"
#include "pathwalk/robustness.h"
#include "pathwalk/simd/kernels.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace pathwalk;

namespace {

// Raw flag values; strings are parsed after CLI11 so errors use our taxonomy.
struct Flags {
  ExperimentConfig cfg;
  std::string variant = "pw1";
  std::string adv_mode = "none";
  std::string tokenizer = "whitespace";
  std::string topology_mode = "simplex";
  std::string placement = "append";
  std::string pool = "sequence";
  std::optional<std::size_t> len;
  double lr = 1e-3;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw DataError(path.string() + ": write failed");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError(dir.string() + ": cannot create output directory: " + ec.message());
}

std::size_t env_threads() {
  const char* raw = std::getenv("PATHWALK_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  try {
    std::size_t used = 0;
    const long v = std::stol(raw, &used);
    if (used != std::string(raw).size() || v < 1) throw std::invalid_argument("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("PATHWALK_THREADS must be a positive integer, got '") + raw + "'");
  }
}

void add_data_flags(CLI::App* app, Flags& f, bool train, bool test, bool graph) {
  if (train) app->add_option("--train", f.cfg.train_path, "Training split (label<TAB>text)");
  if (test) app->add_option("--test", f.cfg.test_path, "Test split (label<TAB>text)");
  if (graph) app->add_option("--graph", f.cfg.graph_path, "Term graph file from build-graph");
}

void add_model_flags(CLI::App* app, Flags& f) {
  auto& t = f.cfg.train;
  app->add_option("--variant", f.variant, "node-only | pw1 | pw2 | pw3");
  app->add_option("--K", t.k, "Topology samples per position (pw2/pw3)");
  app->add_option("--topology-mode", f.topology_mode, "simplex | inedge");
  app->add_option("--dim", t.dim, "Embedding width d");
  app->add_option("--hidden", t.hidden, "LSTM hidden width h");
  app->add_option("--len", f.len, "Fixed sentence length l (default 10 for char, 20 for whitespace)");
  app->add_option("--batch", t.batch, "Mini-batch size");
  app->add_option("--epochs", t.epochs, "Training epochs");
  app->add_option("--l2", t.l2, "L2 coefficient lambda");
  app->add_option("--lr", f.lr, "Adam learning rate");
  app->add_option("--epsilon", t.epsilon, "Adversarial noise weight");
  app->add_option("--adv-mode", f.adv_mode, "none | edge1 | edge4 | edgenode4");
  app->add_option("--pool", f.pool, "sequence | sum");
  app->add_option("--tokenizer", f.tokenizer, "char | whitespace");
  app->add_option("--seed", t.seed, "Master seed");
}

void resolve(Flags& f) {
  auto& c = f.cfg;
  c.tokenizer = parse_tokenizer_mode(f.tokenizer);
  c.train.variant = parse_variant(f.variant);
  c.train.adversarial = parse_adversarial_mode(f.adv_mode);
  c.train.topology_mode = parse_topology_mode(f.topology_mode);
  c.train.pool = parse_pool_mode(f.pool);
  c.placement = parse_placement(f.placement);
  c.train.adam.learning_rate = f.lr;
  c.train.max_len = f.len.value_or(default_length(c.tokenizer));
  c.train.threads = env_threads();
}

void check(const ExperimentConfig& c) {
  const auto errors = validate(c);
  if (errors.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& e : errors) msg += "\n  - " + e;
  throw UsageError(msg);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

// The output directory is left out so reruns elsewhere produce identical files.
ordered_json echo(const ExperimentConfig& c) {
  ordered_json j = to_json(c);
  j.erase("out");
  return j;
}

GraphBundle graph_for(const ExperimentConfig& c, std::vector<LabeledSentence>& train_records) {
  if (!c.graph_path.empty()) {
    GraphBundle bundle = load_graph(c.graph_path);
    if (bundle.tokenizer != c.tokenizer) {
      throw UsageError("--tokenizer " + std::string(to_string(c.tokenizer)) + " does not match the graph's tokenizer " +
                       std::string(to_string(bundle.tokenizer)));
    }
    return bundle;
  }
  TrainingCorpus corpus = build_training_corpus(train_records);
  return build_graph_bundle(corpus, c.tokenizer);
}

ordered_json stats_json(const TermGraph& graph) {
  const GraphStats s = graph.stats();
  ordered_json hist = ordered_json::object();
  for (const auto& [deg, count] : s.in_degree_histogram) hist[std::to_string(deg)] = count;
  // "nodes" counts vocabulary tokens; node 0 is the reserved UNK placeholder.
  return {{"nodes", s.node_count - 1}, {"edges", s.edge_count}, {"in_degree_histogram", hist}};
}

int cmd_build_graph(Flags& f) {
  resolve(f);
  require(f.cfg.train_path, "--train");
  require(f.cfg.out_path, "--out");
  const auto t0 = std::chrono::steady_clock::now();
  const TrainingCorpus corpus = load_dataset(f.cfg.train_path, f.cfg.tokenizer);
  const GraphBundle bundle = build_graph_bundle(corpus, f.cfg.tokenizer);
  ordered_json doc = ordered_json::parse(graph_to_json(bundle));
  doc["build_config"] = {{"tokenizer", std::string(to_string(f.cfg.tokenizer))}, {"train", f.cfg.train_path}};
  write_text(f.cfg.out_path, doc.dump() + "\n");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto s = stats_json(bundle.graph);
  std::cout << "nodes=" << s["nodes"].get<std::size_t>() << " edges=" << s["edges"].get<std::size_t>()
            << " seconds=" << std::fixed << std::setprecision(3) << secs << "\n";
  return kExitOk;
}

int cmd_stats(Flags& f) {
  resolve(f);
  if (f.cfg.graph_path.empty() && f.cfg.train_path.empty()) throw UsageError("stats needs --graph or --train");
  TermGraph graph;
  if (!f.cfg.graph_path.empty()) {
    graph = load_graph(f.cfg.graph_path).graph;
  } else {
    graph = build_graph_bundle(load_dataset(f.cfg.train_path, f.cfg.tokenizer), f.cfg.tokenizer).graph;
  }
  const std::string text = stats_json(graph).dump(2) + "\n";
  if (!f.cfg.out_path.empty()) write_text(f.cfg.out_path, text);
  std::cout << text;
  return kExitOk;
}

struct LoadedData {
  GraphBundle bundle;
  std::vector<EncodedSentence> train;
  std::vector<EncodedSentence> test;
};

LoadedData load_train_test(const ExperimentConfig& c) {
  require(c.train_path, "--train");
  require(c.test_path, "--test");
  auto records = read_tsv(fs::path(c.train_path), c.tokenizer);
  LoadedData data{graph_for(c, records), {}, {}};
  std::size_t classes = 0;
  for (const auto& r : records) classes = std::max<std::size_t>(classes, static_cast<std::size_t>(r.label) + 1);
  data.bundle.num_classes = classes;
  data.train = encode_split(records, data.bundle.vocab, classes);
  data.test = load_dataset(c.test_path, c.tokenizer, data.bundle.vocab, classes);
  return data;
}

ordered_json report_json(const nn::TrainReport& r, const ordered_json& config) {
  ordered_json epochs = ordered_json::array();
  for (const auto& e : r.epochs) {
    ordered_json row{{"epoch", e.epoch}};
    row["train_loss"] = e.train_loss ? ordered_json(*e.train_loss) : ordered_json(nullptr);
    row["test_accuracy"] = e.test_accuracy;
    epochs.push_back(row);
  }
  return {{"config", config},
          {"final_accuracy", r.final_accuracy},
          {"train_accuracy", r.train_accuracy},
          {"epochs", epochs}};
}

int cmd_train(Flags& f) {
  resolve(f);
  require(f.cfg.out_path, "--out");
  check(f.cfg);
  const LoadedData data = load_train_test(f.cfg);
  const fs::path out = f.cfg.out_path;
  ensure_dir(out);
  const ordered_json config = echo(f.cfg);

  std::ofstream log(out / "epochs.jsonl", std::ios::binary | std::ios::trunc);
  if (!log) throw DataError((out / "epochs.jsonl").string() + ": cannot open for writing");
  auto on_epoch = [&](const nn::EpochRecord& e) {
    ordered_json row{{"epoch", e.epoch}};
    row["train_loss"] = e.train_loss ? ordered_json(*e.train_loss) : ordered_json(nullptr);
    row["test_accuracy"] = e.test_accuracy;
    log << row.dump() << "\n" << std::flush;
  };
  const auto& t = f.cfg.train;
  const nn::TrainResult result =
      t.adversarial == AdversarialMode::kNone
          ? nn::train(t, data.bundle.graph, data.train, data.test, data.bundle.num_classes, on_epoch)
          : adversarial_train(t, data.bundle.graph, data.train, data.test, data.bundle.num_classes, on_epoch);

  nn::save_checkpoint(out / "checkpoint.bin", result.model, config);
  write_text(out / "report.json", report_json(result.report, config).dump(2) + "\n");
  write_text(out / "timing.json", ordered_json{{"wall_seconds", result.report.wall_seconds},
                                               {"threads", t.threads},
                                               {"simd", std::string(simd::to_string(simd::active_isa()))}}
                                          .dump(2) +
                                      "\n");
  std::cout << "final_accuracy=" << fmt(result.report.final_accuracy)
            << " train_accuracy=" << fmt(result.report.train_accuracy) << "\n";
  return kExitOk;
}

// Shared by eval and perturb: checkpoint + graph + test split -> noise curve.
int run_curve(Flags& f, const char* stem, std::size_t noise_min, std::size_t noise_max) {
  const ExperimentConfig& c = f.cfg;
  require(c.checkpoint_path, "--checkpoint");
  require(c.graph_path, "--graph");
  require(c.test_path, "--test");
  require(c.out_path, "--out");
  const nn::TrainedModel model = nn::load_checkpoint(c.checkpoint_path);
  const GraphBundle bundle = load_graph(c.graph_path);
  nn::check_compatible(model, bundle.graph);
  const auto test = load_dataset(c.test_path, bundle.tokenizer, bundle.vocab, model.num_classes);
  const RobustnessCurve curve = robustness_sweep(model, bundle.graph, test, bundle.vocab.size(), noise_min, noise_max,
                                                 c.trials, c.train.seed);

  const fs::path out = c.out_path;
  ensure_dir(out);
  std::string csv = "noise_count,mean_accuracy,std,trials\n";
  ordered_json rows = ordered_json::array();
  for (const auto& p : curve.points) {
    csv += std::to_string(p.noise_count) + "," + fmt(p.mean_accuracy) + "," + fmt(p.std_accuracy) + "," +
           std::to_string(p.trials) + "\n";
    rows.push_back({{"noise_count", p.noise_count},
                    {"mean_accuracy", p.mean_accuracy},
                    {"std", p.std_accuracy},
                    {"trials", p.trials},
                    {"accuracies", p.accuracies},
                    {"truncated_sentences", p.truncated_sentences}});
  }
  ordered_json echo_cfg = echo(c);
  echo_cfg["model_config"] = to_json(model.config);
  write_text(out / (std::string(stem) + ".csv"), csv);
  write_text(out / (std::string(stem) + ".json"), ordered_json{{"config", echo_cfg}, {"curve", rows}}.dump(2) + "\n");
  std::cout << csv;
  return kExitOk;
}

int cmd_eval(Flags& f) {
  resolve(f);
  f.cfg.trials = 1;
  check(f.cfg);
  return run_curve(f, "eval", 0, 0);
}

int cmd_perturb(Flags& f) {
  resolve(f);
  check(f.cfg);
  return run_curve(f, "perturb", f.cfg.noise_min, f.cfg.noise_max);
}

int cmd_sweep_k(Flags& f) {
  resolve(f);
  require(f.cfg.out_path, "--out");
  if (!needs_topology(f.cfg.train.variant)) throw UsageError("sweep-k needs --variant pw2 or pw3");
  if (f.cfg.k_list.empty()) throw UsageError("--K-list is required");
  check(f.cfg);
  const LoadedData data = load_train_test(f.cfg);
  const fs::path out = f.cfg.out_path;
  ensure_dir(out);
  std::string csv = "K,accuracy\n";
  ordered_json rows = ordered_json::array();
  for (std::size_t k : f.cfg.k_list) {
    nn::TrainConfig t = f.cfg.train;
    t.k = k;
    const auto result = nn::train(t, data.bundle.graph, data.train, data.test, data.bundle.num_classes);
    csv += std::to_string(k) + "," + fmt(result.report.final_accuracy) + "\n";
    rows.push_back({{"K", k}, {"accuracy", result.report.final_accuracy}});
  }
  write_text(out / "sweep_k.csv", csv);
  write_text(out / "sweep_k.json", ordered_json{{"config", echo(f.cfg)}, {"results", rows}}.dump(2) + "\n");
  std::cout << csv;
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"pathwalk: walk-of-words short-text classification"};
  app.require_subcommand(1);
  Flags f;
  int (*selected)(Flags&) = nullptr;

  auto* build = app.add_subcommand("build-graph", "Build the directed term graph of a training split");
  add_data_flags(build, f, true, false, false);
  build->add_option("--tokenizer", f.tokenizer, "char | whitespace");
  build->add_option("--out", f.cfg.out_path, "Graph file to write");
  build->callback([&] { selected = cmd_build_graph; });

  auto* stats = app.add_subcommand("stats", "Print node, edge and in-degree statistics");
  add_data_flags(stats, f, true, false, true);
  stats->add_option("--tokenizer", f.tokenizer, "char | whitespace");
  stats->add_option("--out", f.cfg.out_path, "Optional JSON file");
  stats->callback([&] { selected = cmd_stats; });

  auto* train = app.add_subcommand("train", "Train a model; writes checkpoint, epoch log and report");
  add_data_flags(train, f, true, true, true);
  add_model_flags(train, f);
  train->add_option("--out", f.cfg.out_path, "Output directory");
  train->callback([&] { selected = cmd_train; });

  auto* eval = app.add_subcommand("eval", "Clean test accuracy of a checkpoint");
  add_data_flags(eval, f, false, true, true);
  eval->add_option("--checkpoint", f.cfg.checkpoint_path, "Checkpoint from train");
  eval->add_option("--seed", f.cfg.train.seed, "Seed for noise streams");
  eval->add_option("--out", f.cfg.out_path, "Output directory");
  eval->callback([&] { selected = cmd_eval; });

  auto* perturb = app.add_subcommand("perturb", "Accuracy under appended noise words");
  add_data_flags(perturb, f, false, true, true);
  perturb->add_option("--checkpoint", f.cfg.checkpoint_path, "Checkpoint from train");
  perturb->add_option("--noise-min", f.cfg.noise_min, "Smallest noise count");
  perturb->add_option("--noise-max", f.cfg.noise_max, "Largest noise count");
  perturb->add_option("--trials", f.cfg.trials, "Repetitions per noise count");
  perturb->add_option("--placement", f.placement, "append");
  perturb->add_option("--seed", f.cfg.train.seed, "Seed for noise streams");
  perturb->add_option("--out", f.cfg.out_path, "Output directory");
  perturb->callback([&] { selected = cmd_perturb; });

  auto* sweep = app.add_subcommand("sweep-k", "Train once per K and report test accuracy");
  add_data_flags(sweep, f, true, true, true);
  add_model_flags(sweep, f);
  sweep->add_option("--K-list", f.cfg.k_list, "K values")->delimiter(',');
  sweep->add_option("--out", f.cfg.out_path, "Output directory");
  sweep->callback([&] { selected = cmd_sweep_k; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return selected(f);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
