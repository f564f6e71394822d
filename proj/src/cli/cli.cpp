// Copyright 2026 The agvplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "agv/cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "agv/envsim/dataset.hpp"
#include "agv/envsim/oracle.hpp"
#include "agv/evalstats/benchmark.hpp"
#include "agv/evalstats/report_io.hpp"
#include "agv/nn/model_io.hpp"
#include "agv/nn/train.hpp"
#include "agv/planner/flow_model.hpp"
#include "agv/planner/plan_io.hpp"
#include "agv/planner/search.hpp"
#include "agv/terrain/generator.hpp"
#include "agv/terrain/graph_io.hpp"
#include "json.hpp"

namespace agv::cli {
namespace {

// Thrown for failures that map onto a specific exit code.
class CommandError : public std::runtime_error {
 public:
  CommandError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(kIoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CommandError(kIoError, "cannot write '" + path + "'");
  f << text;
  f.close();
  if (!f) throw CommandError(kIoError, "failed writing '" + path + "'");
}

terrain::TerrainGraph load_graph_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return terrain::load_graph(text);
  } catch (const terrain::GraphError& e) {
    throw CommandError(kIoError, path + ": " + e.what());
  }
}

nn::MlpParams load_model_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return nn::load_model(text);
  } catch (const nn::ModelError& e) {
    throw CommandError(kIoError, path + ": " + e.what());
  }
}

std::vector<envsim::Sample> load_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CommandError(kIoError, "cannot read '" + path + "'");
  try {
    return envsim::read_dataset_csv(in);
  } catch (const envsim::CsvError& e) {
    throw CommandError(kIoError, path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

std::string csv_text(const std::vector<envsim::Sample>& samples) {
  std::ostringstream buf;
  envsim::write_dataset_csv(buf, samples);
  return buf.str();
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> ids;
  if (text.empty()) return ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) ids.push_back(item);
  return ids;
}

// --- gen-graph --------------------------------------------------------------

struct GenGraphArgs {
  int nodes = 40;
  int k = 3;
  uint64_t seed = 1;
  std::string out = "graph.json";
};

void gen_graph(const GenGraphArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph = terrain::generate_graph(a.nodes, a.k, a.seed);
  write_output(a.out, terrain::serialize_graph(graph), out);
  err << "gen-graph: " << graph.node_count() << " nodes, " << graph.edge_count()
      << " edges -> " << a.out << "\n";
}

// --- gen-data ---------------------------------------------------------------

struct GenDataArgs {
  std::string graph;
  int missions = 500;
  uint64_t seed = 1;
  double val_split = 0.2;
  std::string out_train = "train.csv";
  std::string out_val = "val.csv";
};

void gen_data(const GenDataArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph = load_graph_file(a.graph);
  const auto data = envsim::build_dataset(graph, a.missions, a.seed, a.val_split);
  write_output(a.out_train, csv_text(data.train), out);
  write_output(a.out_val, csv_text(data.val), out);
  size_t positives = 0;
  for (const auto& s : data.train) positives += s.label;
  err << "gen-data: " << data.train.size() << " train / " << data.val.size()
      << " val samples (" << positives << " train positives, " << data.skipped_missions
      << " missions skipped)\n";
}

// --- train ------------------------------------------------------------------

struct TrainArgs {
  std::string train;
  std::string val;
  std::string out = "model.json";
  nn::TrainConfig cfg;
  bool logistic = false;
};

void train(TrainArgs a, std::ostream& out, std::ostream& err) {
  const auto train_set = load_csv_file(a.train);
  const auto val_set = load_csv_file(a.val);
  nn::TrainResult result;
  try {
    result = a.logistic ? nn::train_logistic(train_set, val_set, a.cfg)
                        : nn::train(train_set, val_set, a.cfg);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kIoError, std::string("training data rejected: ") + e.what());
  }
  write_output(a.out, nn::serialize_model(result.params), out);
  const double acc = nn::evaluate(result.params, val_set);
  err << "train: " << (a.logistic ? "logistic" : "mlp") << " stopped after "
      << result.history.stopping_epoch << " epochs (best " << result.history.best_epoch
      << "), val accuracy " << acc << "\n";
  if (a.out != "-") {
    nlohmann::ordered_json summary{{"kind", a.logistic ? "logistic" : "mlp"},
                                   {"val_accuracy", acc},
                                   {"epochs", result.history.stopping_epoch},
                                   {"best_epoch", result.history.best_epoch}};
    out << summary.dump() << "\n";
  }
}

// --- plan -------------------------------------------------------------------

struct PlanArgs {
  std::string graph;
  std::string model;
  std::string weather;
  std::string start;
  std::string dest;
  std::string mandatory;
  std::string solver = "pcmco";
  int capacity = 2;
  int64_t node_budget = 0;
  std::string out = "-";
};

void plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const bool pcmco = a.solver == "pcmco";
  std::optional<envsim::Weather> weather;
  if (!a.weather.empty()) {
    weather = envsim::parse_weather(a.weather);
    if (!weather) throw CommandError(kUsage, "--weather expects x1,x2,x3 integers in [0,10]");
  }
  if (pcmco && (a.model.empty() || !weather)) {
    throw CommandError(kUsage, "--solver pcmco needs --model and --weather");
  }
  const auto graph = load_graph_file(a.graph);
  std::vector<double> penalties;
  if (pcmco) penalties = nn::edge_preferences(load_model_file(a.model), graph, *weather);

  planner::SolverConfig cfg;
  cfg.capacity = a.capacity;
  if (a.node_budget > 0) cfg.node_budget = a.node_budget;
  cfg.mode = pcmco ? planner::SolverMode::kPcmco : planner::SolverMode::kPco;

  const terrain::Instance inst{a.start, a.dest, split_ids(a.mandatory)};
  std::optional<planner::Plan> result;
  try {
    const auto model = planner::build_model(graph, inst, penalties, cfg);
    result = planner::search(model, cfg);
  } catch (const planner::InvalidInstance& e) {
    std::string msg = "invalid instance";
    for (const auto& v : e.violations()) msg += "\n  " + v;
    throw CommandError(kInfeasible, msg);
  }
  if (!result) throw CommandError(kInfeasible, "no admissible plan exists for this instance");

  std::optional<int64_t> interventions;
  if (weather) interventions = evalstats::count_interventions(result->walk, graph, *weather);
  write_output(a.out, planner::serialize_plan(*result, graph, interventions), out);
  err << "plan: " << a.solver << " D=" << result->d_end_m() << " m, P=" << result->p_end_real()
      << ", " << result->nodes_explored << " nodes" << (result->optimal ? "" : " (budget hit)")
      << "\n";
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string graph;
  std::string model;
  int per_class = 50;
  uint64_t seed = 1;
  std::string out = "report.json";
  std::string csv;
  int threads = 0;
  int64_t node_budget = 200'000;
  int capacity = 2;
  int max_retries = 20;
};

void bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph = load_graph_file(a.graph);
  const auto params = load_model_file(a.model);
  evalstats::BenchmarkConfig cfg;
  cfg.per_class = a.per_class;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.node_budget = a.node_budget > 0 ? std::optional<int64_t>(a.node_budget) : std::nullopt;
  cfg.capacity = a.capacity;
  cfg.max_retries = a.max_retries;
  evalstats::Report report;
  try {
    report = evalstats::run_benchmark(graph, params, cfg,
                                      [&](const std::string& line) { err << "bench: " << line << "\n"; });
  } catch (const std::runtime_error& e) {
    throw CommandError(kInfeasible, e.what());
  }
  write_output(a.out, evalstats::report_to_json(report, graph), out);
  if (!a.csv.empty()) write_output(a.csv, evalstats::report_to_csv(report), out);
  err << evalstats::format_table(report);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Terrain route planning with learned autonomy preferences", "agvplan"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  GenGraphArgs gg;
  auto* c_gg = app.add_subcommand("gen-graph", "Generate a random terrain graph");
  c_gg->add_option("--nodes", gg.nodes, "Number of nodes")->check(CLI::Range(2, 100000));
  c_gg->add_option("--k", gg.k, "Nearest neighbours linked per node")->check(CLI::Range(1, 1000));
  c_gg->add_option("--seed", gg.seed, "Random seed");
  c_gg->add_option("--out", gg.out, "Output graph-JSON path ('-' for stdout)");

  GenDataArgs gd;
  auto* c_gd = app.add_subcommand("gen-data", "Simulate missions and write labelled CSVs");
  c_gd->add_option("--graph", gd.graph, "Input graph-JSON")->required();
  c_gd->add_option("--missions", gd.missions, "Number of simulated missions")
      ->check(CLI::Range(1, 10000000));
  c_gd->add_option("--seed", gd.seed, "Random seed");
  c_gd->add_option("--val-split", gd.val_split, "Validation fraction, in (0, 1)")
      ->check([](const std::string& s) -> std::string {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (...) {
          return "not a number";
        }
        return v > 0.0 && v < 1.0 ? "" : "must lie strictly between 0 and 1";
      });
  c_gd->add_option("--out-train", gd.out_train, "Training CSV path");
  c_gd->add_option("--out-val", gd.out_val, "Validation CSV path");

  TrainArgs tr;
  tr.cfg.seed = 1;
  auto* c_tr = app.add_subcommand("train", "Train the feasibility classifier");
  c_tr->add_option("--train", tr.train, "Training CSV")->required();
  c_tr->add_option("--val", tr.val, "Validation CSV")->required();
  c_tr->add_option("--out", tr.out, "Output model-JSON path");
  c_tr->add_option("--lr", tr.cfg.learning_rate, "Learning rate")
      ->check(CLI::NonNegativeNumber);
  c_tr->add_option("--momentum", tr.cfg.momentum, "Momentum in [0, 1)")
      ->check(CLI::Bound(0.0, 0.999999));
  c_tr->add_option("--batch", tr.cfg.batch_size, "Mini-batch size")->check(CLI::PositiveNumber);
  c_tr->add_option("--epochs", tr.cfg.max_epochs, "Maximum epochs")->check(CLI::PositiveNumber);
  c_tr->add_option("--patience", tr.cfg.patience, "Early-stopping patience (epochs)")
      ->check(CLI::NonNegativeNumber);
  c_tr->add_option("--seed", tr.cfg.seed, "Random seed");
  c_tr->add_flag("--logistic", tr.logistic, "Train the logistic-regression baseline instead");

  PlanArgs pl;
  auto* c_pl = app.add_subcommand("plan", "Plan one mission");
  c_pl->add_option("--graph", pl.graph, "Input graph-JSON")->required();
  c_pl->add_option("--model", pl.model, "Model-JSON (pcmco only)");
  c_pl->add_option("--weather", pl.weather, "Weather x1,x2,x3 (rain,fog,wind in 0..10)");
  c_pl->add_option("--start", pl.start, "Start node id")->required();
  c_pl->add_option("--dest", pl.dest, "Destination node id")->required();
  c_pl->add_option("--mandatory", pl.mandatory, "Comma-separated mandatory node ids");
  c_pl->add_option("--solver", pl.solver, "pco or pcmco")
      ->check(CLI::IsMember({"pco", "pcmco"}));
  c_pl->add_option("--capacity", pl.capacity, "Max passes per waypoint (N)")
      ->check(CLI::PositiveNumber);
  c_pl->add_option("--node-budget", pl.node_budget, "Search node budget, 0 = unlimited")
      ->check(CLI::NonNegativeNumber);
  c_pl->add_option("--out", pl.out, "Output plan-JSON path ('-' for stdout)");

  BenchArgs bn;
  auto* c_bn = app.add_subcommand("bench", "Benchmark PCO against NN+PCMCO");
  c_bn->add_option("--graph", bn.graph, "Input graph-JSON")->required();
  c_bn->add_option("--model", bn.model, "Model-JSON")->required();
  c_bn->add_option("--per-class", bn.per_class, "Instances per weather class (>= 2)")
      ->check(CLI::Range(2, 1000000));
  c_bn->add_option("--seed", bn.seed, "Random seed");
  c_bn->add_option("--out", bn.out, "Output report-JSON path ('-' for stdout)");
  c_bn->add_option("--csv", bn.csv, "Optional per-record CSV path");
  c_bn->add_option("--threads", bn.threads, "Worker threads, 0 = available parallelism")
      ->check(CLI::NonNegativeNumber);
  c_bn->add_option("--node-budget", bn.node_budget, "Search node budget per solve, 0 = unlimited")
      ->check(CLI::NonNegativeNumber);
  c_bn->add_option("--capacity", bn.capacity, "Max passes per waypoint (N)")
      ->check(CLI::PositiveNumber);
  c_bn->add_option("--max-retries", bn.max_retries, "Resampling attempts per infeasible instance")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c_gg->parsed()) gen_graph(gg, out, err);
    if (c_gd->parsed()) gen_data(gd, out, err);
    if (c_tr->parsed()) train(tr, out, err);
    if (c_pl->parsed()) plan(pl, out, err);
    if (c_bn->parsed()) bench(bn, out, err);
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace agv::cli
