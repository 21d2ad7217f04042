// Copyright 2026 The QSteer Authors.
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

// qsteer CLI: train / sweep / attack / evaluate / fidelity-curve /
// fetch-data. Every run writes its config snapshot next to its outputs so
// any record can be replayed. Exit codes: 0 ok, 2 config error, 3 data
// error, 4 numerical failure.

#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsteer/errors.hpp"
#include "qsteer/experiment.hpp"
#include "qsteer/fetch.hpp"
#include "qsteer/kernels.hpp"
#include "qsteer/steering.hpp"

namespace {

using namespace qsteer;

struct GlobalArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  int threads = 0;  // 0 = hardware concurrency
};

ExperimentConfig load_config(const GlobalArgs& g) {
  if (g.config_path.empty()) throw ConfigError("--config is required");
  ExperimentConfig cfg = ExperimentConfig::from_json_file(g.config_path);
  if (g.seed) {
    cfg.seed = *g.seed;
    cfg.train.seed = *g.seed;
  }
  if (!g.out_dir.empty()) {
    if (cfg.params_path == cfg.out_dir + "/params.json")
      cfg.params_path = g.out_dir + "/params.json";
    cfg.out_dir = g.out_dir;
  }
  if (g.threads > 0) cfg.threads = g.threads;
  if (cfg.threads == 0)
    cfg.threads = static_cast<int>(std::thread::hardware_concurrency());
  cfg.train.threads = cfg.threads;
  std::filesystem::create_directories(cfg.out_dir);
  write_text_file(cfg.out_dir + "/config_snapshot.json", cfg.to_json());
  return cfg;
}

ParamSet load_params(const ExperimentConfig& cfg) {
  const auto [spec, params] =
      ParamSet::from_json(read_text_file(cfg.params_path));
  if (to_string(spec.kind) != to_string(cfg.model.kind))
    throw ConfigError("params file was trained for model " +
                      to_string(spec.kind));
  return params;
}

int cmd_train(const GlobalArgs& g) {
  const ExperimentConfig cfg = load_config(g);
  const PreparedData data = prepare_data(cfg);
  std::cout << "training " << to_string(cfg.model.kind) << " on "
            << cfg.data.dataset << " (" << data.train_set.size() << " train / "
            << data.test_set.size() << " test)\n";
  const TrainResult result =
      train(cfg.model, data.train_set, data.test_set, cfg.train);
  write_text_file(cfg.params_path, result.params.to_json(cfg.model));
  emit_train_csv(result.curve, cfg.out_dir + "/curve.csv");
  write_provenance(data.train_set, cfg.out_dir + "/train_provenance.json");
  for (const auto& e : result.curve)
    std::cout << "epoch " << e.epoch << "  loss " << e.loss << "  train "
              << e.train_acc << "  test " << e.test_acc << "\n";
  return 0;
}

int cmd_sweep(const GlobalArgs& g) {
  const ExperimentConfig cfg = load_config(g);
  const PreparedData data = prepare_data(cfg);
  const ParamSet params = load_params(cfg);
  const DefenseMode defense = cfg.encoder.defense == DefenseMode::none
                                  ? DefenseMode::multi_qubit_steer
                                  : cfg.encoder.defense;
  const SweepResult r =
      sweep_jn(cfg.model, params, data.sweep_set, defense,
               cfg.sweep.strengths, cfg.sweep.rounds, cfg.sweep.budget,
               cfg.threads);
  emit_sweep_csv(r, cfg.out_dir + "/sweep.csv");

  nlohmann::json sel = nlohmann::json::array();
  for (const auto& s : r.selected)
    sel.push_back({{"strength", s.strength}, {"rounds", s.rounds}});
  write_text_file(
      cfg.out_dir + "/selection.json",
      nlohmann::json{{"undefended_acc", r.undefended_acc},
                     {"budget", cfg.sweep.budget},
                     {"subset_size", data.sweep_set.size()},
                     {"selected", sel}}
          .dump(2));
  if (r.selected.empty()) {
    std::cout << "no (J,N) pair within budget\n";
  } else {
    for (const auto& s : r.selected)
      std::cout << "selected J=" << s.strength << " N=" << s.rounds << "\n";
  }
  return 0;
}

int cmd_attack(const GlobalArgs& g) {
  const ExperimentConfig cfg = load_config(g);
  if (cfg.attacks.empty()) throw ConfigError("config lists no attacks");
  const PreparedData data = prepare_data(cfg);
  const ParamSet params = load_params(cfg);
  const std::uint64_t mhash = params_hash(cfg.model, params);
  for (std::size_t i = 0; i < cfg.attacks.size(); ++i) {
    for (double eps : cfg.attack_epsilons[i]) {
      AttackSpec a = cfg.attacks[i];
      a.epsilon = eps;
      const ImageSet adv = attack_set(cfg.model, params, data.eval_set, a,
                                      cfg.input_grad_method, cfg.threads);
      const std::string prefix =
          adv_set_prefix(cfg.out_dir, a.kind, a.epsilon);
      save_adversarial_set(adv, a, mhash, cfg.seed, prefix);
      std::cout << "wrote " << prefix << ".bin (" << adv.size()
                << " samples)\n";
    }
  }
  return 0;
}

int cmd_evaluate(const GlobalArgs& g, const std::string& selection_path) {
  ExperimentConfig cfg = load_config(g);
  if (!selection_path.empty()) {
    const auto sel = nlohmann::json::parse(read_text_file(selection_path));
    const auto& arr = sel.at("selected");
    if (arr.empty()) throw ConfigError("selection file has no admitted pair");
    cfg.encoder.strength = arr.at(0).at("strength").get<double>();
    cfg.encoder.rounds = arr.at(0).at("rounds").get<int>();
    if (cfg.encoder.defense == DefenseMode::none)
      cfg.encoder.defense = DefenseMode::multi_qubit_steer;
    write_text_file(cfg.out_dir + "/config_snapshot.json", cfg.to_json());
  }
  const PreparedData data = prepare_data(cfg);
  const ParamSet params = load_params(cfg);

  std::vector<std::pair<AttackSpec, ImageSet>> adv_sets;
  for (std::size_t i = 0; i < cfg.attacks.size(); ++i)
    for (double eps : cfg.attack_epsilons[i]) {
      AttackSpec a = cfg.attacks[i];
      a.epsilon = eps;
      adv_sets.emplace_back(
          a, load_adversarial_set(
                 adv_set_prefix(cfg.out_dir, a.kind, a.epsilon)));
    }

  std::vector<PredictionRow> rows;
  const RunRecord rec = evaluate_defense(cfg, params, data, adv_sets, &rows);
  write_text_file(cfg.out_dir + "/runrecord.json", rec.to_json());
  emit_predictions_csv(rows, cfg.out_dir + "/predictions.csv");
  emit_curve_csv(rec.adversarial, cfg.out_dir + "/curve_adv.csv");
  std::cout << rec.to_json() << "\n";
  return 0;
}

int cmd_fidelity_curve(const GlobalArgs& g) {
  const ExperimentConfig cfg = load_config(g);
  std::vector<double> js = cfg.sweep.strengths;
  std::vector<int> ns = cfg.sweep.rounds;
  if (js.empty())
    js = {M_PI / 16, M_PI / 10, M_PI / 4, M_PI / 2};
  if (ns.empty())
    for (int n = 0; n <= 50; ++n) ns.push_back(n);
  emit_fidelity_csv(js, ns, 0.0, cfg.out_dir + "/fidelity.csv");
  std::cout << "wrote " << cfg.out_dir << "/fidelity.csv\n";
  return 0;
}

int cmd_fetch(const std::string& dataset, const std::string& dest) {
  fetch_dataset(dataset, dest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qsteer: steering-based encoding defense experiments for small "
      "quantum classifiers"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "JSON experiment config")
      ->envname("QSTEER_CONFIG");
  std::uint64_t seed_opt = 0;
  auto* seed_flag =
      app.add_option("--seed", seed_opt, "override the config root seed");
  app.add_option("--out", g.out_dir, "override the config output directory");
  app.add_option("--threads", g.threads,
                 "worker threads (0 = hardware concurrency)");

  auto* c_train = app.add_subcommand("train", "train a model");
  auto* c_sweep =
      app.add_subcommand("sweep", "clean-accuracy sweep over the (J,N) grid");
  auto* c_attack =
      app.add_subcommand("attack", "generate adversarial sets (white-box)");
  auto* c_eval = app.add_subcommand(
      "evaluate", "clean/adversarial accuracy with and without the defense");
  std::string selection_path;
  c_eval->add_option("--selection", selection_path,
                     "selection.json from `sweep`; overrides encoder (J,N)");
  auto* c_fid = app.add_subcommand("fidelity-curve",
                                   "closed-form steering fidelity table");
  auto* c_fetch = app.add_subcommand(
      "fetch-data", "download a dataset in IDX format and verify sizes");
  std::string fetch_dataset_name = "mnist", fetch_dest = "data";
  c_fetch->add_option("--dataset", fetch_dataset_name,
                      "mnist | fashion-mnist | kmnist");
  c_fetch->add_option("--dest", fetch_dest, "destination data directory");

  CLI11_PARSE(app, argc, argv);
  if (seed_flag->count() > 0) g.seed = seed_opt;

  try {
    if (c_train->parsed()) return cmd_train(g);
    if (c_sweep->parsed()) return cmd_sweep(g);
    if (c_attack->parsed()) return cmd_attack(g);
    if (c_eval->parsed()) return cmd_evaluate(g, selection_path);
    if (c_fid->parsed()) return cmd_fidelity_curve(g);
    if (c_fetch->parsed()) return cmd_fetch(fetch_dataset_name, fetch_dest);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
