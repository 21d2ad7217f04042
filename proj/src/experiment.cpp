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

#include "qsteer/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qsteer/errors.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/steering.hpp"

namespace qsteer {
namespace {

using nlohmann::json;

DefenseMode defense_from_string(const std::string& s) {
  if (s == "none") return DefenseMode::none;
  if (s == "single_qubit_steer") return DefenseMode::single_qubit_steer;
  if (s == "multi_qubit_steer") return DefenseMode::multi_qubit_steer;
  throw ConfigError("unknown defense mode: " + s);
}

std::string to_string(DefenseMode d) {
  switch (d) {
    case DefenseMode::none: return "none";
    case DefenseMode::single_qubit_steer: return "single_qubit_steer";
    case DefenseMode::multi_qubit_steer: return "multi_qubit_steer";
  }
  return "?";
}

std::string format_eps(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    ExperimentConfig cfg;
    cfg.version = j.value("version", 1);
    if (cfg.version != 1) throw ConfigError("unsupported config version");
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.threads = j.value("threads", 1);
    cfg.out_dir = j.value("out_dir", std::string("out"));

    if (j.contains("data")) {
      const auto& d = j.at("data");
      cfg.data.dir = d.value("dir", std::string("data"));
      cfg.data.dataset = d.value("dataset", std::string("mnist"));
      if (d.contains("binary_classes")) {
        const auto& b = d.at("binary_classes");
        cfg.data.binary_classes = {b.at(0).get<int>(), b.at(1).get<int>()};
      }
      cfg.data.train_size = d.value("train_size", std::size_t{500});
      cfg.data.test_size = d.value("test_size", std::size_t{200});
      cfg.data.eval_size = d.value("eval_size", std::size_t{200});
    }

    {
      const auto& m = j.at("model");
      const ModelKind kind =
          model_kind_from_string(m.at("kind").get<std::string>());
      const std::uint64_t mseed = m.value("seed", std::uint64_t{0});
      cfg.model = kind == ModelKind::qnn    ? ModelSpec::qnn(mseed)
                  : kind == ModelKind::qcnn ? ModelSpec::qcnn(mseed)
                                            : ModelSpec::vqc(mseed);
    }

    if (j.contains("train")) {
      const auto& t = j.at("train");
      cfg.train.lr = t.value("lr", 0.01);
      cfg.train.epochs = t.value("epochs", 15);
      cfg.train.batch_size = t.value("batch_size", 32);
      cfg.train.beta1 = t.value("beta1", 0.9);
      cfg.train.beta2 = t.value("beta2", 0.999);
      cfg.train.adam_eps = t.value("adam_eps", 1e-8);
    }
    cfg.train.seed = cfg.seed;
    cfg.train.threads = cfg.threads;

    if (j.contains("encoder")) {
      const auto& e = j.at("encoder");
      cfg.encoder.defense =
          defense_from_string(e.value("defense", std::string("none")));
      cfg.encoder.strength = e.value("strength", 0.0);
      cfg.encoder.rounds = e.value("rounds", 0);
    }

    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      cfg.sweep.strengths =
          s.value("strengths", std::vector<double>{});
      cfg.sweep.rounds = s.value("rounds", std::vector<int>{});
      cfg.sweep.budget = s.value("budget", 0.10);
      cfg.sweep.subset_size = s.value("subset_size", std::size_t{100});
    }

    if (j.contains("attacks")) {
      for (const auto& a : j.at("attacks")) {
        AttackSpec spec;
        spec.kind = attack_kind_from_string(a.at("kind").get<std::string>());
        spec.alpha = a.value("alpha", 0.02);
        spec.steps = a.value("steps", 20);
        cfg.attacks.push_back(spec);
        cfg.attack_epsilons.push_back(
            a.at("epsilons").get<std::vector<double>>());
      }
    }

    const std::string gm = j.value("input_grad", std::string("fd"));
    if (gm == "fd")
      cfg.input_grad_method = GradMethod::finite_difference;
    else if (gm == "adjoint")
      cfg.input_grad_method = GradMethod::adjoint;
    else
      throw ConfigError("input_grad must be \"fd\" or \"adjoint\"");

    cfg.params_path =
        j.value("params_path", cfg.out_dir + "/params.json");
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
}

std::string ExperimentConfig::to_json() const {
  json attacks_j = json::array();
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    attacks_j.push_back({{"kind", qsteer::to_string(attacks[i].kind)},
                         {"epsilons", attack_epsilons[i]},
                         {"alpha", attacks[i].alpha},
                         {"steps", attacks[i].steps}});
  }
  json j{
      {"version", version},
      {"seed", seed},
      {"threads", threads},
      {"out_dir", out_dir},
      {"data",
       {{"dir", data.dir},
        {"dataset", data.dataset},
        {"train_size", data.train_size},
        {"test_size", data.test_size},
        {"eval_size", data.eval_size}}},
      {"model",
       {{"kind", qsteer::to_string(model.kind)}, {"seed", model.seed}}},
      {"train",
       {{"lr", train.lr},
        {"epochs", train.epochs},
        {"batch_size", train.batch_size},
        {"beta1", train.beta1},
        {"beta2", train.beta2},
        {"adam_eps", train.adam_eps}}},
      {"encoder",
       {{"defense", qsteer::to_string(encoder.defense)},
        {"strength", encoder.strength},
        {"rounds", encoder.rounds}}},
      {"sweep",
       {{"strengths", sweep.strengths},
        {"rounds", sweep.rounds},
        {"budget", sweep.budget},
        {"subset_size", sweep.subset_size}}},
      {"attacks", attacks_j},
      {"input_grad",
       input_grad_method == GradMethod::adjoint ? "adjoint" : "fd"},
      {"params_path", params_path},
  };
  if (data.binary_classes)
    j["data"]["binary_classes"] = {data.binary_classes->first,
                                   data.binary_classes->second};
  return j.dump(2);
}

void ExperimentConfig::validate() const {
  model.validate();
  if (model.kind != ModelKind::qnn && !data.binary_classes)
    throw ConfigError("qcnn/vqc configs need data.binary_classes");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (encoder.defense != DefenseMode::none) defended_encoder();  // validates
  for (const auto& a : attacks) a.validate();
  if (attacks.size() != attack_epsilons.size())
    throw ConfigError("attacks/epsilons mismatch");
}

EncoderSpec ExperimentConfig::defended_encoder() const {
  if (encoder.defense == DefenseMode::none)
    return EncoderSpec::plain(model.encoding_kind());
  try {
    return EncoderSpec::steered(model.encoding_kind(), encoder.defense,
                                encoder.strength, encoder.rounds);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string ExperimentConfig::config_hash() const {
  const std::uint64_t h = fnv1a(to_json());
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

PreparedData prepare_data(const ExperimentConfig& cfg) {
  const std::string dir = resolve_data_dir(cfg.data.dir);
  ImageSet train_full, test_full;
  try {
    train_full = load_dataset_split(dir, cfg.data.dataset, true);
    test_full = load_dataset_split(dir, cfg.data.dataset, false);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }

  if (cfg.data.binary_classes) {
    train_full = filter_binary(train_full, cfg.data.binary_classes->first,
                               cfg.data.binary_classes->second);
    test_full = filter_binary(test_full, cfg.data.binary_classes->first,
                              cfg.data.binary_classes->second);
  }
  if (cfg.model.input_side() == 16) {
    train_full = downscale_16(train_full);
    test_full = downscale_16(test_full);
  }

  PreparedData out{
      subsample(train_full, std::min(cfg.data.train_size, train_full.size()),
                substream_seed(cfg.seed, "subsample-train")),
      subsample(test_full, std::min(cfg.data.test_size, test_full.size()),
                substream_seed(cfg.seed, "subsample-test")),
      subsample(test_full, std::min(cfg.data.eval_size, test_full.size()),
                substream_seed(cfg.seed, "subsample-eval")),
      subsample(test_full,
                std::min(cfg.sweep.subset_size, test_full.size()),
                substream_seed(cfg.seed, "subsample-sweep")),
  };
  return out;
}

SweepResult sweep_jn(const ModelSpec& spec, const ParamSet& params,
                     const ImageSet& subset, DefenseMode defense,
                     const std::vector<double>& strengths,
                     const std::vector<int>& rounds, double budget,
                     int threads) {
  if (strengths.empty() || rounds.empty())
    throw ConfigError("sweep_jn: empty (J, N) grid");
  SweepResult result;
  result.undefended_acc =
      accuracy(spec, params, subset,
               EncoderSpec::plain(spec.encoding_kind()), threads);
  const double floor = result.undefended_acc - budget;

  for (double j : strengths) {
    std::optional<SweepSelection> pick;
    std::vector<int> ns = rounds;
    std::sort(ns.begin(), ns.end());
    for (int n : ns) {
      const EncoderSpec enc =
          EncoderSpec::steered(spec.encoding_kind(), defense, j, n);
      SweepCell cell;
      cell.strength = j;
      cell.rounds = n;
      cell.defended_acc = accuracy(spec, params, subset, enc, threads);
      cell.admissible = cell.defended_acc >= floor;
      if (cell.admissible && !pick) pick = SweepSelection{j, n};
      result.cells.push_back(cell);
    }
    if (pick) result.selected.push_back(*pick);
  }
  return result;
}

RunRecord evaluate_defense(
    const ExperimentConfig& cfg, const ParamSet& params,
    const PreparedData& data,
    const std::vector<std::pair<AttackSpec, ImageSet>>& adversarial_sets,
    std::vector<PredictionRow>* rows) {
  const auto t0 = std::chrono::steady_clock::now();
  const EncoderSpec plain = EncoderSpec::plain(cfg.model.encoding_kind());
  const EncoderSpec defended = cfg.defended_encoder();

  auto eval_family = [&](const ImageSet& set, const EncoderSpec& enc,
                         const std::string& family) {
    std::vector<int> preds;
    const double acc =
        accuracy(cfg.model, params, set, enc, cfg.threads, &preds);
    if (rows)
      for (std::size_t i = 0; i < preds.size(); ++i)
        rows->push_back({family, i, set.labels[i], preds[i]});
    return acc;
  };

  RunRecord rec;
  rec.config_hash = cfg.config_hash();
  rec.model = to_string(cfg.model.kind);
  rec.dataset = cfg.data.dataset;
  rec.eval_size = data.eval_set.size();
  rec.strength = cfg.encoder.strength;
  rec.rounds = cfg.encoder.rounds;
  rec.clean_undefended =
      eval_family(data.eval_set, plain, "clean_undefended");
  rec.clean_defended =
      eval_family(data.eval_set, defended, "clean_defended");

  for (const auto& [attack, adv] : adversarial_sets) {
    if (adv.size() != data.eval_set.size())
      throw DataError("adversarial set size does not match the eval subset");
    AdvCell cell;
    cell.kind = to_string(attack.kind);
    cell.epsilon = attack.epsilon;
    const std::string tag =
        "adv_" + cell.kind + "_eps" + format_eps(cell.epsilon);
    cell.acc_undefended = eval_family(adv, plain, tag + "_undefended");
    cell.acc_defended = eval_family(adv, defended, tag + "_defended");
    rec.adversarial.push_back(cell);
  }

  rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rec;
}

std::string RunRecord::to_json() const {
  json adv = json::array();
  for (const auto& c : adversarial) {
    adv.push_back({{"kind", c.kind},
                   {"epsilon", c.epsilon},
                   {"acc_undefended", c.acc_undefended},
                   {"acc_defended", c.acc_defended},
                   {"gain_points",
                    100.0 * (c.acc_defended - c.acc_undefended)}});
  }
  json j{{"version", 1},
         {"config_hash", config_hash},
         {"model", model},
         {"dataset", dataset},
         {"eval_size", eval_size},
         {"strength", strength},
         {"rounds", rounds},
         {"clean",
          {{"undefended", clean_undefended},
           {"defended", clean_defended},
           {"drop_points", clean_drop_points()}}},
         {"adversarial", adv},
         {"wall_ms", wall_ms}};
  return j.dump(2);
}

RunRecord RunRecord::from_json(const std::string& text) {
  const json j = json::parse(text);
  RunRecord r;
  r.config_hash = j.at("config_hash").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.dataset = j.at("dataset").get<std::string>();
  r.eval_size = j.at("eval_size").get<std::size_t>();
  r.strength = j.at("strength").get<double>();
  r.rounds = j.at("rounds").get<int>();
  r.clean_undefended = j.at("clean").at("undefended").get<double>();
  r.clean_defended = j.at("clean").at("defended").get<double>();
  for (const auto& c : j.at("adversarial")) {
    r.adversarial.push_back({c.at("kind").get<std::string>(),
                             c.at("epsilon").get<double>(),
                             c.at("acc_undefended").get<double>(),
                             c.at("acc_defended").get<double>()});
  }
  r.wall_ms = j.at("wall_ms").get<long long>();
  return r;
}

bool RunRecord::same_results(const RunRecord& other) const {
  json a = json::parse(to_json());
  json b = json::parse(other.to_json());
  a.erase("wall_ms");
  b.erase("wall_ms");
  return a == b;
}

std::string adv_set_prefix(const std::string& out_dir, AttackKind kind,
                           double epsilon) {
  return out_dir + "/adv_" + to_string(kind) + "_eps" + format_eps(epsilon);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_sweep_csv(const SweepResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "J,N,clean_acc_defended,within_budget\r\n";
  for (const auto& c : r.cells)
    out << c.strength << "," << c.rounds << "," << c.defended_acc << ","
        << (c.admissible ? 1 : 0) << "\r\n";
}

void emit_curve_csv(const std::vector<AdvCell>& cells,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "attack,epsilon,defended,accuracy\r\n";
  for (const auto& c : cells) {
    out << c.kind << "," << c.epsilon << ",0," << c.acc_undefended << "\r\n";
    out << c.kind << "," << c.epsilon << ",1," << c.acc_defended << "\r\n";
  }
}

void emit_fidelity_csv(const std::vector<double>& strengths,
                       const std::vector<int>& rounds, double f0,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "J,N,F\r\n";
  for (double j : strengths)
    for (int n : rounds)
      out << j << "," << n << "," << fidelity_oracle(f0, j, n) << "\r\n";
}

void emit_train_csv(const std::vector<EpochStats>& curve,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "epoch,loss,train_acc,test_acc\r\n";
  for (const auto& e : curve)
    out << e.epoch << "," << e.loss << "," << e.train_acc << ","
        << e.test_acc << "\r\n";
}

void emit_predictions_csv(const std::vector<PredictionRow>& rows,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "family,index,label,prediction\r\n";
  for (const auto& r : rows)
    out << r.family << "," << r.index << "," << r.label << ","
        << r.prediction << "\r\n";
}

std::uint64_t params_hash(const ModelSpec& spec, const ParamSet& params) {
  return fnv1a(params.to_json(spec));
}

}  // namespace qsteer
