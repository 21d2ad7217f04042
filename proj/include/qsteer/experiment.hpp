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

/// \file
/// Experiment orchestration: config parsing, the (J, N) sweep under the
/// clean-accuracy budget, attack/defense evaluation grids, RunRecord
/// persistence and tidy CSV emission. Every run is reproducible from its
/// config snapshot; all randomness derives from the root seed through named
/// substreams.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsteer/attacks.hpp"

namespace qsteer {

struct DataConfig {
  std::string dir = "data";
  std::string dataset = "mnist";
  std::optional<std::pair<int, int>> binary_classes;
  std::size_t train_size = 500;
  std::size_t test_size = 200;
  std::size_t eval_size = 200;
};

struct EncoderConfig {
  DefenseMode defense = DefenseMode::none;
  double strength = 0.0;
  int rounds = 0;
};

struct SweepConfig {
  std::vector<double> strengths;
  std::vector<int> rounds;
  double budget = 0.10;          // max clean-accuracy drop
  std::size_t subset_size = 100;  // partial-test-set protocol
};

struct ExperimentConfig {
  int version = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir = "out";
  DataConfig data;
  ModelSpec model = ModelSpec::vqc(0);
  TrainConfig train;
  EncoderConfig encoder;
  SweepConfig sweep;
  std::vector<AttackSpec> attacks;
  std::vector<std::vector<double>> attack_epsilons;  // parallel to attacks
  GradMethod input_grad_method = GradMethod::finite_difference;
  std::string params_path;  // defaults to out_dir/params.json

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json() const;
  void validate() const;

  /// Defended encoder spec (kind follows the model).
  EncoderSpec defended_encoder() const;
  /// FNV-1a over the canonical JSON dump, as hex.
  std::string config_hash() const;
};

struct PreparedData {
  ImageSet train_set;  // model-input space
  ImageSet test_set;
  ImageSet eval_set;   // attack/defense evaluation subset
  ImageSet sweep_set;  // partial test set for the (J, N) sweep
};

/// Loads the configured dataset, applies binary filtering / downscaling as
/// the model requires and draws the seeded subsets.
PreparedData prepare_data(const ExperimentConfig& cfg);

struct SweepCell {
  double strength = 0.0;
  int rounds = 0;
  double defended_acc = 0.0;
  bool admissible = false;
};

struct SweepSelection {
  double strength = 0.0;
  int rounds = 0;
};

struct SweepResult {
  double undefended_acc = 0.0;
  std::vector<SweepCell> cells;
  /// Smallest admissible N per J (earliest admission maximizes suppression);
  /// empty when no pair meets the budget.
  std::vector<SweepSelection> selected;
};

SweepResult sweep_jn(const ModelSpec& spec, const ParamSet& params,
                     const ImageSet& subset, DefenseMode defense,
                     const std::vector<double>& strengths,
                     const std::vector<int>& rounds, double budget,
                     int threads = 1);

struct AdvCell {
  std::string kind;
  double epsilon = 0.0;
  double acc_undefended = 0.0;
  double acc_defended = 0.0;
};

struct RunRecord {
  std::string config_hash;
  std::string model;
  std::string dataset;
  std::size_t eval_size = 0;
  double strength = 0.0;
  int rounds = 0;
  double clean_undefended = 0.0;
  double clean_defended = 0.0;
  std::vector<AdvCell> adversarial;
  long long wall_ms = 0;

  /// Percentage points; paper-style summary (clean drop, adversarial gain).
  double clean_drop_points() const {
    return 100.0 * (clean_undefended - clean_defended);
  }
  std::string to_json() const;
  static RunRecord from_json(const std::string& text);
  /// Equality modulo wall time.
  bool same_results(const RunRecord& other) const;
};

/// Per-sample predictions for one evaluation family.
struct PredictionRow {
  std::string family;
  std::size_t index = 0;
  int label = 0;
  int prediction = 0;
};

/// Evaluates the defense: clean and per-(attack, eps) accuracy under both
/// undefended and defended inference. Adversarial sets must have been
/// generated beforehand (white-box, undefended model); missing sets raise
/// DataError. Prediction rows are appended when `rows` is non-null.
RunRecord evaluate_defense(
    const ExperimentConfig& cfg, const ParamSet& params,
    const PreparedData& data,
    const std::vector<std::pair<AttackSpec, ImageSet>>& adversarial_sets,
    std::vector<PredictionRow>* rows = nullptr);

// --- persistence ------------------------------------------------------------

std::string adv_set_prefix(const std::string& out_dir, AttackKind kind,
                           double epsilon);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// sweep.csv: "J,N,clean_acc_defended,within_budget"
void emit_sweep_csv(const SweepResult& r, const std::string& path);
/// curve.csv: "attack,epsilon,defended,accuracy"
void emit_curve_csv(const std::vector<AdvCell>& cells,
                    const std::string& path);
/// fidelity.csv: "J,N,F"
void emit_fidelity_csv(const std::vector<double>& strengths,
                       const std::vector<int>& rounds, double f0,
                       const std::string& path);
/// curve written by training: "epoch,loss,train_acc,test_acc"
void emit_train_csv(const std::vector<EpochStats>& curve,
                    const std::string& path);
/// predictions.csv: "family,index,label,prediction"
void emit_predictions_csv(const std::vector<PredictionRow>& rows,
                          const std::string& path);

std::uint64_t params_hash(const ModelSpec& spec, const ParamSet& params);

}  // namespace qsteer
