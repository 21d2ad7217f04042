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

#include "qsteer/steering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsteer/kernels.hpp"

namespace qsteer {
namespace {

constexpr cd kI{0.0, 1.0};

// Orthonormal component of `initial` against `target`, or nullopt when the
// two states coincide up to kEquivalenceTol in fidelity.
std::optional<std::vector<cd>> source_direction(const PureState& initial,
                                                const PureState& target) {
  const std::size_t d = initial.dim();
  const cd overlap = kernels::active().cdotc(
      target.amplitudes().data(), initial.amplitudes().data(), d);
  if (std::norm(overlap) > 1.0 - kEquivalenceTol) return std::nullopt;
  std::vector<cd> e(d);
  double nrm2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    e[i] = initial[i] - overlap * target[i];
    nrm2 += std::norm(e[i]);
  }
  const double inv = 1.0 / std::sqrt(nrm2);
  for (cd& v : e) v *= inv;
  return e;
}

}  // namespace

void SteeringPlan::validate() const {
  if (!(strength > 0.0) || strength > std::numbers::pi / 2 + 1e-15)
    throw std::invalid_argument(
        "steering strength J must lie in (0, pi/2]");
  if (rounds < 1)
    throw std::invalid_argument("steering iteration count N must be >= 1");
}

SteeringChannel SteeringChannel::identity(std::size_t dim) {
  SteeringChannel ch;
  ch.dim_ = dim;
  ch.kraus_.push_back(CMatrix::identity(dim));
  return ch;
}

SteeringChannel SteeringChannel::steering(double strength,
                                          std::vector<cd> source,
                                          std::vector<cd> target) {
  SteeringChannel ch;
  ch.dim_ = source.size();
  const double c = std::cos(strength);
  const double s = std::sin(strength);

  CMatrix k0 = CMatrix::identity(ch.dim_);
  kernels::active().rank1_acc(k0.data(), cd{-(1.0 - c), 0.0}, source.data(),
                              source.data(), ch.dim_, ch.dim_);
  CMatrix k1(ch.dim_, ch.dim_);
  kernels::active().rank1_acc(k1.data(), -kI * s, target.data(),
                              source.data(), ch.dim_, ch.dim_);
  ch.kraus_.push_back(std::move(k0));
  ch.kraus_.push_back(std::move(k1));
  ch.rank_form_ = RankForm{strength, std::move(source), std::move(target)};
  return ch;
}

double SteeringChannel::completeness_error() const {
  CMatrix sum(dim_, dim_);
  for (const CMatrix& k : kraus_) {
    // sum += K^dagger K
    const CMatrix kd = k.adjoint();
    kernels::active().cgemm_nc_acc(kd.data(), kd.data(), sum.data(), dim_,
                                   dim_, dim_);
  }
  return max_abs_diff(sum, CMatrix::identity(dim_));
}

MixedState SteeringChannel::apply(const MixedState& rho) const {
  if (rho.dim() != dim_)
    throw std::invalid_argument("channel/state dimension mismatch");
  if (!rank_form_) return rho;

  const auto& f = *rank_form_;
  const double c = std::cos(f.strength);
  const double s = std::sin(f.strength);
  const double gamma = 1.0 - c;

  // K0 rho K0^dag + K1 rho K1^dag expanded around the rank-1 structure:
  //   rho' = rho - gamma (e w^dag + w e^dag) + gamma^2 sigma e e^dag
  //          + sin^2(J) sigma tau tau^dag,      w = rho e, sigma = <e|w>.
  const auto& k = kernels::active();
  std::vector<cd> w(dim_);
  k.cmatvec(rho.rho().data(), f.source.data(), w.data(), dim_, dim_);
  const double sigma = k.cdotc(f.source.data(), w.data(), dim_).real();

  CMatrix out = rho.rho();
  k.rank1_acc(out.data(), cd{-gamma, 0.0}, f.source.data(), w.data(), dim_,
              dim_);
  k.rank1_acc(out.data(), cd{-gamma, 0.0}, w.data(), f.source.data(), dim_,
              dim_);
  k.rank1_acc(out.data(), cd{gamma * gamma * sigma, 0.0}, f.source.data(),
              f.source.data(), dim_, dim_);
  k.rank1_acc(out.data(), cd{s * s * sigma, 0.0}, f.target.data(),
              f.target.data(), dim_, dim_);
  return MixedState::from_matrix(rho.n_qubits(), std::move(out));
}

MixedState SteeringChannel::apply_dense(const MixedState& rho) const {
  if (rho.dim() != dim_)
    throw std::invalid_argument("channel/state dimension mismatch");
  CMatrix out(dim_, dim_);
  for (const CMatrix& kop : kraus_) {
    const CMatrix t = matmul(kop, rho.rho());
    kernels::active().cgemm_nc_acc(t.data(), kop.data(), out.data(), dim_,
                                   dim_, dim_);
  }
  return MixedState::from_matrix(rho.n_qubits(), std::move(out));
}

SteeringChannel build_channel(const SteeringPlan& plan,
                              const PureState& initial) {
  plan.validate();
  if (initial.n_qubits() != plan.target.n_qubits())
    throw std::invalid_argument(
        "build_channel: initial/target qubit count mismatch");
  auto e = source_direction(initial, plan.target);
  if (!e) return SteeringChannel::identity(initial.dim());
  return SteeringChannel::steering(plan.strength, std::move(*e),
                                   plan.target.amplitudes());
}

MixedState steer(const SteeringPlan& plan, const PureState& initial) {
  const SteeringChannel ch = build_channel(plan, initial);
  MixedState rho = MixedState::from_pure(initial);
  for (int n = 0; n < plan.rounds; ++n) rho = ch.apply(rho);
  return rho;
}

CMatrix steering_unitary(double strength, const std::vector<cd>& source,
                         const std::vector<cd>& target) {
  const std::size_t d = source.size();
  // L = |tau><e|; H = sigma+ (x) L + sigma- (x) L^dagger with the ancilla on
  // the high bit, i.e. block structure H = [[0, L^dag], [L, 0]].
  CMatrix h(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const cd lij = target[i] * std::conj(source[j]);
      h(d + i, j) = lij;                 // sigma+ block
      h(i, d + j) = std::conj(target[j]) * source[i];  // L^dagger block
    }
  CMatrix a = h;
  a *= -kI * strength;
  return expm(a);
}

MixedState steer_dilated(const SteeringPlan& plan, const PureState& initial) {
  plan.validate();
  if (initial.n_qubits() != plan.target.n_qubits())
    throw std::invalid_argument(
        "steer_dilated: initial/target qubit count mismatch");
  auto e = source_direction(initial, plan.target);
  MixedState rho = MixedState::from_pure(initial);
  if (!e) return rho;

  const CMatrix u = steering_unitary(plan.strength, *e,
                                     plan.target.amplitudes());
  const MixedState ancilla = MixedState::zero(1);
  std::vector<int> system_qubits(initial.n_qubits());
  for (int q = 0; q < initial.n_qubits(); ++q) system_qubits[q] = q;

  for (int n = 0; n < plan.rounds; ++n) {
    const MixedState joint = tensor(ancilla, rho);  // ancilla on top
    const CMatrix evolved =
        matmul_adjoint_right(matmul(u, joint.rho()), u);
    rho = partial_trace(
        MixedState::from_matrix(joint.n_qubits(), evolved), system_qubits);
  }
  return rho;
}

double fidelity_oracle(double f0, double strength, int rounds) {
  if (f0 < 0.0 || f0 > 1.0)
    throw std::invalid_argument("fidelity_oracle: f0 outside [0,1]");
  if (!(strength > 0.0) || strength > std::numbers::pi / 2 + 1e-15)
    throw std::invalid_argument("fidelity_oracle: J outside (0, pi/2]");
  if (rounds < 0)
    throw std::invalid_argument("fidelity_oracle: negative round count");
  const double c = std::cos(strength);
  return 1.0 - (1.0 - f0) * std::pow(c * c, rounds);
}

}  // namespace qsteer
