// Copyright 2026 The ErasureKit Authors
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

#include "erasurekit/erasure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "erasurekit/error.hpp"

namespace erasurekit {

namespace {

void require_state_for(const KrausChannel& channel, const CMatrix& rho) {
  if (rho.rows() != channel.dim() || rho.cols() != channel.dim()) {
    std::ostringstream os;
    os << "state is " << rho.rows() << "x" << rho.cols() << " but the channel acts on dim "
       << channel.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  require_density(rho);
}

// Pieces shared by both chains: the refined instrument and its conditional
// states on supp(rho).
struct Refinement {
  std::vector<CMatrix> refined;
  std::vector<ConditionalState> states;
  SpectralSupport support;
  CMatrix rho_sqrt;
};

Refinement refine_on_support(const KrausChannel& channel, const CMatrix& rho,
                             const ProbeMeasurement& meas) {
  require_state_for(channel, rho);
  Refinement out;
  out.refined = refine(channel, meas);
  out.support = spectral_support(rho);
  out.rho_sqrt = out.support.power(0.5);
  for (std::size_t j = 0; j < out.refined.size(); ++j) {
    const CMatrix effect = out.refined[j].adjoint() * out.refined[j];
    const double p = (rho * effect).trace().real();
    if (p < kNegligibleProbability) continue;
    CMatrix k = out.rho_sqrt * effect * out.rho_sqrt;
    k = 0.5 * (k + k.adjoint());
    k /= k.trace().real();
    out.states.push_back({static_cast<int>(j), p, std::move(k)});
  }
  return out;
}

// p(i|j) = Tr[K_j P_i] for each kept outcome.
std::vector<std::vector<double>> conditional_distributions(
    std::span<const ConditionalState> states, std::span<const CMatrix> effects) {
  std::vector<std::vector<double>> out;
  out.reserve(states.size());
  for (const ConditionalState& s : states) {
    std::vector<double> row;
    row.reserve(effects.size());
    for (const CMatrix& e : effects) row.push_back(std::max(0.0, (s.state * e).trace().real()));
    out.push_back(std::move(row));
  }
  return out;
}

double l1_distance(std::span<const double> a, const ProbVector& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

}  // namespace

// --- fidelities ------------------------------------------------------------

double entanglement_fidelity(std::span<const CMatrix> operators, const CMatrix& rho) {
  double f = 0.0;
  for (const CMatrix& e : operators) f += std::norm((rho * e).trace());
  return f;
}

double entanglement_fidelity(const KrausChannel& channel, const CMatrix& rho) {
  require_state_for(channel, rho);
  return entanglement_fidelity(std::span<const CMatrix>(channel.operators()), rho);
}

double entanglement_fidelity_purified(const KrausChannel& channel, const CMatrix& rho) {
  require_state_for(channel, rho);
  const Eigen::Index d = channel.dim();
  const CMatrix root = psd_sqrt(rho);
  CVector omega_max = CVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) omega_max(i * d + i) = 1.0;
  const CMatrix id = CMatrix::Identity(d, d);
  const CVector omega = Eigen::kroneckerProduct(root, id).eval() * omega_max;
  const CMatrix pure = omega * omega.adjoint();
  CMatrix out = CMatrix::Zero(d * d, d * d);
  for (const CMatrix& e : channel.operators()) {
    const CMatrix big = Eigen::kroneckerProduct(e, id).eval();
    out += big * pure * big.adjoint();
  }
  return (omega.adjoint() * out * omega)(0, 0).real();
}

double assisted_fidelity(std::span<const CMatrix> refined, const CMatrix& rho) {
  double f = 0.0;
  for (const CMatrix& e : refined) {
    const double t = trace_norm(e * rho);
    f += t * t;
  }
  return f;
}

double assisted_fidelity(const KrausChannel& channel, const CMatrix& rho,
                         const ProbeMeasurement& meas) {
  require_state_for(channel, rho);
  const auto refined = refine(channel, meas);
  return assisted_fidelity(std::span<const CMatrix>(refined), rho);
}

std::vector<ConditionalState> conditional_states(const KrausChannel& channel, const CMatrix& rho,
                                                 const ProbeMeasurement& meas) {
  return refine_on_support(channel, rho, meas).states;
}

double assisted_fidelity_from_states(std::span<const ConditionalState> states,
                                     const CMatrix& rho) {
  double f = 0.0;
  for (const ConditionalState& s : states) {
    const double fid = uhlmann_fidelity(rho, s.state);
    f += s.probability * fid * fid;
  }
  return f;
}

// --- correction ------------------------------------------------------------

std::vector<CMatrix> correction_unitaries(const KrausChannel& channel, const CMatrix& rho,
                                          const ProbeMeasurement& meas) {
  require_state_for(channel, rho);
  std::vector<CMatrix> out;
  for (const CMatrix& e : refine(channel, meas)) out.push_back(polar_decompose(e * rho).unitary);
  return out;
}

KrausChannel corrected_channel(const KrausChannel& channel, const ProbeMeasurement& meas,
                               std::span<const CMatrix> unitaries) {
  const auto refined = refine(channel, meas);
  if (unitaries.size() != refined.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one correction unitary per outcome is required");
  }
  std::vector<CMatrix> ops;
  ops.reserve(refined.size());
  for (std::size_t j = 0; j < refined.size(); ++j) {
    if (unitaries[j].rows() != channel.dim() || unitaries[j].cols() != channel.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "correction unitary has the wrong size");
    }
    ops.push_back(unitaries[j].adjoint() * refined[j]);
  }
  KrausChannel out(std::move(ops));
  validate(out);
  return out;
}

KrausChannel build_correction(const KrausChannel& channel, const CMatrix& rho,
                              const ProbeMeasurement& meas) {
  const auto unitaries = correction_unitaries(channel, rho, meas);
  return corrected_channel(channel, meas, unitaries);
}

// --- reports ---------------------------------------------------------------

std::vector<SlackLink> ErasureReport::links() const {
  std::vector<SlackLink> out;
  if (direct) {
    out.push_back({"direct.fidelity_trace", direct->slack_fidelity_trace});
    out.push_back({"direct.measurement_l1", direct->slack_measurement_l1});
    out.push_back({"direct.pinsker", direct->slack_pinsker});
    out.push_back({"direct.total", direct->slack_total});
  }
  if (converse) {
    out.push_back({"converse.fidelity_trace", converse->slack_fidelity_trace});
    out.push_back({"converse.frame", converse->slack_frame});
    out.push_back({"converse.information", converse->slack_information});
    out.push_back({"converse.total", converse->slack_converse});
  }
  return out;
}

double ErasureReport::worst_slack() const {
  double worst = std::numeric_limits<double>::infinity();
  for (const SlackLink& l : links()) worst = std::min(worst, l.slack);
  return worst;
}

std::vector<SlackLink> ErasureReport::violations(double tol) const {
  std::vector<SlackLink> out;
  for (SlackLink& l : links()) {
    if (!(l.slack >= -tol)) out.push_back(std::move(l));
  }
  return out;
}

namespace {

ErasureReport base_report(const KrausChannel& channel, const CMatrix& rho,
                          const ProbeMeasurement& meas, const Refinement& r) {
  ErasureReport report;
  report.f_e = entanglement_fidelity(channel, rho);
  report.f_ea = assisted_fidelity(std::span<const CMatrix>(r.refined), rho);
  report.f_ea_two_path = assisted_fidelity_from_states(r.states, rho);
  report.outcomes = meas.outcomes();
  report.kept_outcomes = static_cast<int>(r.states.size());
  report.rho_invertible = r.support.rank() == channel.dim();
  return report;
}

}  // namespace

ErasureReport verify_direct(const KrausChannel& channel, const CMatrix& rho,
                            const Ensemble& ensemble, const ProbeMeasurement& meas) {
  require_state_for(channel, rho);
  if (ensemble.dim() != channel.dim()) {
    throw Error(ErrorCode::EnsembleMismatch, "ensemble dimension differs from the channel");
  }
  const double mismatch = max_abs_diff(ensemble.average(), rho);
  if (mismatch > 1e-9) {
    throw Error(ErrorCode::EnsembleMismatch, "ensemble does not average to rho", mismatch);
  }

  const Refinement r = refine_on_support(channel, rho, meas);
  ErasureReport report = base_report(channel, rho, meas, r);
  report.beta = ensemble.beta();
  report.mutual_info = mutual_information(joint_distribution(channel, ensemble, meas));

  // POVM {rho^{-1/2} rho_i rho^{-1/2}} on supp(rho).
  const CMatrix inv_sqrt = r.support.power(-0.5);
  std::vector<CMatrix> effects;
  for (const CMatrix& m : ensemble.members()) effects.push_back(inv_sqrt * m * inv_sqrt);
  const auto conditionals = conditional_distributions(r.states, effects);
  const ProbVector& prior = ensemble.weights();

  DirectChain c;
  for (std::size_t j = 0; j < r.states.size(); ++j) {
    const ConditionalState& s = r.states[j];
    const double td = trace_norm(rho - s.state);
    const double l1 = l1_distance(conditionals[j], prior);
    c.sum_trace_distance_sq += s.probability * td * td;
    c.sum_classical_l1_sq += s.probability * l1 * l1;
    c.sum_conditional_divergence +=
        s.probability * relative_entropy(ProbVector::normalized(conditionals[j]), prior);
  }
  c.bound_fidelity_trace = 1.0 - 0.25 * c.sum_trace_distance_sq;
  c.bound_measurement_l1 = 1.0 - 0.25 * c.sum_classical_l1_sq;
  c.bound_pinsker = 1.0 - 0.25 * report.beta * c.sum_conditional_divergence;
  c.bound_information = 1.0 - 0.25 * report.beta * report.mutual_info;
  c.mixture_identity_residual = std::abs(c.sum_conditional_divergence - report.mutual_info);

  c.slack_fidelity_trace = c.bound_fidelity_trace - report.f_ea;
  c.slack_measurement_l1 = c.bound_measurement_l1 - c.bound_fidelity_trace;
  c.slack_pinsker = c.bound_pinsker - c.bound_measurement_l1;
  c.slack_total = c.bound_information - report.f_ea;
  report.direct = c;
  return report;
}

ErasureReport verify_converse(const KrausChannel& channel, const CMatrix& rho,
                              const ProbeMeasurement& meas, int members, std::uint64_t seed) {
  require_state_for(channel, rho);
  const ICEnsemble ic = ic_ensemble(rho, members, seed);
  const Refinement r = refine_on_support(channel, rho, meas);
  ErasureReport report = base_report(channel, rho, meas, r);

  ConverseChain c;
  c.frame_members = members;
  c.frame_seed = seed;
  c.gamma = ic.gamma;
  c.beta = ic.base.beta();
  c.mutual_info = mutual_information(joint_distribution(channel, ic.base, meas));

  const auto conditionals = conditional_distributions(r.states, ic.frame_effects);
  const ProbVector& prior = ic.base.weights();
  for (std::size_t j = 0; j < r.states.size(); ++j) {
    const ConditionalState& s = r.states[j];
    const CMatrix diff = rho - s.state;
    c.sum_trace_distance += s.probability * trace_norm(diff);
    c.sum_classical_l1 += s.probability * l1_distance(conditionals[j], prior);

    CMatrix rebuilt = CMatrix::Zero(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < ic.dual_frame.size(); ++i) {
      rebuilt += (prior[i] - conditionals[j][i]) * ic.dual_frame[i];
    }
    c.reconstruction_residual = std::max(c.reconstruction_residual, max_abs_diff(diff, rebuilt));
  }
  c.bound_fidelity_trace = 1.0 - c.sum_trace_distance;
  c.bound_frame = 1.0 - c.gamma * c.sum_classical_l1;
  c.bound_information = 1.0 - std::sqrt(2.0) * c.gamma * std::sqrt(c.mutual_info);

  c.slack_fidelity_trace = report.f_ea - c.bound_fidelity_trace;
  c.slack_frame = c.bound_fidelity_trace - c.bound_frame;
  c.slack_information = c.bound_frame - c.bound_information;
  c.slack_converse = report.f_ea - c.bound_information;

  report.beta = c.beta;
  report.mutual_info = c.mutual_info;
  report.gamma = c.gamma;
  report.converse = c;
  return report;
}

}  // namespace erasurekit
