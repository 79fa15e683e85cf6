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

#include "erasurekit/optimizer.hpp"

#include <cmath>
#include <sstream>

#include "erasurekit/erasure.hpp"
#include "erasurekit/error.hpp"

namespace erasurekit {

namespace {

// Upper limit of F_ea; a restart at this value cannot be beaten.
constexpr double kPerfectValue = 1.0 - 1e-14;

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

// E_k rho for every Kraus operator; the objective is linear in W through them.
std::vector<CMatrix> weighted_operators(const KrausChannel& channel, const CMatrix& rho) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(channel.size()));
  for (const CMatrix& e : channel.operators()) out.push_back(e * rho);
  return out;
}

struct Evaluation {
  double value = 0.0;
  CMatrix coefficients;  // C_jk = t_j Tr[V_j^dagger E_k rho]
};

Evaluation evaluate(const CMatrix& w, std::span<const CMatrix> weighted) {
  const Eigen::Index m = w.rows();
  const Eigen::Index kraus = w.cols();
  Evaluation out;
  out.coefficients.resize(m, kraus);
  for (Eigen::Index j = 0; j < m; ++j) {
    CMatrix a = CMatrix::Zero(weighted.front().rows(), weighted.front().cols());
    for (Eigen::Index k = 0; k < kraus; ++k) a += w(j, k) * weighted[static_cast<std::size_t>(k)];
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double t = svd.singularValues().sum();
    const CMatrix v = svd.matrixU() * svd.matrixV().adjoint();
    out.value += t * t;
    for (Eigen::Index k = 0; k < kraus; ++k) {
      out.coefficients(j, k) =
          t * (v.adjoint() * weighted[static_cast<std::size_t>(k)]).trace();
    }
  }
  return out;
}

struct RestartOutcome {
  CMatrix mixing;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

RestartOutcome ascend(CMatrix w, std::span<const CMatrix> weighted, int restart,
                      const OptimizerConfig& config, std::vector<TracePoint>& trace) {
  Evaluation current = evaluate(w, weighted);
  trace.push_back({restart, 0, current.value});
  RestartOutcome out{w, current.value, 0, false};
  for (int iter = 1; iter <= config.max_iters; ++iter) {
    CMatrix next = isometric_factor(current.coefficients.conjugate());
    Evaluation candidate = evaluate(next, weighted);
    const double gain = candidate.value - current.value;
    if (std::abs(gain) < config.tol || gain < 0.0) {
      out.converged = true;
      break;
    }
    w = std::move(next);
    current = std::move(candidate);
    out.mixing = w;
    out.value = current.value;
    out.iterations = iter;
    trace.push_back({restart, iter, current.value});
  }
  return out;
}

}  // namespace

OptimizationResult optimize_erasure(const KrausChannel& channel, const CMatrix& rho, int outcomes,
                                    const OptimizerConfig& config) {
  if (outcomes < channel.size()) {
    std::ostringstream os;
    os << outcomes << " outcomes cannot refine " << channel.size() << " Kraus operators";
    throw Error(ErrorCode::BadOutcomeCount, os.str());
  }
  if (config.restarts < 1 || config.max_iters < 0 || !(config.tol > 0.0)) {
    throw Error(ErrorCode::ParamOutOfRange,
                "optimizer needs restarts >= 1, max_iters >= 0 and tol > 0");
  }
  if (rho.rows() != channel.dim() || rho.cols() != channel.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state and channel dimensions differ");
  }
  require_density(rho);

  const int kraus = channel.size();
  const auto weighted = weighted_operators(channel, rho);

  std::vector<TracePoint> trace;
  RestartOutcome best;
  int best_restart = -1;
  int restarts_run = 0;
  for (int r = 0; r < config.restarts; ++r) {
    CMatrix start;
    if (r == 0) {
      start = CMatrix::Identity(outcomes, kraus);
    } else {
      auto rng = restart_rng(config.seed, r);
      start = haar_isometry(outcomes, kraus, rng);
    }
    RestartOutcome run = ascend(std::move(start), weighted, r, config, trace);
    ++restarts_run;
    if (best_restart < 0 || run.value > best.value) {
      best = std::move(run);
      best_restart = r;
    }
    if (best.value >= kPerfectValue) break;
  }

  return OptimizationResult{ProbeMeasurement(best.mixing), best.value,     best_restart,
                            restarts_run,                  best.iterations, std::move(trace),
                            best.converged,                std::nullopt};
}

double sample_oracle(const KrausChannel& channel, const CMatrix& rho, int samples,
                     std::uint64_t seed) {
  if (samples < 1) {
    throw Error(ErrorCode::ParamOutOfRange, "oracle needs at least one sample");
  }
  if (rho.rows() != channel.dim() || rho.cols() != channel.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state and channel dimensions differ");
  }
  require_density(rho);
  const auto weighted = weighted_operators(channel, rho);
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CMatrix w = haar_unitary(channel.size(), rng);
    double value = 0.0;
    for (Eigen::Index j = 0; j < w.rows(); ++j) {
      CMatrix a = CMatrix::Zero(channel.dim(), channel.dim());
      for (Eigen::Index k = 0; k < w.cols(); ++k) a += w(j, k) * weighted[static_cast<std::size_t>(k)];
      const double t = trace_norm(a);
      value += t * t;
    }
    best = std::max(best, value);
  }
  return best;
}

RandomUnitaryVerdict random_unitary_verdict(const KrausChannel& channel,
                                            const OptimizationResult& result, double tol,
                                            std::uint64_t seed) {
  RandomUnitaryVerdict verdict{false, result.best_value, {}, 0.0, 0.0, 0.0, result.best_mixing};
  if (result.best_value < 1.0 - tol) return verdict;

  const int d = channel.dim();
  const auto refined = refine(channel, result.best_mixing);
  std::vector<CMatrix> reconstructed;
  for (const CMatrix& e : refined) {
    const double p = (e.adjoint() * e).trace().real() / d;
    if (p < kNegligibleProbability) continue;
    const CMatrix u = e / std::sqrt(p);
    verdict.residual = std::max(verdict.residual, isometry_deviation(u));
    CMatrix unitary = polar_decompose(u).unitary;
    reconstructed.push_back(std::sqrt(p) * unitary);
    verdict.witness.push_back({p, std::move(unitary)});
  }
  verdict.choi_residual =
      max_abs_diff(choi_matrix(std::span<const CMatrix>(reconstructed)), choi_matrix(channel));

  const CMatrix mixed = maximally_mixed(d);
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 20; ++trial) {
    const int members = 2 + trial % 5;
    const Ensemble ensemble = random_ensemble(mixed, members, rng);
    verdict.max_mutual_info =
        std::max(verdict.max_mutual_info,
                 mutual_information(joint_distribution(channel, ensemble, result.best_mixing)));
  }

  verdict.is_random_unitary = verdict.residual < 10.0 * std::sqrt(tol) &&
                              verdict.choi_residual <= 1e-6 && verdict.max_mutual_info < 1e-5;
  return verdict;
}

RandomUnitaryVerdict detect_random_unitary(const KrausChannel& channel, double tol,
                                           const OptimizerConfig& config) {
  validate(channel);
  const OptimizationResult result =
      optimize_erasure(channel, maximally_mixed(channel.dim()), channel.size(), config);
  return random_unitary_verdict(channel, result, tol, config.seed);
}

}  // namespace erasurekit
