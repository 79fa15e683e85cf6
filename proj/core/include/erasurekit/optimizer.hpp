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

#ifndef ERASUREKIT_OPTIMIZER_HPP
#define ERASUREKIT_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "erasurekit/channels.hpp"
#include "erasurekit/numerics.hpp"
#include "erasurekit/probes.hpp"

namespace erasurekit {

struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 500;
  double tol = 1e-12;
  std::uint64_t seed = 0;
};

struct TracePoint {
  int restart = 0;
  int iteration = 0;
  double value = 0.0;
};

struct OptimizationResult {
  ProbeMeasurement best_mixing;
  double best_value = 0.0;
  int best_restart = 0;
  /// Restarts actually run; the search stops early once F_ea reaches 1.
  int restarts_run = 0;
  /// Accepted ascent steps of the best restart.
  int best_iterations = 0;
  /// (restart, iteration, F_ea) after every accepted step; iteration 0 is the
  /// starting point. Nondecreasing within each restart.
  std::vector<TracePoint> trace;
  /// The best restart stopped on |dF| < tol rather than max_iters.
  bool converged = false;
  std::optional<double> oracle_value;
};

/// Maximizes F_ea over rank-one probe measurements with `outcomes` outcomes
/// by minorize-maximize ascent on the mixing isometry W.
///
/// Each step linearizes ||E'_j rho||_1 >= Re Tr[V_j^dagger E'_j rho] at the
/// polar unitaries V_j of the current E'_j rho and maximizes the resulting
/// surrogate sum_j 2 t_j Re Tr[V_j^dagger E'_j rho] - t_j^2 exactly: the
/// maximizer is the isometric factor of conj(C), C_jk = t_j Tr[V_j^dagger E_k rho].
/// The objective therefore never decreases. Restart 0 starts from W = [I; 0],
/// restart r > 0 from a Haar isometry seeded by (seed, r). Ties go to the
/// lowest restart index.
///
/// Throws BadOutcomeCount when outcomes < K.
OptimizationResult optimize_erasure(const KrausChannel& channel, const CMatrix& rho, int outcomes,
                                    const OptimizerConfig& config = {});

/// Brute-force reference: max of F_ea over `samples` Haar-random K x K
/// mixings. Deterministic per seed.
double sample_oracle(const KrausChannel& channel, const CMatrix& rho, int samples,
                     std::uint64_t seed);

struct RandomUnitaryTerm {
  double weight = 0.0;
  CMatrix unitary;
};

struct RandomUnitaryVerdict {
  bool is_random_unitary = false;
  /// F_ea at rho = I/d for the best measurement found.
  double best_value = 0.0;
  /// Populated when the optimum reached 1 - tol.
  std::vector<RandomUnitaryTerm> witness;
  /// max_j of max-abs(U_j^dagger U_j - I) with U_j = E'_j / sqrt(p(j)).
  double residual = 0.0;
  /// Choi distance between the channel and sum_j p(j) W_j . W_j^dagger, W_j
  /// the unitary part of U_j.
  double choi_residual = 0.0;
  /// Largest mutual information over the random test ensembles.
  double max_mutual_info = 0.0;
  ProbeMeasurement mixing;
};

/// Searches for a random-unitary decomposition at rho = I/d. The verdict is
/// true when F* >= 1 - tol, every normalized refined operator is unitary
/// within 10 sqrt(tol), the unitarized witness reproduces the Choi matrix
/// within 1e-6, and 20 seeded random ensembles of I/d show mutual
/// information below 1e-5 under the optimal measurement.
RandomUnitaryVerdict detect_random_unitary(const KrausChannel& channel, double tol = 1e-6,
                                           const OptimizerConfig& config = {});

/// Same, reusing an optimization already run at rho = I/d.
RandomUnitaryVerdict random_unitary_verdict(const KrausChannel& channel,
                                            const OptimizationResult& result, double tol = 1e-6,
                                            std::uint64_t seed = 0);

}  // namespace erasurekit

#endif  // ERASUREKIT_OPTIMIZER_HPP
