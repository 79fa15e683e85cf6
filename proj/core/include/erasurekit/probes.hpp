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

// Rank-one probe measurements, input ensembles and their joint statistics.

#ifndef ERASUREKIT_PROBES_HPP
#define ERASUREKIT_PROBES_HPP

#include <cstdint>
#include <vector>

#include "erasurekit/channels.hpp"
#include "erasurekit/numerics.hpp"

namespace erasurekit {

/// A rank-one POVM {|w_j><w_j|} on the K-dimensional environment, stored as
/// the m x K mixing isometry W with W_{jk} = <phi_j|k>. Row phases are gauge.
class ProbeMeasurement {
 public:
  static constexpr double kIsometryTolerance = 1e-10;

  /// Throws NotIsometry unless W^dagger W = I and m >= K.
  explicit ProbeMeasurement(CMatrix mixing);

  /// W = I_K: measure the environment in the Kraus basis.
  static ProbeMeasurement canonical(int kraus);
  /// W = [[1, 1], [1, -1]] / sqrt(2).
  static ProbeMeasurement hadamard();
  /// W = [[cos t, sin t], [-sin t, cos t]].
  static ProbeMeasurement rotation(double theta);

  const CMatrix& mixing() const noexcept { return mixing_; }
  int outcomes() const noexcept { return static_cast<int>(mixing_.rows()); }
  int kraus() const noexcept { return static_cast<int>(mixing_.cols()); }

 private:
  CMatrix mixing_;
};

/// True when the two measurements agree up to a phase per row.
bool same_measurement(const ProbeMeasurement& a, const ProbeMeasurement& b, double tol);

/// The pure instrument E'_j = sum_k W_{jk} E_k.
std::vector<CMatrix> refine(const KrausChannel& channel, const ProbeMeasurement& meas);

/// An input-state decomposition rho = sum_i rho_i with weights p(i) = Tr rho_i.
class Ensemble {
 public:
  /// Members must be PSD, of equal size, with strictly positive traces
  /// summing to one. Throws InvalidEnsemble otherwise.
  explicit Ensemble(std::vector<CMatrix> members);

  int size() const noexcept { return static_cast<int>(members_.size()); }
  int dim() const noexcept { return static_cast<int>(average_.rows()); }
  const std::vector<CMatrix>& members() const noexcept { return members_; }
  const CMatrix& average() const noexcept { return average_; }
  const ProbVector& weights() const noexcept { return weights_; }
  /// min_i p(i).
  double beta() const { return weights_.min(); }

 private:
  std::vector<CMatrix> members_;
  CMatrix average_;
  ProbVector weights_;
};

/// Seeded random decomposition of rho into n members, rho_i =
/// rho^{1/2} P_i rho^{1/2} for a random full-rank POVM {P_i} on supp(rho).
/// Redraws until every weight reaches min_weight.
Ensemble random_ensemble(const CMatrix& rho, int members, std::mt19937_64& rng,
                         double min_weight = 0.0);
Ensemble random_ensemble(const CMatrix& rho, int members, std::uint64_t seed,
                         double min_weight = 0.0);

/// The n x m matrix p(i, j) = Tr[rho_i E'_j^dagger E'_j]; entries above
/// -1e-12 are clamped at zero.
Eigen::MatrixXd joint_distribution(const KrausChannel& channel, const Ensemble& ensemble,
                                   const ProbeMeasurement& meas);

/// H(p(i)) + H(p(j)) - H(p(i, j)) in nats, clamped at zero. Throws
/// NotNormalized for negative entries or a total off by more than 1e-9.
double mutual_information(const Eigen::MatrixXd& joint);

/// An informationally complete ensemble with its canonical dual frame.
struct ICEnsemble {
  Ensemble base;
  /// P_i = rho^{-1/2} rho_i rho^{-1/2}, a rank-one POVM on supp(rho).
  std::vector<CMatrix> frame_effects;
  /// rho'_i with O = sum_i Tr[O P_i] rho'_i for every O on supp(rho).
  std::vector<CMatrix> dual_frame;
  /// max_i ||rho'_i||_1.
  double gamma = 0.0;
  int frame_rank = 0;
  int support_rank = 0;

  CMatrix reconstruct(const CMatrix& op) const;
  CMatrix reconstruct(std::span<const double> expectations) const;
};

/// Draws n Haar unit vectors on supp(rho). Throws InsufficientFrame when
/// n < r^2 or the drawn frame does not span the r^2 operators on the
/// support, and SingularAverage when the frame operator is too ill
/// conditioned to invert.
ICEnsemble ic_ensemble(const CMatrix& rho, int members, std::uint64_t seed);

}  // namespace erasurekit

#endif  // ERASUREKIT_PROBES_HPP
