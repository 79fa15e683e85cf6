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

// Entanglement fidelity, the environment-assisted bound F_ea, the explicit
// correction that attains it, and the information-disturbance chains that
// tie F_ea to the information a probe measurement extracts.
//
// Throughout, the polar decomposition is taken of E'_j rho: the correction
// unitary U_j satisfies E'_j rho = U_j |E'_j rho|, so applying U_j^dagger
// after outcome j turns Tr[rho U_j^dagger E'_j] into ||E'_j rho||_1.

#ifndef ERASUREKIT_ERASURE_HPP
#define ERASUREKIT_ERASURE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "erasurekit/channels.hpp"
#include "erasurekit/numerics.hpp"
#include "erasurekit/probes.hpp"

namespace erasurekit {

/// Outcomes with p(j) below this are dropped from conditional quantities.
inline constexpr double kNegligibleProbability = 1e-12;
/// Accumulated rounding allowance for an inequality link.
inline constexpr double kSlackTolerance = 1e-9;

/// sum_k |Tr rho E_k|^2; independent of the Kraus decomposition.
double entanglement_fidelity(const KrausChannel& channel, const CMatrix& rho);
double entanglement_fidelity(std::span<const CMatrix> operators, const CMatrix& rho);

/// <Omega|(E (x) I)(|Omega><Omega|)|Omega> with the purification
/// |Omega> = (rho^{1/2} (x) I) sum_i |ii>, built explicitly on the doubled
/// space. Slower; used to cross-check entanglement_fidelity.
double entanglement_fidelity_purified(const KrausChannel& channel, const CMatrix& rho);

/// F_ea = sum_j ||E'_j rho||_1^2 over the refined decomposition.
double assisted_fidelity(const KrausChannel& channel, const CMatrix& rho,
                         const ProbeMeasurement& meas);
double assisted_fidelity(std::span<const CMatrix> refined, const CMatrix& rho);

struct ConditionalState {
  int outcome = 0;
  double probability = 0.0;  ///< p(j) = Tr[rho E'_j^dagger E'_j]
  CMatrix state;             ///< K_j = rho^{1/2} E'_j^dagger E'_j rho^{1/2} / p(j)
};

/// One entry per outcome with p(j) >= 1e-12.
std::vector<ConditionalState> conditional_states(const KrausChannel& channel, const CMatrix& rho,
                                                 const ProbeMeasurement& meas);

/// sum_j p(j) F(rho, K_j)^2, the second route to F_ea.
double assisted_fidelity_from_states(std::span<const ConditionalState> states, const CMatrix& rho);

/// Unitary parts U_j of E'_j rho = U_j |E'_j rho|, one per outcome.
std::vector<CMatrix> correction_unitaries(const KrausChannel& channel, const CMatrix& rho,
                                          const ProbeMeasurement& meas);

/// The corrected channel with Kraus operators U_j^dagger E'_j, for any
/// choice of per-outcome unitaries.
KrausChannel corrected_channel(const KrausChannel& channel, const ProbeMeasurement& meas,
                               std::span<const CMatrix> unitaries);

/// corrected_channel with the polar unitaries; its entanglement fidelity at
/// rho equals assisted_fidelity.
KrausChannel build_correction(const KrausChannel& channel, const CMatrix& rho,
                              const ProbeMeasurement& meas);

/// The upper chain, bounding F_ea from above by the information the probe
/// extracts about an arbitrary ensemble:
///   F_ea <= 1 - 1/4 sum_j p(j) ||rho - K_j||_1^2
///        <= 1 - 1/4 sum_j p(j) (sum_i |p(i) - p(i|j)|)^2
///        <= 1 - beta/4 sum_j p(j) D(p(i|j) || p(i)) = 1 - beta/4 I <= 1.
struct DirectChain {
  double sum_trace_distance_sq = 0.0;
  double sum_classical_l1_sq = 0.0;
  double sum_conditional_divergence = 0.0;
  double bound_fidelity_trace = 0.0;
  double bound_measurement_l1 = 0.0;
  double bound_pinsker = 0.0;
  double bound_information = 0.0;
  /// |sum_j p(j) D(p(i|j)||p(i)) - I|.
  double mixture_identity_residual = 0.0;

  double slack_fidelity_trace = 0.0;
  double slack_measurement_l1 = 0.0;
  double slack_pinsker = 0.0;
  /// 1 - beta/4 I - F_ea.
  double slack_total = 0.0;
};

/// The lower chain over an informationally complete ensemble:
///   F_ea >= 1 - sum_j p(j) ||rho - K_j||_1
///        >= 1 - |Gamma| sum_ij p(j) |p(i) - p(i|j)|
///        >= 1 - sqrt(2) |Gamma| sqrt(I).
struct ConverseChain {
  int frame_members = 0;
  std::uint64_t frame_seed = 0;
  double gamma = 0.0;
  double beta = 0.0;
  double mutual_info = 0.0;
  double sum_trace_distance = 0.0;
  double sum_classical_l1 = 0.0;
  /// max_j of the max-abs entry of (rho - K_j) - sum_i (p(i) - p(i|j)) rho'_i.
  double reconstruction_residual = 0.0;
  double bound_fidelity_trace = 0.0;
  double bound_frame = 0.0;
  double bound_information = 0.0;

  double slack_fidelity_trace = 0.0;
  double slack_frame = 0.0;
  double slack_information = 0.0;
  /// F_ea - (1 - sqrt(2) |Gamma| sqrt(I)).
  double slack_converse = 0.0;
};

struct SlackLink {
  std::string name;
  double slack = 0.0;
};

struct ErasureReport {
  double f_e = 0.0;
  double f_ea = 0.0;
  /// sum_j p(j) F(rho, K_j)^2, which must agree with f_ea.
  double f_ea_two_path = 0.0;
  /// Mutual information of the supplied ensemble (direct chain) or of the
  /// IC ensemble when only the converse chain ran.
  double mutual_info = 0.0;
  double beta = 0.0;
  std::optional<double> gamma;
  int outcomes = 0;
  int kept_outcomes = 0;
  /// rho invertible; its corrected channel then acts on the whole space.
  bool rho_invertible = false;

  std::optional<DirectChain> direct;
  std::optional<ConverseChain> converse;

  /// Every inequality link that was evaluated, in chain order.
  std::vector<SlackLink> links() const;
  /// Smallest slack over links(); +inf when none ran.
  double worst_slack() const;
  /// Links below -tol.
  std::vector<SlackLink> violations(double tol = kSlackTolerance) const;
};

/// Evaluates the upper chain. Throws EnsembleMismatch unless the ensemble
/// averages to rho within 1e-9.
ErasureReport verify_direct(const KrausChannel& channel, const CMatrix& rho,
                            const Ensemble& ensemble, const ProbeMeasurement& meas);

/// Evaluates the lower chain on ic_ensemble(rho, members, seed).
ErasureReport verify_converse(const KrausChannel& channel, const CMatrix& rho,
                              const ProbeMeasurement& meas, int members, std::uint64_t seed);

}  // namespace erasurekit

#endif  // ERASUREKIT_ERASURE_HPP
