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

#ifndef ERASUREKIT_CHANNELS_HPP
#define ERASUREKIT_CHANNELS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "erasurekit/numerics.hpp"

namespace erasurekit {

/// A channel rho -> sum_k E_k rho E_k^dagger on a d-dimensional system.
///
/// Construction checks shapes and drops operators with Frobenius norm below
/// 1e-12; completeness is checked by validate(). Output space equals input
/// space.
class KrausChannel {
 public:
  static constexpr double kZeroOperatorNorm = 1e-12;

  explicit KrausChannel(std::vector<CMatrix> operators);

  int dim() const noexcept { return dim_; }
  /// Number of Kraus operators, which is also the environment dimension.
  int size() const noexcept { return static_cast<int>(operators_.size()); }
  const std::vector<CMatrix>& operators() const noexcept { return operators_; }
  const CMatrix& operator[](int k) const { return operators_[static_cast<std::size_t>(k)]; }

 private:
  int dim_ = 0;
  std::vector<CMatrix> operators_;
};

/// Max-abs deviation of sum_k E_k^dagger E_k from the identity.
double completeness_deviation(const KrausChannel& channel);

/// Throws NotTracePreserving when the completeness deviation exceeds 1e-9.
void validate(const KrausChannel& channel);

/// sum_k E_k rho E_k^dagger. rho must be a density matrix of matching size.
CMatrix apply(const KrausChannel& channel, const CMatrix& rho);

/// Heisenberg picture: sum_k E_k^dagger O E_k.
CMatrix apply_dual(const KrausChannel& channel, const CMatrix& observable);

/// V = sum_k E_k (x) |k>, a (d K) x d isometry. Row index is i * K + k for
/// system index i and environment index k.
struct DilationIsometry {
  CMatrix matrix;
  int sys_dim = 0;
  int env_dim = 0;

  /// (1 (x) <k|) V, which equals E_k.
  CMatrix env_block(int k) const;
};

DilationIsometry dilation(const KrausChannel& channel);

/// Partial traces of an operator on system (x) environment, system first.
CMatrix trace_out_env(const CMatrix& joint, int sys_dim, int env_dim);
CMatrix trace_out_sys(const CMatrix& joint, int sys_dim, int env_dim);

/// Environment output state: entry (k, l) = Tr[E_l^dagger E_k rho].
CMatrix complementary_apply(const KrausChannel& channel, const CMatrix& rho);

/// E_j^dagger E_j, the complementary-dual image of the projector |j><j|.
CMatrix dual_effect(const KrausChannel& channel, int j);

/// Unnormalized Choi matrix sum_k (E_k (x) I)|Omega><Omega|(E_k (x) I)^dagger
/// with |Omega> = sum_i |ii>.
CMatrix choi_matrix(const KrausChannel& channel);
CMatrix choi_matrix(std::span<const CMatrix> operators);

/// Max-abs entry difference of the two Choi matrices.
double choi_distance(const KrausChannel& a, const KrausChannel& b);
bool same_channel(const KrausChannel& a, const KrausChannel& b, double tol = 1e-9);

using PresetParams = std::map<std::string, double>;

/// Named channels:
///   identity {dim=2}
///   dephasing {p=1}: sqrt(1-p) I, sqrt(p)|0><0|, sqrt(p)|1><1|
///   depolarizing {p, dim=2}: (1-p) rho + p I/d via Weyl operators
///   amplitude_damping {gamma}
///   eraser_cnot: |0><0|, |1><1| (which-path copy onto the probe)
///   partial_teleportation {lambda0}: D sigma_j / sqrt(2), D = diag(sqrt(l0), sqrt(1-l0))
///   random {dim, kraus, seed}
/// Throws UnknownPreset or ParamOutOfRange.
KrausChannel preset(std::string_view name, const PresetParams& params = {});

const std::vector<std::string>& preset_names();

/// The primary parameter a bare numeric value binds to ("p", "gamma", ...);
/// empty for presets without one.
std::string_view preset_primary_param(std::string_view name);

/// K seeded Ginibre blocks orthonormalized into a Haar isometry and split.
KrausChannel random_channel(int dim, int kraus, std::uint64_t seed);
KrausChannel random_channel(int dim, int kraus, std::mt19937_64& rng);

}  // namespace erasurekit

#endif  // ERASUREKIT_CHANNELS_HPP
