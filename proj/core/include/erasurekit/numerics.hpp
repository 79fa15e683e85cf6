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

// Dense complex linear algebra and entropic primitives shared by every other
// part of the library. All entropies are in nats.

#ifndef ERASUREKIT_NUMERICS_HPP
#define ERASUREKIT_NUMERICS_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace erasurekit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Eigenvalues below this (absolute) are outside the support of a state.
inline constexpr double kRankCutoff = 1e-10;
/// Hermitian eigenvalues in [-kPsdTolerance, 0) are float noise and clamp to 0.
inline constexpr double kPsdTolerance = 1e-8;

/// A probability vector: nonnegative weights summing to one within 1e-12.
class ProbVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Throws NotNormalized unless the weights already form a distribution.
  explicit ProbVector(std::vector<double> weights);

  /// Rescales nonnegative weights with a positive sum.
  static ProbVector normalized(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }
  std::span<const double> weights() const noexcept { return weights_; }
  double min() const;

 private:
  std::vector<double> weights_;
};

struct PolarDecomposition {
  CMatrix unitary;   ///< U, unitary
  CMatrix positive;  ///< P = sqrt(A^dagger A)
};

/// A = U P for square A. Rank-deficient inputs get the singular-vector
/// completion of U; any completion reproduces A.
PolarDecomposition polar_decompose(const CMatrix& a);

/// The isometric factor W of a tall (rows >= cols) matrix A = W |A|; this is
/// the maximizer of Re Tr[W^dagger A] over isometries.
CMatrix isometric_factor(const CMatrix& a);

/// Principal square root of a PSD matrix. Throws NotPSD on eigenvalues
/// below -1e-8 or a non-Hermitian input.
CMatrix psd_sqrt(const CMatrix& p);

/// Sum of singular values.
double trace_norm(const CMatrix& a);

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), computed as the
/// trace norm of sqrt(rho) sqrt(sigma).
double uhlmann_fidelity(const CMatrix& rho, const CMatrix& sigma);

double shannon_entropy(const ProbVector& p);

/// D(r||s) in nats with 0 ln(0/x) = 0. Throws DivergentRelativeEntropy when
/// r has mass where s has none.
double relative_entropy(const ProbVector& r, const ProbVector& s);

struct EntropyBounds {
  double l1 = 0.0;           ///< ||r - s||_1
  double divergence = 0.0;   ///< D(r||s)
  double beta = 0.0;         ///< min_k s(k)
  double lower_slack = 0.0;  ///< D - l1^2 / 2
  double upper_slack = 0.0;  ///< l1^2 / beta - D
};

/// Both sides of the Pinsker-type sandwich l1^2/2 <= D <= l1^2/beta.
EntropyBounds verify_entropy_bounds(const ProbVector& r, const ProbVector& s);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of R's diagonal absorbed into Q. Deterministic for a fixed seed.
CMatrix haar_unitary(int dim, std::uint64_t seed);
CMatrix haar_unitary(int dim, std::mt19937_64& rng);

/// First `cols` columns of a Haar unitary of size `rows`.
CMatrix haar_isometry(int rows, int cols, std::mt19937_64& rng);

/// Matrix with i.i.d. standard complex Gaussian entries.
CMatrix ginibre(int rows, int cols, std::mt19937_64& rng);

/// X X^dagger / Tr for a dim x rank Ginibre X.
CMatrix random_density(int dim, int rank, std::mt19937_64& rng);

/// Eigen-decomposition of a PSD matrix restricted to its support.
struct SpectralSupport {
  CMatrix basis;               ///< dim x rank, orthonormal columns
  Eigen::VectorXd eigenvalues; ///< the rank eigenvalues above the cutoff

  int dim() const { return static_cast<int>(basis.rows()); }
  int rank() const { return static_cast<int>(basis.cols()); }
  CMatrix projector() const;
  /// basis diag(lambda^exponent) basis^dagger; negative exponents act as the
  /// pseudo-inverse power on the support.
  CMatrix power(double exponent) const;
};

SpectralSupport spectral_support(const CMatrix& psd, double cutoff = kRankCutoff);

/// Throws NotDensity (shape, hermiticity, trace) or NotPSD (spectrum).
void require_density(const CMatrix& rho, double trace_tol = 1e-9);

/// Max-abs entry of A - B; comparisons always carry an explicit tolerance.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool approx_equal(const CMatrix& a, const CMatrix& b, double abs_tol);

/// Max-abs entry of A^dagger A - I.
double isometry_deviation(const CMatrix& a);

double hermitian_deviation(const CMatrix& a);

/// Maximally mixed state I/d.
CMatrix maximally_mixed(int dim);

}  // namespace erasurekit

#endif  // ERASUREKIT_NUMERICS_HPP
