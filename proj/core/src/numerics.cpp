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

#include "erasurekit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "erasurekit/error.hpp"

namespace erasurekit {

namespace {

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::NotPSD, std::string(what) + " has non-finite entries");
  }
}

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << " must be square and non-empty, got " << a.rows() << "x"
       << a.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

Eigen::JacobiSVD<CMatrix> full_svd(const CMatrix& a) {
  return Eigen::JacobiSVD<CMatrix>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

// Eigenvalues of a Hermitian PSD matrix with float noise clamped to zero.
Eigen::SelfAdjointEigenSolver<CMatrix> psd_eigen(const CMatrix& p,
                                                 const char* what) {
  require_square(p, what);
  require_finite(p, what);
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  const double herm = hermitian_deviation(p);
  if (herm > 1e-10 * scale) {
    throw Error(ErrorCode::NotPSD, std::string(what) + " is not Hermitian", herm);
  }
  const CMatrix sym = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(sym);
  const double lowest = eig.eigenvalues().minCoeff();
  if (lowest < -kPsdTolerance * scale) {
    throw Error(ErrorCode::NotPSD,
                std::string(what) + " has a negative eigenvalue", lowest);
  }
  return eig;
}

}  // namespace

// --- ProbVector ------------------------------------------------------------

ProbVector::ProbVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw Error(ErrorCode::NotNormalized, "probability vector is empty");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
      throw Error(ErrorCode::NotNormalized, "weight outside [0, 1]", w);
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::NotNormalized, "weights do not sum to one",
                sum - 1.0);
  }
}

ProbVector ProbVector::normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::NotNormalized, "negative or non-finite weight", w);
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::NotNormalized, "weights have zero total mass");
  }
  for (double& w : weights) w /= sum;
  return ProbVector(std::move(weights));
}

double ProbVector::min() const {
  return *std::min_element(weights_.begin(), weights_.end());
}

// --- decompositions --------------------------------------------------------

PolarDecomposition polar_decompose(const CMatrix& a) {
  require_square(a, "polar input");
  require_finite(a, "polar input");
  const auto svd = full_svd(a);
  const CMatrix& v = svd.matrixV();
  PolarDecomposition out;
  out.unitary = svd.matrixU() * v.adjoint();
  out.positive = v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
  return out;
}

CMatrix isometric_factor(const CMatrix& a) {
  if (a.rows() < a.cols() || a.cols() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "isometric factor needs a tall, non-empty matrix");
  }
  require_finite(a, "isometric factor input");
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix psd_sqrt(const CMatrix& p) {
  const auto eig = psd_eigen(p, "psd_sqrt input");
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.cast<Complex>().asDiagonal() *
         eig.eigenvectors().adjoint();
}

double trace_norm(const CMatrix& a) {
  require_finite(a, "trace_norm input");
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

double uhlmann_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "fidelity arguments differ in shape");
  }
  require_density(rho);
  require_density(sigma);
  return trace_norm(psd_sqrt(rho) * psd_sqrt(sigma));
}

// --- entropies -------------------------------------------------------------

double shannon_entropy(const ProbVector& p) {
  double h = 0.0;
  for (double w : p.weights()) {
    if (w > 0.0) h -= w * std::log(w);
  }
  return h;
}

double relative_entropy(const ProbVector& r, const ProbVector& s) {
  if (r.size() != s.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "relative entropy of distributions with different lengths");
  }
  double d = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] == 0.0) continue;
    if (s[k] == 0.0) {
      std::ostringstream os;
      os << "s(" << k << ") = 0 while r(" << k << ") = " << r[k];
      throw Error(ErrorCode::DivergentRelativeEntropy, os.str());
    }
    d += r[k] * std::log(r[k] / s[k]);
  }
  // D >= 0 exactly; rounding can leave a tiny negative.
  return std::max(d, 0.0);
}

EntropyBounds verify_entropy_bounds(const ProbVector& r, const ProbVector& s) {
  if (r.size() != s.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "entropy bounds need distributions of equal length");
  }
  EntropyBounds out;
  out.beta = s.min();
  if (!(out.beta > 0.0)) {
    throw Error(ErrorCode::BetaZero, "min_k s(k) must be positive");
  }
  for (std::size_t k = 0; k < r.size(); ++k) out.l1 += std::abs(r[k] - s[k]);
  out.divergence = relative_entropy(r, s);
  const double l1_sq = out.l1 * out.l1;
  out.lower_slack = out.divergence - 0.5 * l1_sq;
  out.upper_slack = l1_sq / out.beta - out.divergence;
  return out;
}

// --- random sampling -------------------------------------------------------

CMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

CMatrix haar_unitary(int dim, std::mt19937_64& rng) {
  if (dim < 1) {
    throw Error(ErrorCode::DimensionMismatch, "Haar unitary needs dim >= 1");
  }
  const CMatrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

CMatrix haar_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_unitary(dim, rng);
}

CMatrix haar_isometry(int rows, int cols, std::mt19937_64& rng) {
  if (cols < 1 || rows < cols) {
    throw Error(ErrorCode::DimensionMismatch, "Haar isometry needs rows >= cols >= 1");
  }
  return haar_unitary(rows, rng).leftCols(cols);
}

CMatrix random_density(int dim, int rank, std::mt19937_64& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw Error(ErrorCode::DimensionMismatch, "random density needs 1 <= rank <= dim");
  }
  const CMatrix x = ginibre(dim, rank, rng);
  CMatrix rho = x * x.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

// --- support handling ------------------------------------------------------

CMatrix SpectralSupport::projector() const { return basis * basis.adjoint(); }

CMatrix SpectralSupport::power(double exponent) const {
  Eigen::VectorXd powered(eigenvalues.size());
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    powered(k) = std::pow(eigenvalues(k), exponent);
  }
  return basis * powered.cast<Complex>().asDiagonal() * basis.adjoint();
}

SpectralSupport spectral_support(const CMatrix& psd, double cutoff) {
  const auto eig = psd_eigen(psd, "support input");
  const Eigen::VectorXd& values = eig.eigenvalues();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) > cutoff) kept.push_back(k);
  }
  SpectralSupport out;
  out.basis.resize(psd.rows(), static_cast<Eigen::Index>(kept.size()));
  out.eigenvalues.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    out.basis.col(col) = eig.eigenvectors().col(kept[c]);
    out.eigenvalues(col) = values(kept[c]);
  }
  return out;
}

// --- checks ----------------------------------------------------------------

void require_density(const CMatrix& rho, double trace_tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw Error(ErrorCode::NotDensity, "state must be a non-empty square matrix");
  }
  if (!rho.allFinite()) {
    throw Error(ErrorCode::NotDensity, "state has non-finite entries");
  }
  const double herm = hermitian_deviation(rho);
  if (herm > 1e-9) {
    throw Error(ErrorCode::NotDensity, "state is not Hermitian", herm);
  }
  const double tr_dev = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (tr_dev > trace_tol) {
    throw Error(ErrorCode::NotDensity, "state trace differs from one", tr_dev);
  }
  const CMatrix sym = 0.5 * (rho + rho.adjoint());
  const double lowest =
      Eigen::SelfAdjointEigenSolver<CMatrix>(sym, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  if (lowest < -kPsdTolerance) {
    throw Error(ErrorCode::NotPSD, "state has a negative eigenvalue", lowest);
  }
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "comparing matrices of different shape");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double abs_tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         max_abs_diff(a, b) <= abs_tol;
}

double isometry_deviation(const CMatrix& a) {
  const CMatrix gram = a.adjoint() * a;
  return max_abs_diff(gram, CMatrix::Identity(gram.rows(), gram.cols()));
}

double hermitian_deviation(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix maximally_mixed(int dim) {
  return CMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

}  // namespace erasurekit
