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

#include "erasurekit/probes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "erasurekit/error.hpp"

namespace erasurekit {

// --- ProbeMeasurement ------------------------------------------------------

ProbeMeasurement::ProbeMeasurement(CMatrix mixing) : mixing_(std::move(mixing)) {
  if (mixing_.cols() < 1 || mixing_.rows() < mixing_.cols()) {
    std::ostringstream os;
    os << "mixing matrix is " << mixing_.rows() << "x" << mixing_.cols()
       << "; need outcomes >= Kraus count >= 1";
    throw Error(ErrorCode::NotIsometry, os.str());
  }
  if (!mixing_.allFinite()) {
    throw Error(ErrorCode::NotIsometry, "mixing matrix has non-finite entries");
  }
  const double dev = isometry_deviation(mixing_);
  if (dev > kIsometryTolerance) {
    throw Error(ErrorCode::NotIsometry, "W^dagger W differs from the identity", dev);
  }
}

ProbeMeasurement ProbeMeasurement::canonical(int kraus) {
  return ProbeMeasurement(CMatrix::Identity(kraus, kraus));
}

ProbeMeasurement ProbeMeasurement::hadamard() {
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return ProbeMeasurement(h / std::sqrt(2.0));
}

ProbeMeasurement ProbeMeasurement::rotation(double theta) {
  CMatrix w(2, 2);
  w << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return ProbeMeasurement(w);
}

bool same_measurement(const ProbeMeasurement& a, const ProbeMeasurement& b, double tol) {
  if (a.mixing().rows() != b.mixing().rows() || a.mixing().cols() != b.mixing().cols()) {
    return false;
  }
  for (Eigen::Index j = 0; j < a.mixing().rows(); ++j) {
    const Complex overlap = b.mixing().row(j).dot(a.mixing().row(j));
    const double mag = std::abs(overlap);
    const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
    if ((a.mixing().row(j) - phase * b.mixing().row(j)).cwiseAbs().maxCoeff() > tol) {
      return false;
    }
  }
  return true;
}

std::vector<CMatrix> refine(const KrausChannel& channel, const ProbeMeasurement& meas) {
  if (meas.kraus() != channel.size()) {
    std::ostringstream os;
    os << "measurement mixes " << meas.kraus() << " Kraus operators but the channel has "
       << channel.size();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const CMatrix& w = meas.mixing();
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(meas.outcomes()));
  for (int j = 0; j < meas.outcomes(); ++j) {
    CMatrix e = CMatrix::Zero(channel.dim(), channel.dim());
    for (int k = 0; k < channel.size(); ++k) e += w(j, k) * channel[k];
    out.push_back(std::move(e));
  }
  return out;
}

// --- Ensemble --------------------------------------------------------------

namespace {

ProbVector ensemble_weights(const std::vector<CMatrix>& members) {
  if (members.empty()) {
    throw Error(ErrorCode::InvalidEnsemble, "ensemble has no members");
  }
  const Eigen::Index d = members.front().rows();
  std::vector<double> weights;
  weights.reserve(members.size());
  for (const CMatrix& m : members) {
    if (m.rows() != d || m.cols() != d || d == 0) {
      throw Error(ErrorCode::InvalidEnsemble, "members must be square of equal size");
    }
    if (!m.allFinite() || hermitian_deviation(m) > 1e-10) {
      throw Error(ErrorCode::InvalidEnsemble, "member is not Hermitian");
    }
    const double lowest =
        Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly)
            .eigenvalues()
            .minCoeff();
    if (lowest < -1e-10) {
      throw Error(ErrorCode::InvalidEnsemble, "member is not PSD", lowest);
    }
    const double w = m.trace().real();
    if (!(w > 0.0)) {
      throw Error(ErrorCode::InvalidEnsemble, "member has zero weight", w);
    }
    weights.push_back(w);
  }
  double total = 0.0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidEnsemble, "member traces do not sum to one", total - 1.0);
  }
  return ProbVector::normalized(std::move(weights));
}

}  // namespace

Ensemble::Ensemble(std::vector<CMatrix> members)
    : members_(std::move(members)), weights_(ensemble_weights(members_)) {
  average_ = CMatrix::Zero(members_.front().rows(), members_.front().cols());
  for (const CMatrix& m : members_) average_ += m;
}

Ensemble random_ensemble(const CMatrix& rho, int members, std::mt19937_64& rng,
                         double min_weight) {
  if (members < 1) {
    throw Error(ErrorCode::InvalidEnsemble, "ensemble needs at least one member");
  }
  require_density(rho);
  const SpectralSupport support = spectral_support(rho);
  const int r = support.rank();
  const CMatrix rho_sqrt = support.power(0.5);
  std::uniform_real_distribution<double> scale(0.05, 1.0);

  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<CMatrix> g;
    CMatrix total = CMatrix::Zero(r, r);
    for (int i = 0; i < members; ++i) {
      const CMatrix x = ginibre(r, r, rng);
      g.push_back(scale(rng) * x * x.adjoint());
      total += g.back();
    }
    const SpectralSupport t = spectral_support(total, 0.0);
    if (t.rank() < r) continue;
    const CMatrix t_inv_sqrt = t.power(-0.5);

    std::vector<CMatrix> out;
    bool heavy_enough = true;
    for (const CMatrix& gi : g) {
      const CMatrix effect = support.basis * (t_inv_sqrt * gi * t_inv_sqrt) * support.basis.adjoint();
      CMatrix member = rho_sqrt * effect * rho_sqrt;
      member = 0.5 * (member + member.adjoint());
      heavy_enough = heavy_enough && member.trace().real() >= min_weight;
      out.push_back(std::move(member));
    }
    if (heavy_enough) return Ensemble(std::move(out));
  }
  throw Error(ErrorCode::InvalidEnsemble, "could not draw an ensemble with the requested minimum weight");
}

Ensemble random_ensemble(const CMatrix& rho, int members, std::uint64_t seed, double min_weight) {
  std::mt19937_64 rng(seed);
  return random_ensemble(rho, members, rng, min_weight);
}

// --- statistics ------------------------------------------------------------

Eigen::MatrixXd joint_distribution(const KrausChannel& channel, const Ensemble& ensemble,
                                   const ProbeMeasurement& meas) {
  if (ensemble.dim() != channel.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "ensemble and channel dimensions differ");
  }
  const auto refined = refine(channel, meas);
  Eigen::MatrixXd p(ensemble.size(), meas.outcomes());
  for (int j = 0; j < meas.outcomes(); ++j) {
    const CMatrix effect = refined[static_cast<std::size_t>(j)].adjoint() *
                           refined[static_cast<std::size_t>(j)];
    for (int i = 0; i < ensemble.size(); ++i) {
      const double v = (ensemble.members()[static_cast<std::size_t>(i)] * effect).trace().real();
      p(i, j) = v < 0.0 && v > -1e-12 ? 0.0 : v;
    }
  }
  return p;
}

double mutual_information(const Eigen::MatrixXd& joint) {
  if (joint.size() == 0) {
    throw Error(ErrorCode::NotNormalized, "joint distribution is empty");
  }
  if (!joint.allFinite() || joint.minCoeff() < -1e-12) {
    throw Error(ErrorCode::NotNormalized, "joint distribution has negative entries",
                joint.minCoeff());
  }
  const double total = joint.sum();
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, "joint distribution does not sum to one", total - 1.0);
  }
  const Eigen::MatrixXd p = joint.cwiseMax(0.0) / total;
  const Eigen::VectorXd rows = p.rowwise().sum();
  const Eigen::RowVectorXd cols = p.colwise().sum();
  auto entropy = [](auto&& values) {
    double h = 0.0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      const double v = values(k);
      if (v > 0.0) h -= v * std::log(v);
    }
    return h;
  };
  const Eigen::VectorXd flat = p.reshaped();
  return std::max(0.0, entropy(rows) + entropy(cols) - entropy(flat));
}

// --- informationally complete ensembles --------------------------------------

CMatrix ICEnsemble::reconstruct(const CMatrix& op) const {
  CMatrix out = CMatrix::Zero(op.rows(), op.cols());
  for (std::size_t i = 0; i < frame_effects.size(); ++i) {
    out += (op * frame_effects[i]).trace() * dual_frame[i];
  }
  return out;
}

CMatrix ICEnsemble::reconstruct(std::span<const double> expectations) const {
  if (expectations.size() != dual_frame.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one expectation per frame element is required");
  }
  CMatrix out = CMatrix::Zero(dual_frame.front().rows(), dual_frame.front().cols());
  for (std::size_t i = 0; i < dual_frame.size(); ++i) out += expectations[i] * dual_frame[i];
  return out;
}

ICEnsemble ic_ensemble(const CMatrix& rho, int members, std::uint64_t seed) {
  require_density(rho);
  const SpectralSupport support = spectral_support(rho);
  const int r = support.rank();
  const int r2 = r * r;
  if (members < r2) {
    std::ostringstream os;
    os << members << " members cannot span the " << r2 << " operators on a rank-" << r
       << " support";
    throw Error(ErrorCode::InsufficientFrame, os.str());
  }

  std::mt19937_64 rng(seed);
  std::vector<CVector> vectors;
  CMatrix frame_op = CMatrix::Zero(r, r);
  for (int i = 0; i < members; ++i) {
    CVector u = ginibre(r, 1, rng).col(0);
    u.normalize();
    frame_op += u * u.adjoint();
    vectors.push_back(std::move(u));
  }
  const SpectralSupport a = spectral_support(frame_op, 0.0);
  if (a.rank() < r || a.eigenvalues.minCoeff() < 1e-12 * a.eigenvalues.maxCoeff()) {
    throw Error(ErrorCode::SingularAverage, "frame vectors do not span the support");
  }
  const CMatrix a_inv_sqrt = a.power(-0.5);

  // Local (support-coordinate) effects and members.
  const Eigen::VectorXd sqrt_lambda = support.eigenvalues.cwiseSqrt();
  std::vector<CMatrix> local_effects;
  std::vector<CMatrix> ensemble_members;
  Eigen::MatrixXcd frame(members, r2);
  for (int i = 0; i < members; ++i) {
    const CVector q = a_inv_sqrt * vectors[static_cast<std::size_t>(i)];
    CMatrix effect = q * q.adjoint();
    // Tr[O P] = sum_ab O(a, b) P(b, a) with row-major vec(O).
    for (int x = 0; x < r; ++x) {
      for (int y = 0; y < r; ++y) frame(i, x * r + y) = effect(y, x);
    }
    const CMatrix local_member =
        sqrt_lambda.cast<Complex>().asDiagonal() * effect * sqrt_lambda.cast<Complex>().asDiagonal();
    CMatrix member = support.basis * local_member * support.basis.adjoint();
    ensemble_members.push_back(0.5 * (member + member.adjoint()));
    local_effects.push_back(std::move(effect));
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(frame, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv(0));
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) rank += sv(k) > cutoff ? 1 : 0;
  if (rank < r2) {
    std::ostringstream os;
    os << "frame rank " << rank << " < " << r2;
    throw Error(ErrorCode::InsufficientFrame, os.str());
  }
  const Eigen::MatrixXcd pinv =
      svd.matrixV() * sv.cwiseInverse().cast<Complex>().asDiagonal() * svd.matrixU().adjoint();

  ICEnsemble out{Ensemble(std::move(ensemble_members)), {}, {}, 0.0, rank, r};
  for (int i = 0; i < members; ++i) {
    CMatrix local_dual(r, r);
    for (int x = 0; x < r; ++x) {
      for (int y = 0; y < r; ++y) local_dual(x, y) = pinv(x * r + y, i);
    }
    CMatrix dual = support.basis * local_dual * support.basis.adjoint();
    dual = 0.5 * (dual + dual.adjoint());
    out.gamma = std::max(out.gamma, trace_norm(dual));
    out.dual_frame.push_back(std::move(dual));
    out.frame_effects.push_back(support.basis * local_effects[static_cast<std::size_t>(i)] *
                                support.basis.adjoint());
  }
  return out;
}

}  // namespace erasurekit
