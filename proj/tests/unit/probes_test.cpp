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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "erasurekit/error.hpp"
#include "test_support.hpp"

namespace erasurekit {
namespace {

using testing::basis;
using testing::ket_bra;
using testing::pauli;
using testing::rng_for;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no erasurekit::Error thrown";
  return ErrorCode::DimensionMismatch;
}

CMatrix proj(int dim, int i) { return ket_bra(basis(dim, i), basis(dim, i)); }

KrausChannel projector_pair() { return KrausChannel({proj(2, 0), proj(2, 1)}); }

Ensemble computational_halves() { return Ensemble({0.5 * proj(2, 0), 0.5 * proj(2, 1)}); }

CMatrix trine() {
  CMatrix w(3, 2);
  for (int j = 0; j < 3; ++j) {
    const double a = 2.0 * std::numbers::pi * j / 3.0;
    w(j, 0) = std::sqrt(2.0 / 3.0) * std::cos(a);
    w(j, 1) = std::sqrt(2.0 / 3.0) * std::sin(a);
  }
  return w;
}

// ------------------------------------------------------------ ProbeMeasurement

TEST(ProbeMeasurementType, Validation) {
  EXPECT_NO_THROW(ProbeMeasurement{trine()});
  // Fewer outcomes than Kraus operators cannot satisfy W^dagger W = I.
  EXPECT_EQ(code_of([] { ProbeMeasurement(CMatrix::Identity(2, 3)); }), ErrorCode::NotIsometry);
  EXPECT_EQ(code_of([] { ProbeMeasurement(2.0 * CMatrix::Identity(2, 2)); }),
            ErrorCode::NotIsometry);
}

TEST(ProbeMeasurementType, Factories) {
  const ProbeMeasurement h = ProbeMeasurement::hadamard();
  EXPECT_NEAR(std::abs(h.mixing()(1, 1) + 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_EQ(ProbeMeasurement::canonical(3).outcomes(), 3);
  EXPECT_TRUE(same_measurement(ProbeMeasurement::rotation(0.0), ProbeMeasurement::canonical(2),
                               1e-15));
}

TEST(ProbeMeasurementType, EqualityUpToRowPhases) {
  CMatrix w = ProbeMeasurement::hadamard().mixing();
  w.row(0) *= std::polar(1.0, 0.7);
  w.row(1) *= -1.0;
  EXPECT_TRUE(same_measurement(ProbeMeasurement(w), ProbeMeasurement::hadamard(), 1e-12));
  CMatrix v = ProbeMeasurement::hadamard().mixing();
  v.col(1) *= Complex(0.0, 1.0);
  EXPECT_FALSE(same_measurement(ProbeMeasurement(v), ProbeMeasurement::hadamard(), 1e-12));
}

// -------------------------------------------------------------------- refine

TEST(Refine, CanonicalLeavesOperatorsUnchanged) {
  const KrausChannel ch = random_channel(3, 4, 2);
  const auto refined = refine(ch, ProbeMeasurement::canonical(4));
  for (int k = 0; k < 4; ++k) EXPECT_EQ(max_abs_diff(refined[k], ch[k]), 0.0);
}

TEST(Refine, DephasingHadamard) {
  const auto refined = refine(projector_pair(), ProbeMeasurement::hadamard());
  EXPECT_LT(max_abs_diff(refined[0], pauli(0) / std::sqrt(2.0)), 1e-15);
  EXPECT_LT(max_abs_diff(refined[1], pauli(3) / std::sqrt(2.0)), 1e-15);
}

TEST(Refine, TrineKeepsCompleteness) {
  const auto refined = refine(projector_pair(), ProbeMeasurement(trine()));
  ASSERT_EQ(refined.size(), 3u);
  CMatrix sum = CMatrix::Zero(2, 2);
  for (const CMatrix& e : refined) sum += e.adjoint() * e;
  EXPECT_LT(max_abs_diff(sum, CMatrix::Identity(2, 2)), 1e-10);
}

TEST(Refine, MismatchedKrausCount) {
  EXPECT_EQ(code_of([] { refine(projector_pair(), ProbeMeasurement::canonical(3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Refine, SameChannelProperty) {
  auto rng = rng_for(200);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 2;
    const int k = 1 + trial % (d * d);
    const int m = k + trial % 3;
    const KrausChannel ch = random_channel(d, k, rng);
    const ProbeMeasurement meas(haar_isometry(m, k, rng));
    const auto refined = refine(ch, meas);
    EXPECT_LT(max_abs_diff(choi_matrix(std::span<const CMatrix>(refined)), choi_matrix(ch)), 1e-9);
    CMatrix sum = CMatrix::Zero(d, d);
    for (const CMatrix& e : refined) sum += e.adjoint() * e;
    EXPECT_LT(max_abs_diff(sum, CMatrix::Identity(d, d)), 1e-9);
  }
}

// ------------------------------------------------------------------ Ensemble

TEST(EnsembleType, WeightsAverageBeta) {
  const Ensemble e({0.25 * proj(2, 0), 0.75 * proj(2, 1)});
  EXPECT_NEAR(e.weights()[0], 0.25, 1e-15);
  EXPECT_NEAR(e.beta(), 0.25, 1e-15);
  CMatrix avg = CMatrix::Zero(2, 2);
  avg(0, 0) = 0.25;
  avg(1, 1) = 0.75;
  EXPECT_LT(max_abs_diff(e.average(), avg), 1e-15);
}

TEST(EnsembleType, Rejections) {
  EXPECT_EQ(code_of([] { Ensemble({}); }), ErrorCode::InvalidEnsemble);
  EXPECT_EQ(code_of([] { Ensemble({proj(2, 0), proj(2, 1)}); }), ErrorCode::InvalidEnsemble);
  EXPECT_EQ(code_of([] { Ensemble({proj(2, 0), CMatrix::Zero(2, 2)}); }),
            ErrorCode::InvalidEnsemble);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_EQ(code_of([&] { Ensemble({neg}); }), ErrorCode::InvalidEnsemble);
  EXPECT_EQ(code_of([] { Ensemble({0.5 * proj(2, 0), 0.5 * proj(3, 0)}); }),
            ErrorCode::InvalidEnsemble);
}

TEST(EnsembleType, RandomEnsembleAveragesToRho) {
  auto rng = rng_for(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 2;
    const CMatrix rho = random_density(d, 1 + trial % d, rng);
    const Ensemble e = random_ensemble(rho, 2 + trial % 5, rng, 1e-3);
    EXPECT_LT(max_abs_diff(e.average(), rho), 1e-9);
    EXPECT_GE(e.beta(), 1e-3);
  }
  const CMatrix mixed = maximally_mixed(2);
  const Ensemble a = random_ensemble(mixed, 4, 9);
  const Ensemble b = random_ensemble(mixed, 4, 9);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(max_abs_diff(a.members()[i], b.members()[i]), 0.0);
}

// -------------------------------------------------------- joint distribution

TEST(Joint, DephasingCanonicalIsDiagonal) {
  const Eigen::MatrixXd p =
      joint_distribution(projector_pair(), computational_halves(), ProbeMeasurement::canonical(2));
  EXPECT_NEAR(p(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(p(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(p(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(p(1, 0), 0.0, 1e-15);
}

TEST(Joint, DephasingHadamardIsUniform) {
  const Eigen::MatrixXd p =
      joint_distribution(projector_pair(), computational_halves(), ProbeMeasurement::hadamard());
  EXPECT_LT((p.array() - 0.25).abs().maxCoeff(), 1e-15);
}

TEST(Joint, SingleMemberIsProduct) {
  const KrausChannel ch = random_channel(2, 3, 6);
  auto rng = rng_for(6);
  const CMatrix rho = random_density(2, 2, rng);
  const Eigen::MatrixXd p = joint_distribution(ch, Ensemble({rho}), ProbeMeasurement::canonical(3));
  ASSERT_EQ(p.rows(), 1);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(p(0, j), (rho * dual_effect(ch, j)).trace().real(), 1e-14);
  EXPECT_LT(mutual_information(p), 1e-14);
}

TEST(Joint, MarginalsProperty) {
  auto rng = rng_for(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 2;
    const int k = 2 + trial % (d * d - 1);
    const KrausChannel ch = random_channel(d, k, rng);
    const ProbeMeasurement meas(haar_isometry(k + 1, k, rng));
    const CMatrix rho = random_density(d, d, rng);
    const Ensemble e = random_ensemble(rho, 2 + trial % 5, rng);
    const Eigen::MatrixXd p = joint_distribution(ch, e, meas);
    EXPECT_NEAR(p.sum(), 1.0, 1e-9);
    EXPECT_GE(p.minCoeff(), 0.0);
    for (int i = 0; i < e.size(); ++i) {
      EXPECT_NEAR(p.row(i).sum(), e.members()[i].trace().real(), 1e-10);
    }
  }
}

// -------------------------------------------------------- mutual information

TEST(MutualInformation, Examples) {
  Eigen::MatrixXd product(2, 3);
  product << 0.1, 0.2, 0.2, 0.1, 0.2, 0.2;
  EXPECT_NEAR(mutual_information(product), 0.0, 1e-15);

  Eigen::MatrixXd diag(2, 2);
  diag << 0.5, 0.0, 0.0, 0.5;
  EXPECT_NEAR(mutual_information(diag), std::numbers::ln2, 1e-15);

  Eigen::MatrixXd skew(2, 2);
  skew << 0.5, 0.0, 0.25, 0.25;
  // H(p(i)) + H(p(j)) - H(p(i,j)) term by term.
  const double expected = testing::oracle_entropy({0.5, 0.5}) +
                          testing::oracle_entropy({0.75, 0.25}) -
                          testing::oracle_entropy({0.5, 0.25, 0.25});
  EXPECT_NEAR(mutual_information(skew), expected, 1e-15);
  EXPECT_NEAR(mutual_information(skew), 0.21576155433883568, 1e-12);
}

TEST(MutualInformation, NotNormalized) {
  Eigen::MatrixXd bad(1, 2);
  bad << 0.5, 0.6;
  EXPECT_EQ(code_of([&] { mutual_information(bad); }), ErrorCode::NotNormalized);
  bad << 1.5, -0.5;
  EXPECT_EQ(code_of([&] { mutual_information(bad); }), ErrorCode::NotNormalized);
}

Eigen::MatrixXd random_joint(int n, int m, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Eigen::MatrixXd p(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) p(i, j) = e(rng);
  }
  return p / p.sum();
}

TEST(MutualInformation, EqualsRelativeEntropyToProduct) {
  auto rng = rng_for(55);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::MatrixXd p = random_joint(2 + trial % 4, 2 + trial % 5, rng);
    EXPECT_NEAR(mutual_information(p), testing::oracle_mutual_information(p), 1e-10);
  }
}

TEST(MutualInformation, MergingOutcomesNeverIncreases) {
  auto rng = rng_for(56);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::MatrixXd p = random_joint(2 + trial % 4, 3 + trial % 4, rng);
    Eigen::MatrixXd merged(p.rows(), p.cols() - 1);
    merged.col(0) = p.col(0) + p.col(1);
    merged.rightCols(p.cols() - 2) = p.rightCols(p.cols() - 2);
    EXPECT_LE(mutual_information(merged), mutual_information(p) + 1e-10);
  }
}

// Physical version: coarse-graining probe outcomes of a refined channel.
TEST(MutualInformation, CoarseGrainedProbeProperty) {
  auto rng = rng_for(57);
  for (int trial = 0; trial < 50; ++trial) {
    const KrausChannel ch = random_channel(2, 3, rng);
    const CMatrix rho = random_density(2, 2, rng);
    const Ensemble e = random_ensemble(rho, 3, rng);
    const Eigen::MatrixXd p = joint_distribution(ch, e, ProbeMeasurement(haar_isometry(4, 3, rng)));
    Eigen::MatrixXd merged(p.rows(), 3);
    merged << p.col(0) + p.col(3), p.col(1), p.col(2);
    EXPECT_LE(mutual_information(merged), mutual_information(p) + 1e-10);
  }
}

// ---------------------------------------------------------------- IC frames

TEST(ICEnsembleTest, QubitPauliReconstruction) {
  const ICEnsemble ic = ic_ensemble(maximally_mixed(2), 4, 7);
  EXPECT_EQ(ic.frame_rank, 4);
  EXPECT_EQ(ic.support_rank, 2);
  for (int s = 0; s < 4; ++s) {
    EXPECT_LT(max_abs_diff(ic.reconstruct(pauli(s)), pauli(s)), 1e-10) << s;
  }
  EXPECT_LT(max_abs_diff(ic.reconstruct(maximally_mixed(2)), maximally_mixed(2)), 1e-10);
  EXPECT_TRUE(std::isfinite(ic.gamma));
  EXPECT_GE(ic.gamma, 0.0);
}

TEST(ICEnsembleTest, ReconstructsRhoAndSumsToIt) {
  auto rng = rng_for(58);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 2;
    const int r = 1 + trial % d;
    const CMatrix rho = random_density(d, r, rng);
    const ICEnsemble ic = ic_ensemble(rho, r * r + trial % 5, 1000 + trial);
    EXPECT_EQ(ic.frame_rank, r * r);
    EXPECT_LT(max_abs_diff(ic.base.average(), rho), 1e-9);
    EXPECT_GT(ic.base.beta(), 0.0);
    EXPECT_LT(max_abs_diff(ic.reconstruct(rho), rho), 1e-8);

    // A Hermitian operator living on supp(rho).
    const CMatrix pr = spectral_support(rho).projector();
    const CMatrix o = pr * testing::random_hermitian(d, rng) * pr;
    EXPECT_LT(max_abs_diff(ic.reconstruct(o), o), 1e-8);

    // gamma = max_i ||rho'_i||_1.
    double gamma = 0.0;
    for (const CMatrix& dual : ic.dual_frame) gamma = std::max(gamma, testing::oracle_trace_norm(dual));
    EXPECT_NEAR(ic.gamma, gamma, 1e-10);

    // P_i sum to the projector onto the support.
    CMatrix sum = CMatrix::Zero(d, d);
    for (const CMatrix& p : ic.frame_effects) sum += p;
    EXPECT_LT(max_abs_diff(sum, pr), 1e-9);
  }
}

TEST(ICEnsembleTest, InsufficientFrame) {
  EXPECT_EQ(code_of([] { ic_ensemble(maximally_mixed(2), 3, 1); }), ErrorCode::InsufficientFrame);
}

TEST(ICEnsembleTest, Deterministic) {
  const ICEnsemble a = ic_ensemble(maximally_mixed(3), 11, 5);
  const ICEnsemble b = ic_ensemble(maximally_mixed(3), 11, 5);
  EXPECT_EQ(a.gamma, b.gamma);
  for (std::size_t i = 0; i < a.dual_frame.size(); ++i) {
    EXPECT_EQ(max_abs_diff(a.dual_frame[i], b.dual_frame[i]), 0.0);
  }
}

}  // namespace
}  // namespace erasurekit
