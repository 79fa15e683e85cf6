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

// Reference implementations used as test oracles. They go through different
// Eigen routes than the library (BDC SVD, plain eigen-decompositions) and
// follow the textbook definitions literally.

#ifndef ERASUREKIT_TESTS_TEST_SUPPORT_HPP
#define ERASUREKIT_TESTS_TEST_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "erasurekit/channels.hpp"
#include "erasurekit/numerics.hpp"
#include "erasurekit/probes.hpp"

namespace erasurekit::testing {

inline std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(stream),
                    0x5eedu};
  return std::mt19937_64(seq);
}

inline CMatrix pauli(int j) {
  CMatrix s(2, 2);
  switch (j) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

inline CMatrix ket_bra(const CVector& a, const CVector& b) { return a * b.adjoint(); }

inline CVector basis(int dim, int i) {
  CVector v = CVector::Zero(dim);
  v(i) = 1.0;
  return v;
}

inline double oracle_trace_norm(const CMatrix& a) {
  return Eigen::BDCSVD<CMatrix>(a).singularValues().sum();
}

// Hermitian square root from a plain eigendecomposition; negatives clamped.
inline CMatrix oracle_sqrt(const CMatrix& p) {
  Eigen::SelfAdjointEigenSolver<CMatrix> sa(0.5 * (p + p.adjoint()));
  Eigen::VectorXd ev = sa.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return sa.eigenvectors() * ev.asDiagonal() * sa.eigenvectors().adjoint();
}

// F(rho, sigma) = Tr sqrt(sqrt(rho) sigma sqrt(rho)).
inline double oracle_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  const CMatrix s = oracle_sqrt(rho);
  const CMatrix inner = s * sigma * s;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (inner + inner.adjoint()));
  return es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

// <Omega|(E (x) 1)(|Omega><Omega|)|Omega> with |Omega> = sum_i sqrt(rho)|i>|i>.
inline double oracle_entanglement_fidelity(std::span<const CMatrix> ops, const CMatrix& rho) {
  const Eigen::Index d = rho.rows();
  const CMatrix s = oracle_sqrt(rho);
  CVector omega = CVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index a = 0; a < d; ++a) omega(a * d + i) = s(a, i);
  }
  double total = 0.0;
  for (const CMatrix& e : ops) {
    CVector out = CVector::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) out(a * d + i) += e(a, b) * omega(b * d + i);
      }
    }
    total += std::norm(omega.dot(out));
  }
  return total;
}

// sum_j ||E'_j rho||_1^2 through BDC SVD.
inline double oracle_assisted_fidelity(std::span<const CMatrix> refined, const CMatrix& rho) {
  double total = 0.0;
  for (const CMatrix& e : refined) {
    const double t = oracle_trace_norm(e * rho);
    total += t * t;
  }
  return total;
}

inline double oracle_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

// D(p(i,j) || p(i)p(j)) summed literally.
inline double oracle_mutual_information(const Eigen::MatrixXd& joint) {
  const Eigen::VectorXd pi = joint.rowwise().sum();
  const Eigen::VectorXd pj = joint.colwise().sum().transpose();
  double total = 0.0;
  for (Eigen::Index i = 0; i < joint.rows(); ++i) {
    for (Eigen::Index j = 0; j < joint.cols(); ++j) {
      const double v = joint(i, j);
      if (v > 0.0) total += v * std::log(v / (pi(i) * pj(j)));
    }
  }
  return total;
}

inline CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

inline double closed_form_eraser(double theta) { return 0.5 * (1.0 + std::abs(std::sin(2.0 * theta))); }

inline double closed_form_teleport(double lambda0) {
  return 0.5 * (1.0 + 2.0 * std::sqrt(lambda0 * (1.0 - lambda0)));
}

}  // namespace erasurekit::testing

#endif  // ERASUREKIT_TESTS_TEST_SUPPORT_HPP
