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

#include "erasurekit/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "erasurekit/error.hpp"

namespace erasurekit {

namespace {

constexpr double kCompletenessTolerance = 1e-9;

void require_dim(const KrausChannel& channel, const CMatrix& op, const char* what) {
  if (op.rows() != channel.dim() || op.cols() != channel.dim()) {
    std::ostringstream os;
    os << what << " is " << op.rows() << "x" << op.cols() << " but the channel acts on dim "
       << channel.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> operators) {
  if (operators.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "a channel needs at least one Kraus operator");
  }
  dim_ = static_cast<int>(operators.front().rows());
  if (dim_ < 1) {
    throw Error(ErrorCode::DimensionMismatch, "Kraus operators must be non-empty");
  }
  for (const CMatrix& op : operators) {
    if (op.rows() != dim_ || op.cols() != dim_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "Kraus operators must all be square of the same size");
    }
    if (!op.allFinite()) {
      throw Error(ErrorCode::NotTracePreserving, "Kraus operator has non-finite entries");
    }
    if (op.norm() >= kZeroOperatorNorm) operators_.push_back(op);
  }
  if (operators_.empty()) {
    throw Error(ErrorCode::NotTracePreserving, "every Kraus operator is zero", 1.0);
  }
}

double completeness_deviation(const KrausChannel& channel) {
  CMatrix sum = CMatrix::Zero(channel.dim(), channel.dim());
  for (const CMatrix& e : channel.operators()) sum += e.adjoint() * e;
  return max_abs_diff(sum, CMatrix::Identity(channel.dim(), channel.dim()));
}

void validate(const KrausChannel& channel) {
  const double dev = completeness_deviation(channel);
  if (dev > kCompletenessTolerance) {
    throw Error(ErrorCode::NotTracePreserving,
                "sum_k E_k^dagger E_k differs from the identity", dev);
  }
}

CMatrix apply(const KrausChannel& channel, const CMatrix& rho) {
  require_dim(channel, rho, "state");
  require_density(rho);
  CMatrix out = CMatrix::Zero(channel.dim(), channel.dim());
  for (const CMatrix& e : channel.operators()) out += e * rho * e.adjoint();
  return out;
}

CMatrix apply_dual(const KrausChannel& channel, const CMatrix& observable) {
  require_dim(channel, observable, "observable");
  CMatrix out = CMatrix::Zero(channel.dim(), channel.dim());
  for (const CMatrix& e : channel.operators()) out += e.adjoint() * observable * e;
  return out;
}

CMatrix DilationIsometry::env_block(int k) const {
  CMatrix block(sys_dim, sys_dim);
  for (int i = 0; i < sys_dim; ++i) block.row(i) = matrix.row(i * env_dim + k);
  return block;
}

DilationIsometry dilation(const KrausChannel& channel) {
  validate(channel);
  DilationIsometry v;
  v.sys_dim = channel.dim();
  v.env_dim = channel.size();
  v.matrix.resize(v.sys_dim * v.env_dim, v.sys_dim);
  for (int i = 0; i < v.sys_dim; ++i) {
    for (int k = 0; k < v.env_dim; ++k) {
      v.matrix.row(i * v.env_dim + k) = channel[k].row(i);
    }
  }
  return v;
}

CMatrix trace_out_env(const CMatrix& joint, int sys_dim, int env_dim) {
  if (joint.rows() != sys_dim * env_dim || joint.cols() != joint.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "joint operator has the wrong shape");
  }
  CMatrix out = CMatrix::Zero(sys_dim, sys_dim);
  for (int i = 0; i < sys_dim; ++i) {
    for (int j = 0; j < sys_dim; ++j) {
      for (int k = 0; k < env_dim; ++k) out(i, j) += joint(i * env_dim + k, j * env_dim + k);
    }
  }
  return out;
}

CMatrix trace_out_sys(const CMatrix& joint, int sys_dim, int env_dim) {
  if (joint.rows() != sys_dim * env_dim || joint.cols() != joint.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "joint operator has the wrong shape");
  }
  CMatrix out = CMatrix::Zero(env_dim, env_dim);
  for (int k = 0; k < env_dim; ++k) {
    for (int l = 0; l < env_dim; ++l) {
      for (int i = 0; i < sys_dim; ++i) out(k, l) += joint(i * env_dim + k, i * env_dim + l);
    }
  }
  return out;
}

CMatrix complementary_apply(const KrausChannel& channel, const CMatrix& rho) {
  require_dim(channel, rho, "state");
  require_density(rho);
  const int kraus = channel.size();
  CMatrix out(kraus, kraus);
  for (int k = 0; k < kraus; ++k) {
    const CMatrix ek_rho = channel[k] * rho;
    for (int l = 0; l < kraus; ++l) {
      out(k, l) = (channel[l].adjoint() * ek_rho).trace();
    }
  }
  return out;
}

CMatrix dual_effect(const KrausChannel& channel, int j) {
  if (j < 0 || j >= channel.size()) {
    std::ostringstream os;
    os << "Kraus index " << j << " outside [0, " << channel.size() << ")";
    throw Error(ErrorCode::IndexOutOfRange, os.str());
  }
  return channel[j].adjoint() * channel[j];
}

CMatrix choi_matrix(std::span<const CMatrix> operators) {
  if (operators.empty()) return CMatrix();
  const Eigen::Index d = operators.front().rows();
  CMatrix choi = CMatrix::Zero(d * d, d * d);
  CVector v(d * d);
  for (const CMatrix& e : operators) {
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index i = 0; i < d; ++i) v(a * d + i) = e(a, i);
    }
    choi.noalias() += v * v.adjoint();
  }
  return choi;
}

CMatrix choi_matrix(const KrausChannel& channel) {
  return choi_matrix(std::span<const CMatrix>(channel.operators()));
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "channels act on different dimensions");
  }
  return max_abs_diff(choi_matrix(a), choi_matrix(b));
}

bool same_channel(const KrausChannel& a, const KrausChannel& b, double tol) {
  return a.dim() == b.dim() && choi_distance(a, b) <= tol;
}

// --- presets ---------------------------------------------------------------

namespace {

double param_or(const PresetParams& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double unit_interval(const PresetParams& params, const std::string& key, double fallback) {
  const double v = param_or(params, key, fallback);
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    std::ostringstream os;
    os << key << " = " << v << " outside [0, 1]";
    throw Error(ErrorCode::ParamOutOfRange, os.str());
  }
  return v;
}

int positive_int(const PresetParams& params, const std::string& key, double fallback) {
  const double v = param_or(params, key, fallback);
  if (!std::isfinite(v) || v < 1.0 || v != std::floor(v) || v > 4096.0) {
    std::ostringstream os;
    os << key << " = " << v << " must be a positive integer";
    throw Error(ErrorCode::ParamOutOfRange, os.str());
  }
  return static_cast<int>(v);
}

void reject_unknown(const PresetParams& params, std::string_view preset,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || key == a;
    if (!ok) {
      std::ostringstream os;
      os << "preset " << preset << " has no parameter '" << key << "'";
      throw Error(ErrorCode::ParamOutOfRange, os.str());
    }
  }
}

CMatrix projector(int dim, int k) {
  CMatrix p = CMatrix::Zero(dim, dim);
  p(k, k) = 1.0;
  return p;
}

std::vector<CMatrix> paulis() {
  const Complex i(0.0, 1.0);
  CMatrix id = CMatrix::Identity(2, 2);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, -i, i, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  return {id, x, y, z};
}

// X^a Z^b for a, b in [0, d).
std::vector<CMatrix> weyl_operators(int dim) {
  CMatrix shift = CMatrix::Zero(dim, dim);
  CMatrix clock = CMatrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    shift((j + 1) % dim, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / dim);
  }
  std::vector<CMatrix> out;
  CMatrix xa = CMatrix::Identity(dim, dim);
  for (int a = 0; a < dim; ++a) {
    CMatrix zb = CMatrix::Identity(dim, dim);
    for (int b = 0; b < dim; ++b) {
      out.push_back(xa * zb);
      zb = zb * clock;
    }
    xa = xa * shift;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "identity",     "dephasing",   "depolarizing",          "amplitude_damping",
      "eraser_cnot",  "partial_teleportation", "random"};
  return names;
}

std::string_view preset_primary_param(std::string_view name) {
  if (name == "dephasing" || name == "depolarizing") return "p";
  if (name == "amplitude_damping") return "gamma";
  if (name == "partial_teleportation") return "lambda0";
  if (name == "identity") return "dim";
  return {};
}

KrausChannel preset(std::string_view name, const PresetParams& params) {
  std::vector<CMatrix> ops;
  if (name == "identity") {
    reject_unknown(params, name, {"dim"});
    const int dim = positive_int(params, "dim", 2);
    ops.push_back(CMatrix::Identity(dim, dim));
  } else if (name == "dephasing") {
    reject_unknown(params, name, {"p"});
    const double p = unit_interval(params, "p", 1.0);
    ops.push_back(std::sqrt(1.0 - p) * CMatrix::Identity(2, 2));
    ops.push_back(std::sqrt(p) * projector(2, 0));
    ops.push_back(std::sqrt(p) * projector(2, 1));
  } else if (name == "depolarizing") {
    reject_unknown(params, name, {"p", "dim"});
    const double p = unit_interval(params, "p", 1.0);
    const int dim = positive_int(params, "dim", 2);
    const double d2 = static_cast<double>(dim) * dim;
    const auto weyl = weyl_operators(dim);
    for (std::size_t k = 0; k < weyl.size(); ++k) {
      const double w = (k == 0 ? 1.0 - p : 0.0) + p / d2;
      ops.push_back(std::sqrt(w) * weyl[k]);
    }
  } else if (name == "amplitude_damping") {
    reject_unknown(params, name, {"gamma"});
    const double gamma = unit_interval(params, "gamma", 1.0);
    CMatrix e0 = CMatrix::Zero(2, 2);
    CMatrix e1 = CMatrix::Zero(2, 2);
    e0(0, 0) = 1.0;
    e0(1, 1) = std::sqrt(1.0 - gamma);
    e1(0, 1) = std::sqrt(gamma);
    ops = {e0, e1};
  } else if (name == "eraser_cnot") {
    reject_unknown(params, name, {});
    ops = {projector(2, 0), projector(2, 1)};
  } else if (name == "partial_teleportation") {
    reject_unknown(params, name, {"lambda0"});
    const double l0 = unit_interval(params, "lambda0", 0.5);
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = std::sqrt(l0);
    d(1, 1) = std::sqrt(1.0 - l0);
    for (const CMatrix& s : paulis()) ops.push_back(d * s / std::sqrt(2.0));
  } else if (name == "random") {
    reject_unknown(params, name, {"dim", "kraus", "seed"});
    const int dim = positive_int(params, "dim", 2);
    const int kraus = positive_int(params, "kraus", 2);
    const double seed = param_or(params, "seed", 0.0);
    if (!(seed >= 0.0) || seed != std::floor(seed) || seed > 9007199254740992.0) {
      throw Error(ErrorCode::ParamOutOfRange, "seed must be a nonnegative integer");
    }
    return random_channel(dim, kraus, static_cast<std::uint64_t>(seed));
  } else {
    throw Error(ErrorCode::UnknownPreset, "no preset named '" + std::string(name) + "'");
  }
  KrausChannel channel(std::move(ops));
  validate(channel);
  return channel;
}

KrausChannel random_channel(int dim, int kraus, std::mt19937_64& rng) {
  if (dim < 1 || kraus < 1) {
    throw Error(ErrorCode::ParamOutOfRange, "random channel needs dim >= 1 and kraus >= 1");
  }
  const CMatrix g = ginibre(dim * kraus, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix v = qr.householderQ() * CMatrix::Identity(dim * kraus, dim);
  std::vector<CMatrix> ops;
  ops.reserve(static_cast<std::size_t>(kraus));
  for (int k = 0; k < kraus; ++k) ops.push_back(v.block(k * dim, 0, dim, dim));
  KrausChannel channel(std::move(ops));
  validate(channel);
  return channel;
}

KrausChannel random_channel(int dim, int kraus, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_channel(dim, kraus, rng);
}

}  // namespace erasurekit
