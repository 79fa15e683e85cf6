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

#include "erasurekit/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace erasurekit::cli {

namespace {

[[noreturn]] void fail(std::string_view field, std::string_view problem) {
  throw InputError(std::string(field) + ": " + std::string(problem));
}

double finite_number(const json& j, std::string_view field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "number is not finite");
  return v;
}

const json& member(const json& j, const char* key, std::string_view where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string(where) + "." + key, "missing");
  return *it;
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, std::string_view field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty list of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail(field, "rows must be non-empty lists");
  const std::size_t cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_field = std::string(field) + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) fail(row_field, "ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string entry = row_field + "[" + std::to_string(c) + "]";
      const json& z = j[r][c];
      if (!z.is_array() || z.size() != 2) fail(entry, "expected an [re, im] pair");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(finite_number(z[0], entry), finite_number(z[1], entry));
    }
  }
  return m;
}

json channel_to_json(const KrausChannel& channel) {
  json ops = json::array();
  for (const CMatrix& e : channel.operators()) ops.push_back(matrix_to_json(e));
  return {{"dim", channel.dim()}, {"kraus", std::move(ops)}};
}

KrausChannel channel_from_json(const json& j) {
  if (!j.is_object()) fail("channel", "expected an object");
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) fail("channel.preset", "expected a string");
    PresetParams params;
    if (j.contains("params")) {
      const json& p = j["params"];
      if (!p.is_object()) fail("channel.params", "expected an object");
      for (const auto& [key, value] : p.items()) {
        params[key] = finite_number(value, "channel.params." + key);
      }
    }
    return preset(j["preset"].get<std::string>(), params);
  }
  const json& dim = member(j, "dim", "channel");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    fail("channel.dim", "expected a positive integer");
  }
  const json& kraus = member(j, "kraus", "channel");
  if (!kraus.is_array() || kraus.empty()) fail("channel.kraus", "expected a non-empty list");
  std::vector<CMatrix> ops;
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    const std::string field = "channel.kraus[" + std::to_string(k) + "]";
    CMatrix e = matrix_from_json(kraus[k], field);
    if (e.rows() != dim.get<long long>() || e.cols() != dim.get<long long>()) {
      fail(field, "shape does not match channel.dim");
    }
    ops.push_back(std::move(e));
  }
  KrausChannel channel(std::move(ops));
  validate(channel);
  return channel;
}

json ensemble_to_json(const Ensemble& ensemble) {
  json members = json::array();
  for (const CMatrix& m : ensemble.members()) members.push_back(matrix_to_json(m));
  return {{"members", std::move(members)}};
}

Ensemble ensemble_from_json(const json& j) {
  const json& members = member(j, "members", "ensemble");
  if (!members.is_array() || members.empty()) fail("ensemble.members", "expected a non-empty list");
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    out.push_back(matrix_from_json(members[i], "ensemble.members[" + std::to_string(i) + "]"));
  }
  return Ensemble(std::move(out));
}

json measurement_to_json(const ProbeMeasurement& meas) {
  return {{"mixing", matrix_to_json(meas.mixing())}};
}

ProbeMeasurement measurement_from_json(const json& j) {
  return ProbeMeasurement(matrix_from_json(member(j, "mixing", "measurement"), "measurement.mixing"));
}

CMatrix state_from_json(const json& j) {
  CMatrix rho = matrix_from_json(member(j, "state", "state"), "state.state");
  require_density(rho);
  return rho;
}

json report_to_json(const ErasureReport& report) {
  json out = {
      {"f_e", report.f_e},
      {"f_ea", report.f_ea},
      {"f_ea_two_path", report.f_ea_two_path},
      {"mutual_info", report.mutual_info},
      {"beta", report.beta},
      {"gamma", report.gamma ? json(*report.gamma) : json(nullptr)},
      {"outcomes", report.outcomes},
      {"kept_outcomes", report.kept_outcomes},
      {"rho_invertible", report.rho_invertible},
  };
  if (report.direct) {
    const DirectChain& c = *report.direct;
    out["direct"] = {
        {"sum_trace_distance_sq", c.sum_trace_distance_sq},
        {"sum_classical_l1_sq", c.sum_classical_l1_sq},
        {"sum_conditional_divergence", c.sum_conditional_divergence},
        {"bound_fidelity_trace", c.bound_fidelity_trace},
        {"bound_measurement_l1", c.bound_measurement_l1},
        {"bound_pinsker", c.bound_pinsker},
        {"bound_information", c.bound_information},
        {"mixture_identity_residual", c.mixture_identity_residual},
        {"slack_fidelity_trace", c.slack_fidelity_trace},
        {"slack_measurement_l1", c.slack_measurement_l1},
        {"slack_pinsker", c.slack_pinsker},
        {"slack_total", c.slack_total},
    };
  }
  if (report.converse) {
    const ConverseChain& c = *report.converse;
    out["converse"] = {
        {"frame_members", c.frame_members},
        {"frame_seed", c.frame_seed},
        {"gamma", c.gamma},
        {"beta", c.beta},
        {"mutual_info", c.mutual_info},
        {"sum_trace_distance", c.sum_trace_distance},
        {"sum_classical_l1", c.sum_classical_l1},
        {"reconstruction_residual", c.reconstruction_residual},
        {"bound_fidelity_trace", c.bound_fidelity_trace},
        {"bound_frame", c.bound_frame},
        {"bound_information", c.bound_information},
        {"slack_fidelity_trace", c.slack_fidelity_trace},
        {"slack_frame", c.slack_frame},
        {"slack_information", c.slack_information},
        {"slack_converse", c.slack_converse},
    };
  }
  const double worst = report.worst_slack();
  out["worst_slack"] = std::isfinite(worst) ? json(worst) : json(nullptr);
  return out;
}

json optimization_to_json(const OptimizationResult& result) {
  return {
      {"best_value", result.best_value},
      {"best_mixing", matrix_to_json(result.best_mixing.mixing())},
      {"best_restart", result.best_restart},
      {"restarts_run", result.restarts_run},
      {"iterations", result.best_iterations},
      {"converged", result.converged},
      {"oracle_value", result.oracle_value ? json(*result.oracle_value) : json(nullptr)},
  };
}

json verdict_to_json(const RandomUnitaryVerdict& verdict) {
  json witness = json::array();
  for (const RandomUnitaryTerm& t : verdict.witness) {
    witness.push_back({{"weight", t.weight}, {"unitary", matrix_to_json(t.unitary)}});
  }
  return {
      {"is_random_unitary", verdict.is_random_unitary},
      {"best_value", verdict.best_value},
      {"residual", verdict.residual},
      {"choi_residual", verdict.choi_residual},
      {"max_mutual_info", verdict.max_mutual_info},
      {"witness", std::move(witness)},
  };
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) os << ',';
    os << row[i];
  }
  os << '\n';
}

void write_csv_row(std::ostream& os, const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) cells.push_back(format_double(v));
  write_csv_row(os, cells);
}

}  // namespace erasurekit::cli
