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

#include "erasurekit/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "erasurekit/erasure.hpp"
#include "erasurekit/error.hpp"
#include "erasurekit/optimizer.hpp"

namespace erasurekit::cli {

namespace {

constexpr int kMaxFrameAttempts = 8;

// ---------------------------------------------------------------------------
// Shared plumbing

std::string config_comment(const RunConfig& config) {
  return "# config: " + to_json(config).dump() + "\n";
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.output == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("output: cannot open " + config.output);
  file << text;
  if (!file) throw InputError("output: write failed for " + config.output);
}

void write_file(const std::string& path, const std::string& text, const char* field) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError(std::string(field) + ": cannot open " + path);
  file << text;
}

void require_format(const RunConfig& config) {
  if (config.format != "json" && config.format != "csv") {
    throw InputError("format: expected json or csv, got '" + config.format + "'");
  }
}

KrausChannel load_channel(const RunConfig& config) {
  const ChannelSource& src = config.channel;
  if (src.file.has_value() == src.preset.has_value()) {
    throw InputError("channel: exactly one of --channel or --preset is required");
  }
  if (src.file) {
    if (!src.params.empty()) throw InputError("channel.params: only valid with a preset");
    return channel_from_json(read_json_file(*src.file));
  }
  KrausChannel channel = preset(*src.preset, src.params);
  validate(channel);
  return channel;
}

CMatrix load_state(const std::string& spec, int dim) {
  if (spec == "mixed") return maximally_mixed(dim);
  if (spec == "zero" || spec == "plus") {
    CVector v = CVector::Zero(dim);
    if (spec == "zero") {
      v(0) = 1.0;
    } else {
      v.setConstant(1.0 / std::sqrt(static_cast<double>(dim)));
    }
    return v * v.adjoint();
  }
  CMatrix rho = state_from_json(read_json_file(spec));
  if (rho.rows() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "state: dimension " + std::to_string(rho.rows()) +
                                                  " does not match channel dimension " +
                                                  std::to_string(dim));
  }
  return rho;
}

ProbeMeasurement load_mixing(const std::string& spec, int kraus) {
  if (spec == "identity") return ProbeMeasurement::canonical(kraus);
  if (spec == "hadamard") return ProbeMeasurement::hadamard();
  return measurement_from_json(read_json_file(spec));
}

OptimizerConfig optimizer_config(const RunConfig& config) {
  return OptimizerConfig{config.restarts, config.max_iters, config.tol, config.seed};
}

// Runs both inequality chains and folds them into one report.
ErasureReport full_report(const KrausChannel& channel, const CMatrix& rho,
                          const Ensemble& ensemble, const ProbeMeasurement& meas,
                          int frame_members, std::uint64_t frame_seed) {
  ErasureReport report = verify_direct(channel, rho, ensemble, meas);
  const ErasureReport converse =
      verify_converse(channel, rho, meas, frame_members, frame_seed);
  report.converse = converse.converse;
  report.gamma = converse.gamma;
  return report;
}

int exit_for(const ErasureReport& report, double slack_tol) {
  return report.violations(slack_tol).empty() ? kExitOk : kExitVerificationFailure;
}

void report_violations(const ErasureReport& report, double slack_tol, std::ostream& err) {
  for (const SlackLink& link : report.violations(slack_tol)) {
    err << "erasurekit: slack violation on " << link.name << ": " << format_double(link.slack)
        << "\n";
  }
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(RunConfig config, std::ostream& out, std::ostream& err) {
  if (config.format.empty()) config.format = "json";
  require_format(config);
  const KrausChannel channel = load_channel(config);
  const CMatrix rho = load_state(config.state, channel.dim());
  const ProbeMeasurement meas = load_mixing(config.mixing, channel.size());

  Ensemble ensemble = [&] {
    if (config.ensemble_file) return ensemble_from_json(read_json_file(*config.ensemble_file));
    if (config.ensemble_size < 1) throw InputError("ensemble_size: must be >= 1");
    return random_ensemble(rho, config.ensemble_size, config.seed);
  }();
  if (config.frame_members == 0) {
    const int r = spectral_support(rho).rank();
    config.frame_members = r * r;
  }

  const ErasureReport report =
      full_report(channel, rho, ensemble, meas, config.frame_members, config.seed);

  std::ostringstream os;
  if (config.format == "json") {
    json doc = {{"config", to_json(config)}, {"report", report_to_json(report)}};
    json violations = json::array();
    for (const SlackLink& link : report.violations(config.slack_tol)) {
      violations.push_back({{"link", link.name}, {"slack", link.slack}});
    }
    doc["violations"] = std::move(violations);
    os << doc.dump(2) << "\n";
  } else {
    os << config_comment(config);
    std::vector<std::string> header = {"f_e",  "f_ea",  "f_ea_two_path", "mutual_info",
                                       "beta", "gamma", "outcomes",      "kept_outcomes"};
    std::vector<std::string> row = {format_double(report.f_e),
                                    format_double(report.f_ea),
                                    format_double(report.f_ea_two_path),
                                    format_double(report.mutual_info),
                                    format_double(report.beta),
                                    format_double(report.gamma.value_or(0.0)),
                                    std::to_string(report.outcomes),
                                    std::to_string(report.kept_outcomes)};
    for (const SlackLink& link : report.links()) {
      header.push_back(link.name);
      row.push_back(format_double(link.slack));
    }
    write_csv_row(os, header);
    write_csv_row(os, row);
  }
  emit(config, os.str(), out);
  report_violations(report, config.slack_tol, err);
  return exit_for(report, config.slack_tol);
}

// ---------------------------------------------------------------------------
// optimize

int cmd_optimize(RunConfig config, std::ostream& out, std::ostream& /*err*/) {
  if (config.format.empty()) config.format = "json";
  if (config.format != "json") throw InputError("format: optimize writes json only");
  const KrausChannel channel = load_channel(config);
  const CMatrix rho = load_state(config.state, channel.dim());
  if (config.outcomes == 0) config.outcomes = channel.size();
  if (config.oracle_samples < 0) throw InputError("oracle: sample count must be >= 0");

  const OptimizerConfig opt = optimizer_config(config);
  OptimizationResult result = optimize_erasure(channel, rho, config.outcomes, opt);
  if (config.oracle_samples > 0) {
    result.oracle_value = sample_oracle(channel, rho, config.oracle_samples, config.seed);
  }

  // The verdict concerns I/d with square mixings; reuse the search when it
  // already ran there.
  const CMatrix mixed = maximally_mixed(channel.dim());
  const bool reusable =
      config.outcomes == channel.size() && max_abs_diff(rho, mixed) <= 1e-15;
  const RandomUnitaryVerdict verdict =
      reusable ? random_unitary_verdict(channel, result, config.ru_tol, config.seed)
               : detect_random_unitary(channel, config.ru_tol, opt);

  if (config.trace_csv) {
    std::ostringstream trace;
    trace << config_comment(config);
    write_csv_row(trace, std::vector<std::string>{"restart", "iteration", "value"});
    for (const TracePoint& p : result.trace) {
      write_csv_row(trace, std::vector<std::string>{std::to_string(p.restart),
                                                    std::to_string(p.iteration),
                                                    format_double(p.value)});
    }
    write_file(*config.trace_csv, trace.str(), "trace_csv");
  }

  json doc = {{"config", to_json(config)},
              {"result", optimization_to_json(result)},
              {"verdict", verdict_to_json(verdict)}};
  emit(config, doc.dump(2) + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct TrialResult {
  int trial = 0;
  int dim = 0;
  int kraus = 0;
  int outcomes = 0;
  int rank = 0;
  int ensemble_members = 0;
  int frame_members = 0;
  int distribution_length = 0;
  double f_e = 0.0;
  double f_ea = 0.0;
  double two_path_residual = 0.0;
  double mixture_residual = 0.0;
  double reconstruction_residual = 0.0;
  double mutual_info = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::vector<SlackLink> links;
};

int draw(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random (r, s) with every s(k) >= 0.002 / length >= 1.25e-4.
std::pair<ProbVector, ProbVector> pinsker_pair(int length, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> r(static_cast<std::size_t>(length));
  std::vector<double> s(static_cast<std::size_t>(length));
  for (double& v : r) v = expo(rng);
  for (double& v : s) v = expo(rng);
  ProbVector rn = ProbVector::normalized(std::move(r));
  ProbVector sn = ProbVector::normalized(std::move(s));
  std::vector<double> floored(sn.weights().begin(), sn.weights().end());
  for (double& v : floored) v = 0.998 * v + 0.002 / length;
  return {std::move(rn), ProbVector::normalized(std::move(floored))};
}

TrialResult run_trial(std::uint64_t master, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);

  TrialResult t;
  t.trial = index;
  t.dim = draw(rng, 2, 3);
  t.kraus = draw(rng, 2, t.dim * t.dim);
  t.outcomes = draw(rng, t.kraus, t.kraus + 2);
  t.rank = draw(rng, 1, t.dim);
  t.ensemble_members = draw(rng, 2, 6);
  t.frame_members = draw(rng, t.rank * t.rank, t.rank * t.rank + 4);
  t.distribution_length = draw(rng, 2, 16);

  const KrausChannel channel = random_channel(t.dim, t.kraus, rng);
  const ProbeMeasurement meas(haar_isometry(t.outcomes, t.kraus, rng));
  const CMatrix rho = random_density(t.dim, t.rank, rng);
  const Ensemble ensemble = random_ensemble(rho, t.ensemble_members, rng, 1e-3);

  ErasureReport report = verify_direct(channel, rho, ensemble, meas);
  // A Haar frame fails to be informationally complete with probability zero;
  // the retry only guards against ill-conditioned draws.
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t frame_seed = rng();
    try {
      const ErasureReport converse =
          verify_converse(channel, rho, meas, t.frame_members, frame_seed);
      report.converse = converse.converse;
      report.gamma = converse.gamma;
      break;
    } catch (const Error& e) {
      const bool retry = e.code() == ErrorCode::InsufficientFrame ||
                         e.code() == ErrorCode::SingularAverage;
      if (!retry || attempt + 1 == kMaxFrameAttempts) throw;
    }
  }

  const auto [r, s] = pinsker_pair(t.distribution_length, rng);
  const EntropyBounds bounds = verify_entropy_bounds(r, s);

  t.f_e = report.f_e;
  t.f_ea = report.f_ea;
  t.two_path_residual = std::abs(report.f_ea - report.f_ea_two_path);
  t.mixture_residual = report.direct->mixture_identity_residual;
  t.reconstruction_residual = report.converse->reconstruction_residual;
  t.mutual_info = report.mutual_info;
  t.beta = report.beta;
  t.gamma = report.gamma.value_or(0.0);
  t.links = report.links();
  t.links.push_back({"pinsker.lower", bounds.lower_slack});
  t.links.push_back({"pinsker.upper", bounds.upper_slack});
  return t;
}

int thread_count(int trials) {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("ERASUREKIT_THREADS")) {
    int cap = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec == std::errc() && ptr == text.data() + text.size() && cap >= 1) n = std::min(n, cap);
  }
  return std::min(n, trials);
}

std::vector<TrialResult> run_trials(std::uint64_t master, int trials) {
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < trials; i = next++) {
      try {
        results[static_cast<std::size_t>(i)] = run_trial(master, i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int threads = thread_count(trials);
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

struct WorstLink {
  std::string name;
  double slack = std::numeric_limits<double>::infinity();
  int trial = -1;
};

json summarize(const std::vector<TrialResult>& results, double slack_tol) {
  std::vector<WorstLink> worst;
  double max_two_path = 0.0;
  double max_mixture = 0.0;
  double max_reconstruction = 0.0;
  double max_gamma = 0.0;
  for (const TrialResult& t : results) {
    if (worst.empty()) {
      for (const SlackLink& l : t.links) worst.push_back({l.name});
    }
    for (std::size_t k = 0; k < t.links.size(); ++k) {
      if (t.links[k].slack < worst[k].slack) {
        worst[k].slack = t.links[k].slack;
        worst[k].trial = t.trial;
      }
    }
    max_two_path = std::max(max_two_path, t.two_path_residual);
    max_mixture = std::max(max_mixture, t.mixture_residual);
    max_reconstruction = std::max(max_reconstruction, t.reconstruction_residual);
    max_gamma = std::max(max_gamma, t.gamma);
  }
  json links = json::array();
  double overall = std::numeric_limits<double>::infinity();
  for (const WorstLink& w : worst) {
    links.push_back({{"link", w.name}, {"worst_slack", w.slack}, {"trial", w.trial}});
    overall = std::min(overall, w.slack);
  }
  return {
      {"trials", results.size()},
      {"links", std::move(links)},
      {"worst_slack", overall},
      {"passed", overall >= -slack_tol},
      {"max_two_path_residual", max_two_path},
      {"max_mixture_residual", max_mixture},
      {"max_reconstruction_residual", max_reconstruction},
      {"max_gamma", max_gamma},
  };
}

std::vector<std::string> trial_header(const TrialResult& first) {
  std::vector<std::string> h = {"trial", "dim", "kraus", "outcomes", "rank", "ensemble_members",
                                "frame_members", "distribution_length", "f_e", "f_ea",
                                "two_path_residual", "mixture_residual",
                                "reconstruction_residual", "mutual_info", "beta", "gamma"};
  for (const SlackLink& l : first.links) h.push_back(l.name);
  return h;
}

std::vector<std::string> trial_row(const TrialResult& t) {
  std::vector<std::string> row = {
      std::to_string(t.trial),        std::to_string(t.dim),
      std::to_string(t.kraus),        std::to_string(t.outcomes),
      std::to_string(t.rank),         std::to_string(t.ensemble_members),
      std::to_string(t.frame_members), std::to_string(t.distribution_length),
      format_double(t.f_e),           format_double(t.f_ea),
      format_double(t.two_path_residual), format_double(t.mixture_residual),
      format_double(t.reconstruction_residual), format_double(t.mutual_info),
      format_double(t.beta),          format_double(t.gamma)};
  for (const SlackLink& l : t.links) row.push_back(format_double(l.slack));
  return row;
}

int cmd_verify(RunConfig config, std::ostream& out, std::ostream& err) {
  if (config.format.empty()) config.format = "csv";
  require_format(config);
  if (config.channel.file || config.channel.preset || !config.channel.params.empty()) {
    throw InputError("channel: verify draws its own random channels");
  }
  if (config.trials < 1) throw InputError("trials must be ≥ 1");

  const std::vector<TrialResult> results = run_trials(config.seed, config.trials);
  const json summary = summarize(results, config.slack_tol);

  std::ostringstream os;
  if (config.format == "csv") {
    os << config_comment(config);
    write_csv_row(os, trial_header(results.front()));
    for (const TrialResult& t : results) write_csv_row(os, trial_row(t));
    os << "# summary: " << summary.dump() << "\n";
  } else {
    json trials = json::array();
    const auto header = trial_header(results.front());
    for (const TrialResult& t : results) {
      const auto row = trial_row(t);
      json obj = json::object();
      for (std::size_t k = 0; k < header.size(); ++k) obj[header[k]] = row[k];
      trials.push_back(std::move(obj));
    }
    json doc = {{"config", to_json(config)}, {"summary", summary}, {"trials", std::move(trials)}};
    os << doc.dump(2) << "\n";
  }
  emit(config, os.str(), out);

  const double worst = summary["worst_slack"].get<double>();
  err << "erasurekit: " << config.trials << " trials, worst slack " << format_double(worst)
      << "\n";
  return worst >= -config.slack_tol ? kExitOk : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------
// scenario

struct Curve {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Curve eraser_curve(const RunConfig& config) {
  const KrausChannel channel = preset("eraser_cnot");
  const CMatrix rho = maximally_mixed(2);
  const Ensemble ensemble = random_ensemble(rho, config.ensemble_size, config.seed, 1e-3);
  Curve curve{{"theta", "f_ea", "mutual_info"}, {}};
  for (int i = 0; i < config.grid; ++i) {
    const double theta = std::numbers::pi / 2.0 * i / (config.grid - 1);
    const ProbeMeasurement meas = ProbeMeasurement::rotation(theta);
    curve.rows.push_back({theta, assisted_fidelity(channel, rho, meas),
                          mutual_information(joint_distribution(channel, ensemble, meas))});
  }
  return curve;
}

Curve teleport_curve(const RunConfig& config) {
  const CMatrix rho = maximally_mixed(2);
  const OptimizerConfig opt = optimizer_config(config);
  Curve curve{{"lambda0", "f_ea_canonical", "f_ea_optimized"}, {}};
  for (int i = 0; i < config.grid; ++i) {
    const double lambda0 = static_cast<double>(i) / (config.grid - 1);
    const KrausChannel channel = preset("partial_teleportation", {{"lambda0", lambda0}});
    const double canonical =
        assisted_fidelity(channel, rho, ProbeMeasurement::canonical(channel.size()));
    const double optimized = optimize_erasure(channel, rho, channel.size(), opt).best_value;
    curve.rows.push_back({lambda0, canonical, optimized});
  }
  return curve;
}

int cmd_scenario(RunConfig config, std::ostream& out, std::ostream& /*err*/) {
  if (config.format.empty()) config.format = "csv";
  require_format(config);
  if (config.channel.file || config.channel.preset || !config.channel.params.empty()) {
    throw InputError("channel: scenarios fix their own channel");
  }
  const bool eraser = config.scenario == "eraser";
  if (!eraser && config.scenario != "teleport") {
    throw InputError("UnknownScenario: '" + config.scenario + "' (expected eraser or teleport)");
  }
  if (config.grid == 0) config.grid = eraser ? 33 : 21;
  if (config.grid < 2) throw InputError("grid must be ≥ 2");
  if (eraser && config.ensemble_size < 1) throw InputError("ensemble_size: must be >= 1");

  const Curve curve = eraser ? eraser_curve(config) : teleport_curve(config);

  std::ostringstream os;
  if (config.format == "csv") {
    os << config_comment(config);
    write_csv_row(os, curve.columns);
    for (const auto& row : curve.rows) write_csv_row(os, row);
  } else {
    json rows = json::array();
    for (const auto& row : curve.rows) {
      json obj = json::object();
      for (std::size_t k = 0; k < row.size(); ++k) obj[curve.columns[k]] = row[k];
      rows.push_back(std::move(obj));
    }
    os << json({{"config", to_json(config)}, {"rows", std::move(rows)}}).dump(2) << "\n";
  }
  emit(config, os.str(), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Flag parsing

// Accepts a bare config object, any JSON report (its "config" member) or a
// CSV output (its leading "# config:" line).
RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open " + path);
  std::string first;
  std::getline(in, first);
  constexpr std::string_view kPrefix = "# config: ";
  if (first.starts_with(kPrefix)) {
    try {
      return run_config_from_json(json::parse(first.substr(kPrefix.size())));
    } catch (const json::parse_error& e) {
      throw InputError("config: malformed embedded config in " + path + " (" + e.what() + ")");
    }
  }
  const json doc = read_json_file(path);
  if (doc.is_object() && doc.contains("config") && doc["config"].is_object()) {
    return run_config_from_json(doc["config"]);
  }
  return run_config_from_json(doc);
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InputError("--set: expected key=value, got '" + text + "'");
  }
  const std::string value = text.substr(eq + 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
    throw InputError("--set: '" + value + "' is not a finite number");
  }
  return {text.substr(0, eq), v};
}

}  // namespace

int run_config(RunConfig config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "analyze") return cmd_analyze(std::move(config), out, err);
    if (config.command == "optimize") return cmd_optimize(std::move(config), out, err);
    if (config.command == "verify") return cmd_verify(std::move(config), out, err);
    if (config.command == "scenario") return cmd_scenario(std::move(config), out, err);
    throw InputError("command: unknown command '" + config.command + "'");
  } catch (const Error& e) {
    err << "erasurekit: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "erasurekit: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "erasurekit: unexpected failure: " << e.what() << "\n";
  }
  return kExitInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Environment-assisted channel correction by quantum erasure", "erasurekit"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path, channel_file, preset_name, state, ensemble_file, mixing, output, format,
      scenario, trace_csv;
  std::vector<std::string> assignments;
  double param = 0.0, tol = 0.0, ru_tol = 0.0;
  std::uint64_t seed = 0;
  int ensemble_size = 0, frame_members = 0, outcomes = 0, restarts = 0, max_iters = 0,
      oracle = 0, trials = 0, grid = 0;

  auto* o_config = app.add_option("--config", config_path, "JSON run config; flags override it");
  auto* o_channel = app.add_option("--channel", channel_file, "Channel JSON file");
  auto* o_preset = app.add_option("--preset", preset_name, "Named channel preset");
  auto* o_param = app.add_option("--param", param, "Primary parameter of the preset");
  app.add_option("--set", assignments, "Preset parameter key=value (repeatable)");
  auto* o_state = app.add_option("--state", state, "mixed | zero | plus | state JSON file");
  auto* o_ensemble = app.add_option("--ensemble", ensemble_file, "Ensemble JSON file");
  auto* o_ensemble_size =
      app.add_option("--ensemble-size", ensemble_size, "Members of the default random ensemble");
  auto* o_mixing = app.add_option("--mixing", mixing, "identity | hadamard | measurement JSON");
  auto* o_frame =
      app.add_option("--frame-members", frame_members, "IC ensemble size (0 = rank^2)");
  auto* o_seed = app.add_option("--seed", seed, "Master seed");
  auto* o_output = app.add_option("--output,-o", output, "Output path, '-' for stdout");
  auto* o_format = app.add_option("--format", format, "json | csv");
  auto* o_outcomes = app.add_option("--outcomes", outcomes, "Probe outcomes m (0 = Kraus count)");
  auto* o_restarts = app.add_option("--restarts", restarts, "Optimizer restarts");
  auto* o_iters = app.add_option("--max-iters", max_iters, "Optimizer iterations per restart");
  auto* o_tol = app.add_option("--tol", tol, "Optimizer gain tolerance");
  auto* o_oracle = app.add_option("--oracle", oracle, "Haar samples for the oracle (0 = off)");
  auto* o_ru_tol = app.add_option("--ru-tol", ru_tol, "Random-unitary verdict tolerance");
  auto* o_trace = app.add_option("--trace-csv", trace_csv, "Write the optimizer trace as CSV");
  auto* o_trials = app.add_option("--trials", trials, "Randomized verification trials");
  auto* o_grid = app.add_option("--grid", grid, "Sweep grid size (0 = scenario default)");

  app.add_subcommand("analyze", "Fidelities and inequality chains for one configuration");
  app.add_subcommand("optimize", "Search for the best erasure measurement");
  app.add_subcommand("verify", "Randomized verification of the inequality chains");
  CLI::App* sc = app.add_subcommand("scenario", "Closed-form sweep curves as CSV");
  sc->add_option("name", scenario, "eraser | teleport")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    RunConfig config;
    if (o_config->count() > 0) config = load_config_file(config_path);
    if (!app.get_subcommands().empty()) {
      config.command = app.get_subcommands().front()->get_name();
      if (config.command == "scenario") config.scenario = scenario;
    } else if (o_config->count() == 0) {
      throw InputError("command: a subcommand or --config is required");
    }

    if (o_channel->count() > 0) {
      config.channel.file = channel_file;
      config.channel.preset.reset();
    }
    if (o_preset->count() > 0) {
      if (o_channel->count() > 0) {
        throw InputError("channel: exactly one of --channel or --preset is required");
      }
      if (config.channel.preset != preset_name) config.channel.params.clear();
      config.channel.preset = preset_name;
      config.channel.file.reset();
    }
    if (o_param->count() > 0) {
      if (!config.channel.preset) throw InputError("--param: requires --preset");
      const std::string_view key = preset_primary_param(*config.channel.preset);
      if (key.empty()) {
        throw InputError("--param: preset '" + *config.channel.preset +
                         "' has no primary parameter; use --set");
      }
      config.channel.params[std::string(key)] = param;
    }
    for (const std::string& a : assignments) {
      if (!config.channel.preset) throw InputError("--set: requires --preset");
      const auto [key, value] = parse_assignment(a);
      config.channel.params[key] = value;
    }
    if (o_state->count() > 0) config.state = state;
    if (o_ensemble->count() > 0) config.ensemble_file = ensemble_file;
    if (o_ensemble_size->count() > 0) config.ensemble_size = ensemble_size;
    if (o_mixing->count() > 0) config.mixing = mixing;
    if (o_frame->count() > 0) config.frame_members = frame_members;
    if (o_seed->count() > 0) config.seed = seed;
    if (o_output->count() > 0) config.output = output;
    if (o_format->count() > 0) config.format = format;
    if (o_outcomes->count() > 0) config.outcomes = outcomes;
    if (o_restarts->count() > 0) config.restarts = restarts;
    if (o_iters->count() > 0) config.max_iters = max_iters;
    if (o_tol->count() > 0) config.tol = tol;
    if (o_oracle->count() > 0) config.oracle_samples = oracle;
    if (o_ru_tol->count() > 0) config.ru_tol = ru_tol;
    if (o_trace->count() > 0) config.trace_csv = trace_csv;
    if (o_trials->count() > 0) config.trials = trials;
    if (o_grid->count() > 0) config.grid = grid;
    return run_config(std::move(config), out, err);
  } catch (const InputError& e) {
    err << "erasurekit: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "erasurekit: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace erasurekit::cli
