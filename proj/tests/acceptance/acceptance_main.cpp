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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "erasurekit/cli/commands.hpp"
#include "erasurekit/erasure.hpp"
#include "erasurekit/error.hpp"
#include "erasurekit/optimizer.hpp"
#include "test_support.hpp"

namespace erasurekit {
namespace {

using testing::rng_for;

struct Check {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

struct Config {
  KrausChannel channel;
  ProbeMeasurement meas;
  CMatrix rho;
};

Config random_config(std::mt19937_64& rng, bool full_rank = false) {
  const int d = std::uniform_int_distribution<int>(2, 3)(rng);
  const int k = std::uniform_int_distribution<int>(1, d * d)(rng);
  const int m = std::uniform_int_distribution<int>(k, k + 2)(rng);
  const int r = full_rank ? d : std::uniform_int_distribution<int>(1, d)(rng);
  KrausChannel ch = random_channel(d, k, rng);
  ProbeMeasurement meas(haar_isometry(m, k, rng));
  return {std::move(ch), std::move(meas), random_density(d, r, rng)};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Check decomposition_invariance() {
  Check c;
  auto rng = rng_for(1001);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Config cfg = random_config(rng);
    const auto refined = refine(cfg.channel, cfg.meas);
    worst = std::max(worst,
                     std::abs(entanglement_fidelity(std::span<const CMatrix>(refined), cfg.rho) -
                              entanglement_fidelity(cfg.channel, cfg.rho)));
  }
  c.require(worst < 1e-9, "max |dF_e| " + fmt(worst));
  c.detail = c.pass ? "200 cases, max |dF_e| " + fmt(worst) : c.detail;
  return c;
}

Check achievability() {
  Check c;
  auto rng = rng_for(1002);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Config cfg = random_config(rng);
    const KrausChannel corrected = build_correction(cfg.channel, cfg.rho, cfg.meas);
    worst = std::max(worst, std::abs(entanglement_fidelity(corrected, cfg.rho) -
                                     assisted_fidelity(cfg.channel, cfg.rho, cfg.meas)));
  }
  c.require(worst <= 1e-9, "max gap " + fmt(worst));
  if (c.pass) c.detail = "200 cases, max gap " + fmt(worst);
  return c;
}

Check direct_chain() {
  Check c;
  auto rng = rng_for(1003);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 1000; ++t) {
    const Config cfg = random_config(rng);
    const int members = std::uniform_int_distribution<int>(2, 6)(rng);
    const Ensemble e = random_ensemble(cfg.rho, members, rng, 1e-3);
    bool weights_ok = true;
    for (double p : e.weights().weights()) weights_ok = weights_ok && p >= 1e-3 - 1e-15;
    c.require(weights_ok, "ensemble weight below 1e-3 at trial " + std::to_string(t));
    const ErasureReport r = verify_direct(cfg.channel, cfg.rho, e, cfg.meas);
    for (const SlackLink& l : r.links()) {
      worst = std::min(worst, l.slack);
      c.require(l.slack >= -1e-9, l.name + " slack " + fmt(l.slack) + " at trial " +
                                      std::to_string(t));
    }
  }
  if (c.pass) c.detail = "1000 configs, worst slack " + fmt(worst);
  return c;
}

Check converse_chain() {
  Check c;
  auto rng = rng_for(1004);
  double worst = std::numeric_limits<double>::infinity();
  double max_gamma = 0.0;
  for (int t = 0; t < 300; ++t) {
    const Config cfg = random_config(rng, true);
    const int d = static_cast<int>(cfg.rho.rows());
    const int n = std::uniform_int_distribution<int>(d * d, d * d + 4)(rng);
    const std::uint64_t frame_seed = rng();
    const ErasureReport r = verify_converse(cfg.channel, cfg.rho, cfg.meas, n, frame_seed);
    c.require(r.gamma.has_value() && std::isfinite(*r.gamma),
              "non-finite gamma at trial " + std::to_string(t));
    if (r.gamma) max_gamma = std::max(max_gamma, std::abs(*r.gamma));
    for (const SlackLink& l : r.links()) {
      worst = std::min(worst, l.slack);
      c.require(l.slack >= -1e-9, l.name + " slack " + fmt(l.slack) + " at trial " +
                                      std::to_string(t));
    }
  }
  if (c.pass) c.detail = "300 configs, worst slack " + fmt(worst) + ", max |gamma| " + fmt(max_gamma);
  return c;
}

Check pinsker_bounds() {
  Check c;
  auto rng = rng_for(1005);
  std::exponential_distribution<double> expo(1.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 10000; ++t) {
    const int len = std::uniform_int_distribution<int>(2, 16)(rng);
    std::vector<double> r(len), s(len);
    for (double& v : r) v = expo(rng);
    for (double& v : s) v = expo(rng);
    ProbVector sn = ProbVector::normalized(std::move(s));
    std::vector<double> floored(sn.weights().begin(), sn.weights().end());
    for (double& v : floored) v = 0.998 * v + 0.002 / len;
    const ProbVector sf = ProbVector::normalized(std::move(floored));
    for (double v : sf.weights()) c.require(v >= 1e-4, "s below 1e-4");
    const EntropyBounds b = verify_entropy_bounds(ProbVector::normalized(std::move(r)), sf);
    worst = std::min({worst, b.lower_slack, b.upper_slack});
    c.require(b.lower_slack >= -1e-12 && b.upper_slack >= -1e-12,
              "slack " + fmt(std::min(b.lower_slack, b.upper_slack)) + " at pair " +
                  std::to_string(t));
  }
  if (c.pass) c.detail = "10000 pairs, worst slack " + fmt(worst);
  return c;
}

Check eraser_curve() {
  Check c;
  const KrausChannel ch = preset("eraser_cnot");
  const CMatrix mixed = maximally_mixed(2);
  double worst = 0.0;
  for (int i = 0; i < 33; ++i) {
    const double theta = std::numbers::pi / 2 * i / 32.0;
    const double f = assisted_fidelity(ch, mixed, ProbeMeasurement::rotation(theta));
    worst = std::max(worst, std::abs(f - testing::closed_form_eraser(theta)));
  }
  c.require(worst <= 1e-10, "max curve error " + fmt(worst));
  double max_mi = 0.0;
  const ProbeMeasurement quarter = ProbeMeasurement::rotation(std::numbers::pi / 4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Ensemble e = random_ensemble(mixed, 2 + static_cast<int>(seed % 5), seed, 1e-3);
    max_mi = std::max(max_mi, mutual_information(joint_distribution(ch, e, quarter)));
  }
  c.require(max_mi <= 1e-10, "mutual information " + fmt(max_mi) + " at pi/4");
  if (c.pass) c.detail = "33 points, max error " + fmt(worst) + ", max MI at pi/4 " + fmt(max_mi);
  return c;
}

Check teleport_curve() {
  Check c;
  const CMatrix mixed = maximally_mixed(2);
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double l0 = i / 20.0;
    const KrausChannel ch = preset("partial_teleportation", {{"lambda0", l0}});
    const double f = assisted_fidelity(ch, mixed, ProbeMeasurement::canonical(ch.size()));
    worst = std::max(worst, std::abs(f - testing::closed_form_teleport(l0)));
  }
  c.require(worst <= 1e-10, "max curve error " + fmt(worst));
  const KrausChannel ideal = preset("partial_teleportation", {{"lambda0", 0.5}});
  const double half = assisted_fidelity(ideal, mixed, ProbeMeasurement::canonical(ideal.size()));
  c.require(half == 1.0, "lambda0 = 1/2 gives " + fmt(half - 1.0) + " off 1");
  if (c.pass) c.detail = "21 points, max error " + fmt(worst) + ", lambda0 = 1/2 exact";
  return c;
}

Check optimizer() {
  Check c;
  const OptimizerConfig opts{.restarts = 32, .seed = 1};
  for (const char* name : {"dephasing", "depolarizing"}) {
    const RandomUnitaryVerdict v = detect_random_unitary(preset(name), 1e-6, opts);
    c.require(v.best_value >= 1.0 - 1e-6, std::string(name) + " F* " + fmt(v.best_value));
    c.require(v.is_random_unitary, std::string(name) + " verdict false");
    c.require(v.choi_residual < 1e-6, std::string(name) + " Choi residual " + fmt(v.choi_residual));
  }
  const KrausChannel ad = preset("amplitude_damping", {{"gamma", 0.5}});
  const CMatrix mixed = maximally_mixed(2);
  const RandomUnitaryVerdict v = detect_random_unitary(ad, 1e-6, opts);
  const double oracle = sample_oracle(ad, mixed, 20000, 1);
  c.require(!v.is_random_unitary, "amplitude_damping(0.5) verdict true");
  c.require(v.best_value >= oracle - 1e-3,
            "amplitude_damping(0.5) F* " + fmt(v.best_value) + " < oracle " + fmt(oracle));
  const double full =
      optimize_erasure(preset("amplitude_damping", {{"gamma", 1.0}}), mixed, 2, opts).best_value;
  c.require(std::abs(full - 0.5) <= 1e-9, "amplitude_damping(1) F* " + fmt(full));
  if (c.pass) {
    c.detail = "AD(0.5) F* " + fmt(v.best_value) + " vs oracle " + fmt(oracle) + ", AD(1) F* " +
               fmt(full);
  }
  return c;
}

Check two_path_identity() {
  Check c;
  auto rng = rng_for(1009);
  double worst_two_path = 0.0;
  double worst_mixture = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Config cfg = random_config(rng);
    const double direct = assisted_fidelity(cfg.channel, cfg.rho, cfg.meas);
    const auto states = conditional_states(cfg.channel, cfg.rho, cfg.meas);
    CMatrix mix = CMatrix::Zero(cfg.rho.rows(), cfg.rho.cols());
    for (const ConditionalState& s : states) mix += s.probability * s.state;
    worst_two_path = std::max(worst_two_path,
                              std::abs(direct - assisted_fidelity_from_states(states, cfg.rho)));
    worst_mixture = std::max(worst_mixture, max_abs_diff(mix, cfg.rho));
  }
  c.require(worst_two_path <= 1e-9, "two-path gap " + fmt(worst_two_path));
  c.require(worst_mixture <= 1e-9, "mixture residual " + fmt(worst_mixture));
  if (c.pass) {
    c.detail = "500 cases, two-path gap " + fmt(worst_two_path) + ", mixture residual " +
               fmt(worst_mixture);
  }
  return c;
}

Check determinism() {
  Check c;
  const std::vector<std::string> args = {"verify", "--trials", "100", "--seed", "1"};
  std::ostringstream out1, err1, out2, err2;
  const int code1 = cli::run(args, out1, err1);
  const int code2 = cli::run(args, out2, err2);
  c.require(code1 == cli::kExitOk && code2 == cli::kExitOk,
            "exit codes " + std::to_string(code1) + ", " + std::to_string(code2));
  c.require(!out1.str().empty() && out1.str() == out2.str(), "outputs differ");
  if (c.pass) c.detail = std::to_string(out1.str().size()) + " identical bytes";
  return c;
}

}  // namespace
}  // namespace erasurekit

int main() {
  using namespace erasurekit;
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"decomposition invariance", decomposition_invariance},
      {"achievability", achievability},
      {"direct chain", direct_chain},
      {"converse chain", converse_chain},
      {"pinsker bounds", pinsker_bounds},
      {"eraser curve", eraser_curve},
      {"teleport curve", teleport_curve},
      {"optimizer", optimizer},
      {"two-path identity", two_path_identity},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s (%.2fs)\n", c.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                c.detail.c_str(), secs);
    if (!c.pass) ++failures;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
