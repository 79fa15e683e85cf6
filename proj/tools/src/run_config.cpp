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

#include "erasurekit/cli/run_config.hpp"

namespace erasurekit::cli {

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->template get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config.") + key + ": wrong type");
  }
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
    return;
  }
  try {
    out = it->template get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config.") + key + ": wrong type");
  }
}

}  // namespace

json to_json(const RunConfig& c) {
  json params = json::object();
  for (const auto& [key, value] : c.channel.params) params[key] = value;
  return {
      {"command", c.command},
      {"channel",
       {{"file", optional_json(c.channel.file)},
        {"preset", optional_json(c.channel.preset)},
        {"params", std::move(params)}}},
      {"state", c.state},
      {"ensemble_file", optional_json(c.ensemble_file)},
      {"ensemble_size", c.ensemble_size},
      {"mixing", c.mixing},
      {"frame_members", c.frame_members},
      {"seed", c.seed},
      {"output", c.output},
      {"format", c.format},
      {"outcomes", c.outcomes},
      {"restarts", c.restarts},
      {"max_iters", c.max_iters},
      {"tol", c.tol},
      {"oracle_samples", c.oracle_samples},
      {"ru_tol", c.ru_tol},
      {"trace_csv", optional_json(c.trace_csv)},
      {"trials", c.trials},
      {"scenario", c.scenario},
      {"grid", c.grid},
      {"slack_tol", c.slack_tol},
  };
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("config: expected an object");
  RunConfig c;
  read_field(j, "command", c.command);
  if (const auto it = j.find("channel"); it != j.end()) {
    if (!it->is_object()) throw InputError("config.channel: expected an object");
    read_optional(*it, "file", c.channel.file);
    read_optional(*it, "preset", c.channel.preset);
    if (const auto p = it->find("params"); p != it->end()) {
      if (!p->is_object()) throw InputError("config.channel.params: expected an object");
      for (const auto& [key, value] : p->items()) {
        if (!value.is_number()) throw InputError("config.channel.params." + key + ": expected a number");
        c.channel.params[key] = value.get<double>();
      }
    }
  }
  read_field(j, "state", c.state);
  read_optional(j, "ensemble_file", c.ensemble_file);
  read_field(j, "ensemble_size", c.ensemble_size);
  read_field(j, "mixing", c.mixing);
  read_field(j, "frame_members", c.frame_members);
  read_field(j, "seed", c.seed);
  read_field(j, "output", c.output);
  read_field(j, "format", c.format);
  read_field(j, "outcomes", c.outcomes);
  read_field(j, "restarts", c.restarts);
  read_field(j, "max_iters", c.max_iters);
  read_field(j, "tol", c.tol);
  read_field(j, "oracle_samples", c.oracle_samples);
  read_field(j, "ru_tol", c.ru_tol);
  read_optional(j, "trace_csv", c.trace_csv);
  read_field(j, "trials", c.trials);
  read_field(j, "scenario", c.scenario);
  read_field(j, "grid", c.grid);
  read_field(j, "slack_tol", c.slack_tol);
  return c;
}

}  // namespace erasurekit::cli
