// Copyright 2026 The qfilter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario description, JSON config loading and the built-in figure scenarios.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qfilter/field_inputs.hpp"
#include "qfilter/filters.hpp"
#include "qfilter/sde_engine.hpp"

namespace qfilter {

inline constexpr const char* kConfigVersion = "1";

struct Scenario {
  std::string name;
  double gamma = 1.0;
  double omega = 0.0;
  FieldInput input = VacuumInput{};
  Detection detection = Detection::homodyne;
  BlochVector initial_bloch{0.0, 0.0, -1.0};
  IntegratorConfig integrator;
  std::size_t n_trajectories = 50;

  SystemTriple system() const { return SystemTriple::two_level(gamma, omega); }
  QubitFilter filter() const { return QubitFilter(system(), input, detection); }
  BlockState initial_state() const { return initial_blocks(input, initial_bloch); }

  // Throws InvalidInput on any violated invariant.
  void validate() const;
  // Non-fatal conditions: coarse steps, wavepacket mass outside the window.
  std::vector<std::string> warnings() const;
};

// Parses and validates a JSON config. Unknown keys, missing required keys and
// type mismatches all raise InvalidInput.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

// Serializes in the same schema; parse_scenario(scenario_to_json(s)) == s.
std::string scenario_to_json(const Scenario& s, int indent = 2);

std::vector<std::string> builtin_scenario_names();
// Throws InvalidInput for unknown names.
Scenario builtin_scenario(const std::string& name);

// Pulse of amplitude `value` on [0, 5), the cat-state branch amplitude.
PulseAmplitude figure_pulse(cplx value);

}  // namespace qfilter
