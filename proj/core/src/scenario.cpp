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

#include "qfilter/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qfilter/error.hpp"

namespace qfilter {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw InvalidInput(where + ": expected an object");
  }
}

void allow_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  require_object(j, where);
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      known = known || item.key() == key;
    }
    if (!known) {
      throw InvalidInput(where + ": unknown key '" + item.key() + "'");
    }
  }
}

const json& member(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw InvalidInput(where + ": missing key '" + key + "'");
  }
  return *it;
}

double number(const json& j, const char* key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_number()) {
    throw InvalidInput(where + "." + key + ": expected a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw InvalidInput(where + "." + key + ": not finite");
  }
  return d;
}

std::uint64_t unsigned_integer(const json& j, const char* key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_number_unsigned()) {
    throw InvalidInput(where + "." + key + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string string_value(const json& j, const char* key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_string()) {
    throw InvalidInput(where + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

FieldInput parse_input(const json& j) {
  const std::string where = "input";
  require_object(j, where);
  const std::string type = string_value(j, "type", where);
  if (type == "vacuum") {
    allow_keys(j, {"type"}, where);
    return VacuumInput{};
  }
  if (type == "single_photon") {
    allow_keys(j, {"type", "wavepacket"}, where);
    const json& w = member(j, "wavepacket", where);
    allow_keys(w, {"omega_bw", "t_center"}, "input.wavepacket");
    SinglePhotonInput in;
    in.wavepacket.bandwidth = number(w, "omega_bw", "input.wavepacket");
    in.wavepacket.t_center = number(w, "t_center", "input.wavepacket");
    return in;
  }
  if (type == "cat") {
    allow_keys(j, {"type", "branches"}, where);
    const json& branches = member(j, "branches", where);
    if (!branches.is_array() || branches.empty()) {
      throw InvalidInput("input.branches: expected a non-empty array");
    }
    std::vector<cplx> weights;
    std::vector<PulseAmplitude> amplitudes;
    for (const auto& b : branches) {
      allow_keys(b, {"weight_re", "weight_im", "pulse"}, "input.branches[]");
      weights.emplace_back(number(b, "weight_re", "input.branches[]"),
                           number(b, "weight_im", "input.branches[]"));
      const json& pulse = member(b, "pulse", "input.branches[]");
      if (!pulse.is_array()) {
        throw InvalidInput("input.branches[].pulse: expected an array");
      }
      std::vector<PulseSegment> segments;
      for (const auto& seg : pulse) {
        const std::string w = "input.branches[].pulse[]";
        allow_keys(seg, {"t0", "t1", "re", "im"}, w);
        segments.push_back({number(seg, "t0", w), number(seg, "t1", w),
                            cplx(number(seg, "re", w), number(seg, "im", w))});
      }
      amplitudes.emplace_back(std::move(segments));
    }
    return CatStateInput(std::move(weights), std::move(amplitudes));
  }
  throw InvalidInput("input.type: expected vacuum, single_photon or cat");
}

json input_to_json(const FieldInput& input) {
  json j;
  j["type"] = to_string(kind_of(input));
  if (const auto* p = std::get_if<SinglePhotonInput>(&input)) {
    j["wavepacket"] = {{"omega_bw", p->wavepacket.bandwidth},
                       {"t_center", p->wavepacket.t_center}};
  } else if (const auto* c = std::get_if<CatStateInput>(&input)) {
    json branches = json::array();
    for (std::size_t l = 0; l < c->branches(); ++l) {
      json pulse = json::array();
      for (const auto& seg : c->amplitudes()[l].segments()) {
        pulse.push_back({{"t0", seg.t_start},
                         {"t1", seg.t_end},
                         {"re", seg.value.real()},
                         {"im", seg.value.imag()}});
      }
      branches.push_back({{"weight_re", c->raw_weights()[l].real()},
                          {"weight_im", c->raw_weights()[l].imag()},
                          {"pulse", pulse}});
    }
    j["branches"] = branches;
  }
  return j;
}

}  // namespace

void Scenario::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidInput("system.gamma must be finite and non-negative");
  }
  if (!std::isfinite(omega)) {
    throw InvalidInput("system.omega must be finite");
  }
  if (initial_bloch.norm_squared() > 1.0 + 1e-9) {
    throw InvalidInput("initial_bloch lies outside the Bloch ball");
  }
  if (const auto* p = std::get_if<SinglePhotonInput>(&input)) {
    if (!(p->wavepacket.bandwidth > 0.0)) {
      throw InvalidInput("input.wavepacket.omega_bw must be positive");
    }
  }
  if (n_trajectories == 0) {
    throw InvalidInput("ensemble.n_trajectories must be positive");
  }
  integrator.validate();
}

std::vector<std::string> Scenario::warnings() const {
  std::vector<std::string> out;
  double fastest = std::max(gamma, std::abs(omega));
  if (const auto* p = std::get_if<SinglePhotonInput>(&input)) {
    const auto& w = p->wavepacket;
    fastest = std::max(fastest, w.bandwidth * w.bandwidth);
    const double reach = 8.0 / w.bandwidth;
    if (w.t_center - reach < 0.0 || w.t_center + reach > integrator.t_final) {
      out.push_back("wavepacket extends beyond the simulation window; its norm on the grid is " +
                    std::to_string(wavepacket_norm_squared(w, 0.0, integrator.t_final,
                                                           integrator.dt)));
    }
  }
  if (integrator.dt * fastest >= 0.1) {
    out.push_back("dt * max(gamma, omega, bandwidth^2) >= 0.1");
  }
  return out;
}

Scenario parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  allow_keys(root,
             {"version", "name", "system", "input", "detection", "initial_bloch", "integrator",
              "ensemble"},
             "config");
  const std::string version = string_value(root, "version", "config");
  if (version != kConfigVersion) {
    throw InvalidInput("config.version: unsupported version '" + version + "'");
  }

  Scenario s;
  if (root.contains("name")) {
    s.name = string_value(root, "name", "config");
  }

  const json& sys = member(root, "system", "config");
  allow_keys(sys, {"gamma", "omega"}, "system");
  s.gamma = number(sys, "gamma", "system");
  s.omega = number(sys, "omega", "system");

  s.input = parse_input(member(root, "input", "config"));

  const std::string det = string_value(root, "detection", "config");
  if (det == "homodyne") {
    s.detection = Detection::homodyne;
  } else if (det == "photon_counting") {
    s.detection = Detection::photon_counting;
  } else {
    throw InvalidInput("detection: expected homodyne or photon_counting");
  }

  const json& b = member(root, "initial_bloch", "config");
  if (!b.is_array() || b.size() != 3 || !b[0].is_number() || !b[1].is_number() ||
      !b[2].is_number()) {
    throw InvalidInput("initial_bloch: expected three numbers");
  }
  s.initial_bloch = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};

  const json& integ = member(root, "integrator", "config");
  allow_keys(integ, {"dt", "t_final", "seed", "record_stride"}, "integrator");
  s.integrator.dt = number(integ, "dt", "integrator");
  s.integrator.t_final = number(integ, "t_final", "integrator");
  s.integrator.seed = unsigned_integer(integ, "seed", "integrator");
  s.integrator.record_stride =
      static_cast<std::size_t>(unsigned_integer(integ, "record_stride", "integrator"));

  const json& ens = member(root, "ensemble", "config");
  allow_keys(ens, {"n_trajectories"}, "ensemble");
  s.n_trajectories = static_cast<std::size_t>(unsigned_integer(ens, "n_trajectories", "ensemble"));

  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot read config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

std::string scenario_to_json(const Scenario& s, int indent) {
  json j;
  j["version"] = kConfigVersion;
  if (!s.name.empty()) {
    j["name"] = s.name;
  }
  j["system"] = {{"gamma", s.gamma}, {"omega", s.omega}};
  j["input"] = input_to_json(s.input);
  j["detection"] = to_string(s.detection);
  j["initial_bloch"] = {s.initial_bloch.x, s.initial_bloch.y, s.initial_bloch.z};
  j["integrator"] = {{"dt", s.integrator.dt},
                     {"t_final", s.integrator.t_final},
                     {"seed", s.integrator.seed},
                     {"record_stride", s.integrator.record_stride}};
  j["ensemble"] = {{"n_trajectories", s.n_trajectories}};
  return j.dump(indent);
}

PulseAmplitude figure_pulse(cplx value) { return PulseAmplitude::constant(0.0, 5.0, value); }

std::vector<std::string> builtin_scenario_names() {
  return {"fig2_vacuum_hd",        "fig3_vacuum_pd", "fig4_single_photon_hd",
          "fig4_single_photon_pd", "fig5_cat_hd",    "fig6_cat_pd"};
}

Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  s.gamma = 1.0;
  s.integrator.dt = 1e-3;
  s.integrator.record_stride = 10;
  s.integrator.seed = 1;
  s.n_trajectories = 50;

  const double r = 1.0 / std::numbers::sqrt2;
  if (name == "fig2_vacuum_hd" || name == "fig3_vacuum_pd") {
    s.omega = std::numbers::pi;
    s.input = VacuumInput{};
    s.detection = name == "fig2_vacuum_hd" ? Detection::homodyne : Detection::photon_counting;
    s.initial_bloch = name == "fig2_vacuum_hd" ? BlochVector{1.0, 0.0, 0.0}
                                               : BlochVector{0.0, 0.0, 1.0};
    s.integrator.t_final = 10.0;
  } else if (name == "fig4_single_photon_hd" || name == "fig4_single_photon_pd") {
    s.omega = 0.0;
    s.input = SinglePhotonInput{GaussianWavepacket{1.5, 3.0}};
    s.detection =
        name == "fig4_single_photon_hd" ? Detection::homodyne : Detection::photon_counting;
    s.initial_bloch = {0.0, 0.0, -1.0};
    s.integrator.t_final = 15.0;
  } else if (name == "fig5_cat_hd") {
    s.omega = 0.0;
    s.input = CatStateInput({r, r}, {figure_pulse(1.0), figure_pulse(-1.0)});
    s.detection = Detection::homodyne;
    s.initial_bloch = {0.0, 0.0, -1.0};
    s.integrator.t_final = 15.0;
  } else if (name == "fig6_cat_pd") {
    s.omega = 0.0;
    s.input = CatStateInput({r, r}, {PulseAmplitude{}, figure_pulse(-1.0)});
    s.detection = Detection::photon_counting;
    s.initial_bloch = {0.0, 0.0, -1.0};
    s.integrator.t_final = 15.0;
  } else {
    throw InvalidInput("unknown built-in scenario '" + name + "'");
  }
  return s;
}

}  // namespace qfilter
