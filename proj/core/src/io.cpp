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

#include "qfilter/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "qfilter/build_info.hpp"
#include "qfilter/error.hpp"

namespace qfilter {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw InvalidInput("not a number: '" + text + "'");
  }
  return v;
}

namespace {

void row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) {
      out << ',';
    }
    out << format_double(v);
    first = false;
  }
  out << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& rec) {
  out << (rec.detection == Detection::homodyne ? "t,x,y,z,dW,Y,P\n" : "t,x,y,z,dN,Y,P\n");
  for (std::size_t k = 0; k < rec.rows(); ++k) {
    const auto& b = rec.states[k];
    row(out, {rec.times[k], b.x, b.y, b.z, rec.innovations[k], rec.record[k], rec.purity[k]});
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidInput("empty CSV");
  }
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
      t.header.push_back(cell);
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<double> r;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      r.push_back(parse_double(cell));
    }
    if (r.size() != t.header.size()) {
      throw InvalidInput("CSV row width does not match header");
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

void write_ensemble_csv(std::ostream& out, const EnsembleResult& r) {
  out << "t,x_mean,x_se,x_me,y_mean,y_se,y_me,z_mean,z_se,z_me,P_mean,P_se,P_me\n";
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    const auto& me = r.me.states[k];
    row(out, {r.times[k], r.x.mean[k], r.x.standard_error[k], me.x, r.y.mean[k],
              r.y.standard_error[k], me.y, r.z.mean[k], r.z.standard_error[k], me.z,
              r.purity.mean[k], r.purity.standard_error[k], r.me.purity[k]});
  }
}

void write_trajectory_dump(std::ostream& out, const EnsembleResult& r) {
  out << "trajectory,t,x,y,z,innovation,Y,P\n";
  for (std::size_t i = 0; i < r.trajectories.size(); ++i) {
    const auto& rec = r.trajectories[i];
    for (std::size_t k = 0; k < rec.rows(); ++k) {
      const auto& b = rec.states[k];
      row(out, {static_cast<double>(i), rec.times[k], b.x, b.y, b.z, rec.innovations[k],
                rec.record[k], rec.purity[k]});
    }
  }
}

void write_purity_csv(std::ostream& out, const PurityTable& p) {
  out << "t,P_me,dPdt_me,dPdt_me_trace,P_mean,P_se\n";
  for (std::size_t k = 0; k < p.times.size(); ++k) {
    row(out, {p.times[k], p.me_purity[k], p.me_rate[k], p.me_rate_trace[k], p.mean[k],
              p.standard_error[k]});
  }
}

std::string manifest_to_json(const Manifest& m) {
  using nlohmann::json;
  json j;
  j["format_version"] = kFormatVersion;
  j["qfilter_version"] = version_string();
  j["build"] = build_describe();
  j["command"] = m.command;
  j["seed"] = m.scenario.integrator.seed;
  j["config"] = json::parse(scenario_to_json(m.scenario));
  j["outputs"] = m.outputs;
  j["warnings"] = m.warnings;
  if (m.metrics) {
    auto obs = [](const ObservableMetrics& o) {
      return json{{"sup_norm", o.sup_norm}, {"rmse", o.rmse}, {"max_abs_z_score", o.max_abs_z_score}};
    };
    j["metrics"] = {{"x", obs(m.metrics->x)}, {"y", obs(m.metrics->y)}, {"z", obs(m.metrics->z)},
                    {"sup_norm_z", m.metrics->z.sup_norm}};
    j["completed_trajectories"] = m.completed;
  }
  if (!m.failures.empty()) {
    json f = json::array();
    for (const auto& e : m.failures) {
      f.push_back({{"index", e.index}, {"message", e.message}});
    }
    j["failed_trajectories"] = f;
  }
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidInput("cannot write '" + path + "'");
  }
  out << text;
  if (!out) {
    throw InvalidInput("write to '" + path + "' failed");
  }
}

}  // namespace qfilter
