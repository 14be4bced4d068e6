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

// Locale-independent CSV export and the JSON run manifest.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfilter/ensemble.hpp"
#include "qfilter/scenario.hpp"
#include "qfilter/sde_engine.hpp"

namespace qfilter {

inline constexpr const char* kFormatVersion = "1";

// Shortest representation that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& text);

// Columns t,x,y,z,dW,Y,P (homodyne) or t,x,y,z,dN,Y,P (counting).
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& rec);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Reads any CSV produced by this module. Throws InvalidInput on malformed input.
CsvTable read_csv(std::istream& in);

// t, then mean/se/me for x, y, z and P.
void write_ensemble_csv(std::ostream& out, const EnsembleResult& result);

// Long format: trajectory,t,x,y,z,innovation,Y,P.
void write_trajectory_dump(std::ostream& out, const EnsembleResult& result);

struct PurityTable {
  std::vector<double> times;
  std::vector<double> me_purity;
  std::vector<double> me_rate;        // closed form on the ME state
  std::vector<double> me_rate_trace;  // trace formula on the ME state
  std::vector<double> mean;
  std::vector<double> standard_error;
};

void write_purity_csv(std::ostream& out, const PurityTable& table);

struct Manifest {
  std::string command;
  Scenario scenario;
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  std::optional<ComparisonMetrics> metrics;
  std::vector<TrajectoryFailure> failures;
  std::size_t completed = 0;
};

// Config echo, format version, seed and the git describe of the build; enough
// to rerun the command bit-exactly.
std::string manifest_to_json(const Manifest& m);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace qfilter
