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

// Self-checks behind `qfilter validate`: closed-form filters against the
// generic operator equations, zero-field degenerations, fixed points,
// normalization and the purity-rate cross-checks.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qfilter/filters.hpp"
#include "qfilter/sde_engine.hpp"

namespace qfilter {

using VacuumFieldsFn = std::function<void(const BlockState&, const SystemTriple&, FieldDecomposition&)>;
using PhotonFieldsFn =
    std::function<void(const BlockState&, cplx, const SystemTriple&, FieldDecomposition&)>;
using CatFieldsFn = std::function<void(const BlockState&, std::span<const cplx>, const SystemTriple&,
                                       FieldDecomposition&)>;

// The closed forms under test; replaceable so a deliberately broken filter can
// be shown to fail.
struct SpecializedFilters {
  VacuumFieldsFn vacuum_hd = [](const BlockState& s, const SystemTriple& g, FieldDecomposition& o) {
    vacuum_hd_fields(s, g, o);
  };
  VacuumFieldsFn vacuum_pd = [](const BlockState& s, const SystemTriple& g, FieldDecomposition& o) {
    vacuum_pd_fields(s, g, o);
  };
  PhotonFieldsFn photon_hd = [](const BlockState& s, cplx xi, const SystemTriple& g,
                                FieldDecomposition& o) { photon_hd_fields(s, xi, g, o); };
  PhotonFieldsFn photon_pd = [](const BlockState& s, cplx xi, const SystemTriple& g,
                                FieldDecomposition& o) { photon_pd_fields(s, xi, g, o); };
  CatFieldsFn cat_hd = [](const BlockState& s, std::span<const cplx> a, const SystemTriple& g,
                          FieldDecomposition& o) { cat_hd_fields(s, a, g, o); };
  CatFieldsFn cat_pd = [](const BlockState& s, std::span<const cplx> a, const SystemTriple& g,
                          FieldDecomposition& o) { cat_pd_fields(s, a, g, o); };
};

struct ValidationOptions {
  SpecializedFilters filters;
  std::uint64_t seed = 20260101;
  std::size_t samples = 100;
  double tolerance = 1e-10;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  std::string detail;
};

std::vector<std::string> validation_check_names();
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

// Random inputs shared by the checks and the tests. States are built from
// vectors phi_j as rho^{jk} = |phi_k><phi_j|, which gives Hermitian-symmetric
// blocks and non-negative counting rates.
struct RandomCase {
  SystemTriple system;
  BlockState state;
  FieldSample field;
};

RandomCase random_vacuum_case(Rng& rng);
RandomCase random_photon_case(Rng& rng);
RandomCase random_cat_case(Rng& rng, std::size_t branches);

// Largest deviation between two decompositions in the parts that matter for
// the given detection scheme; infinity when only one carries a jump target.
double decomposition_deviation(const FieldDecomposition& a, const FieldDecomposition& b,
                               Detection detection);

}  // namespace qfilter
