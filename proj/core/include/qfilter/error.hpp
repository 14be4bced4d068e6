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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfilter {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Density operator with non-unit trace or non-Hermitian entries.
class InvalidState : public Error {
 public:
  using Error::Error;
};

// Malformed parameters: bad weights, overlapping pulse segments, bad config.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A detection was requested from a state whose counting rate is not positive.
class DegenerateJump : public Error {
 public:
  using Error::Error;
};

// rate * dt reached 1, so the per-step Bernoulli thinning is meaningless.
class StepTooLarge : public Error {
 public:
  using Error::Error;
};

class Divergence : public Error {
 public:
  Divergence(std::size_t step, const std::string& what)
      : Error("divergence at step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Trajectory records that do not share a time grid.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfilter
