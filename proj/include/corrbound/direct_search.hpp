// Copyright 2026 The corrbound Authors
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
#include <functional>
#include <span>
#include <vector>

namespace corrbound {

struct DirectSearchOptions {
  double initial_step = 0.3;      // simplex edge along each axis
  double min_diameter = 1e-7;     // stop when every vertex is this close to the best
  std::size_t max_evaluations = 2000;
};

struct DirectSearchResult {
  std::vector<double> x;
  double value = 0.0;
  double start_value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex minimization (reflection 1, expansion 2, contraction
/// 1/2, shrink 1/2). Non-finite objective values are treated as +infinity.
/// The start point is a simplex vertex, so the result never exceeds
/// f(start).
DirectSearchResult minimize_simplex(const Objective& f, std::vector<double> start,
                                    const DirectSearchOptions& options = {});

}  // namespace corrbound
