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

#include "corrbound/direct_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace corrbound {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

DirectSearchResult minimize_simplex(const Objective& f, std::vector<double> start,
                                    const DirectSearchOptions& options) {
  const std::size_t n = start.size();
  DirectSearchResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, eval(start)});
  result.start_value = simplex.front().f;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = start;
    x[i] += options.initial_step;
    simplex.push_back({x, eval(x)});
  }

  auto along = [n](const std::vector<double>& from, const std::vector<double>& to, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = from[i] + t * (to[i] - from[i]);
    return out;
  };

  while (n > 0) {
    // stable ordering keeps ties deterministic
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

    double diameter = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = simplex[v].x[i] - simplex[0].x[i];
        d2 += d * d;
      }
      diameter = std::max(diameter, std::sqrt(d2));
    }
    if (diameter < options.min_diameter) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_evaluations) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);

    Vertex& worst = simplex[n];
    const double f_best = simplex[0].f;
    const double f_second = simplex[n - 1].f;

    auto reflected = along(centroid, worst.x, -kReflect);
    const double f_r = eval(reflected);

    if (f_r < f_best) {
      auto expanded = along(centroid, reflected, kExpand);
      const double f_e = eval(expanded);
      if (f_e < f_r) {
        worst = {std::move(expanded), f_e};
      } else {
        worst = {std::move(reflected), f_r};
      }
      continue;
    }
    if (f_r < f_second) {
      worst = {std::move(reflected), f_r};
      continue;
    }

    bool shrink = false;
    if (f_r < worst.f) {
      auto outside = along(centroid, reflected, kContract);
      const double f_c = eval(outside);
      if (f_c <= f_r) {
        worst = {std::move(outside), f_c};
      } else {
        shrink = true;
      }
    } else {
      auto inside = along(centroid, worst.x, kContract);
      const double f_c = eval(inside);
      if (f_c < worst.f) {
        worst = {std::move(inside), f_c};
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t v = 1; v <= n; ++v) {
        simplex[v].x = along(simplex[0].x, simplex[v].x, kShrink);
        simplex[v].f = eval(simplex[v].x);
      }
    }
  }

  const auto best = std::min_element(simplex.begin(), simplex.end(),
                                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  result.x = best->x;
  result.value = best->f;
  return result;
}

}  // namespace corrbound
