// Copyright 2026 The qwalk Authors
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

#include "qwalk/classical.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/evolution.hpp"

namespace qwalk {

namespace {

void guard_cells(std::size_t dim, std::size_t n, double max_cells) {
  const double cells = l1_ball_count(dim, n) * static_cast<double>(2 * dim);
  if (cells > max_cells) {
    throw ResourceLimitError("classical DP would hold ~" +
                             std::to_string(static_cast<long long>(cells)) +
                             " cells, above the limit of " +
                             std::to_string(static_cast<long long>(max_cells)));
  }
}

Distribution to_distribution(std::size_t dim, const std::map<Position, double>& mass) {
  std::vector<std::pair<Position, double>> entries(mass.begin(), mass.end());
  return Distribution::from_entries(dim, std::move(entries));
}

}  // namespace

CRWMParams::CRWMParams(std::size_t dim_, double p_same_) : dim(dim_), p_same(p_same_) {
  if (dim == 0 || dim > kMaxDim) throw std::invalid_argument("invalid walk dimension");
  if (!(p_same >= 0.0 && p_same <= 1.0)) {
    throw std::invalid_argument("p_same must lie in [0, 1]");
  }
}

Distribution crw_distribution(std::size_t dim, std::size_t n, double max_cells) {
  guard_cells(dim, n, max_cells);
  const std::size_t coin = 2 * dim;
  const double w = 1.0 / static_cast<double>(coin);
  std::map<Position, double> current{{Position(dim), 1.0}};
  for (std::size_t k = 0; k < n; ++k) {
    std::map<Position, double> next;
    for (const auto& [x, p] : current) {
      for (std::size_t a = 0; a < coin; ++a) next[x + Direction(a)] += w * p;
    }
    current.swap(next);
  }
  return to_distribution(dim, current);
}

Distribution crwm_distribution(const CRWMParams& params, std::size_t n, double max_cells) {
  const std::size_t dim = params.dim;
  guard_cells(dim, n, max_cells);
  if (n == 0) return to_distribution(dim, {{Position(dim), 1.0}});
  const std::size_t coin = 2 * dim;
  const double same = params.p_same;
  const double other = params.p_other();

  // weight[(x, a)]: probability of standing at x having arrived along a.
  std::map<Position, std::vector<double>> current;
  for (std::size_t a = 0; a < coin; ++a) {
    auto& row = current[Position(dim) + Direction(a)];
    row.resize(coin, 0.0);
    row[a] = 1.0 / static_cast<double>(coin);
  }
  for (std::size_t k = 1; k < n; ++k) {
    std::map<Position, std::vector<double>> next;
    for (const auto& [x, row] : current) {
      double total = 0.0;
      for (double w : row) total += w;
      for (std::size_t a = 0; a < coin; ++a) {
        // Arrive along a: repeat from a, or turn from any other b.
        const double w = same * row[a] + other * (total - row[a]);
        if (w == 0.0) continue;
        auto& target = next[x + Direction(a)];
        if (target.empty()) target.resize(coin, 0.0);
        target[a] += w;
      }
    }
    current.swap(next);
  }
  std::map<Position, double> mass;
  for (const auto& [x, row] : current) {
    double total = 0.0;
    for (double w : row) total += w;
    mass[x] = total;
  }
  return to_distribution(dim, mass);
}

double crw_dispersion(std::size_t /*dim*/, std::size_t n) { return static_cast<double>(n); }

double crwm_dispersion(const CRWMParams& params, std::size_t n) {
  if (n == 0) return 0.0;
  // With R_k = E[x_k . e_{a_k}], the sum over all unit vectors vanishes, so
  // E[x_k . e_{a_{k+1}}] = (p_same - p_other) R_k. That closes the recursion.
  const double bias = params.p_same - params.p_other();
  double d = 1.0;
  double r = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    d += 1.0 + 2.0 * bias * r;
    r = bias * r + 1.0;
  }
  return d;
}

Position sample_crwm(const CRWMParams& params, std::size_t n, std::uint64_t seed) {
  const std::size_t coin = 2 * params.dim;
  Rng rng(seed);
  Position x(params.dim);
  if (n == 0) return x;
  auto pick_uniform = [&](std::size_t count) {
    const auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(count));
    return i < count ? i : count - 1;
  };
  std::size_t last = pick_uniform(coin);
  x += Direction(last);
  for (std::size_t k = 1; k < n; ++k) {
    if (uniform01(rng) >= params.p_same) {
      // Uniform over the 2d - 1 other directions.
      std::size_t other = pick_uniform(coin - 1);
      if (other >= last) ++other;
      last = other;
    }
    x += Direction(last);
  }
  return x;
}

}  // namespace qwalk
