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

#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwalk_test {

DenseCoin reference_grover(std::size_t size) {
  DenseCoin c{size, std::vector<cd>(size * size)};
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      c.m[i * size + j] = 2.0 / static_cast<double>(size) - (i == j ? 1.0 : 0.0);
    }
  }
  return c;
}

DenseCoin reference_fourier(std::size_t size) {
  DenseCoin c{size, std::vector<cd>(size * size)};
  const double w = 2.0 * std::numbers::pi / static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      c.m[i * size + j] = std::polar(1.0 / std::sqrt(static_cast<double>(size)),
                                     w * static_cast<double>(i * j));
    }
  }
  return c;
}

DenseCoin reference_generalized(cd r, cd t, std::size_t size) {
  DenseCoin c{size, std::vector<cd>(size * size, t)};
  for (std::size_t i = 0; i < size; ++i) c.m[i * size + i] = r;
  return c;
}

std::vector<cd> uniform_state(std::size_t size) {
  return std::vector<cd>(size, 1.0 / std::sqrt(static_cast<double>(size)));
}

DenseWalk::DenseWalk(std::size_t dim, int radius, const std::vector<cd>& coin_state)
    : dim_(dim), radius_(radius), coin_(2 * dim), side_(2 * radius + 1) {
  if (coin_state.size() != coin_) throw std::invalid_argument("coin state size");
  cells_ = 1;
  for (std::size_t j = 0; j < dim; ++j) cells_ *= side_;
  amp_.assign(cells_ * coin_, 0.0);
  const Point origin(dim, 0);
  for (std::size_t a = 0; a < coin_; ++a) amp_[index(origin, a)] = coin_state[a];
}

std::size_t DenseWalk::index(const Point& x, std::size_t a) const {
  std::size_t cell = 0;
  for (std::size_t j = dim_; j-- > 0;) {
    if (x[j] < -radius_ || x[j] > radius_) throw std::out_of_range("outside the box");
    cell = cell * side_ + static_cast<std::size_t>(x[j] + radius_);
  }
  return cell * coin_ + a;
}

Point DenseWalk::point(std::size_t cell) const {
  Point x(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    x[j] = static_cast<int>(cell % side_) - radius_;
    cell /= side_;
  }
  return x;
}

void DenseWalk::step(const DenseCoin& coin, const std::vector<double>* theta) {
  std::vector<cd> next(amp_.size(), 0.0);
  std::vector<cd> row(coin_);
  for (std::size_t cell = 0; cell < cells_; ++cell) {
    bool any = false;
    for (std::size_t a = 0; a < coin_; ++a) any = any || amp_[cell * coin_ + a] != 0.0;
    if (!any) continue;
    for (std::size_t i = 0; i < coin_; ++i) {
      cd s = 0.0;
      for (std::size_t j = 0; j < coin_; ++j) s += coin(i, j) * amp_[cell * coin_ + j];
      if (theta) s *= std::polar(1.0, (*theta)[i]);
      row[i] = s;
    }
    const Point x = point(cell);
    for (std::size_t a = 0; a < coin_; ++a) {
      Point y = x;
      y[a / 2] += (a % 2 == 0) ? 1 : -1;
      next[index(y, a)] += row[a];
    }
  }
  amp_.swap(next);
}

cd DenseWalk::amplitude(const Point& x, std::size_t a) const { return amp_[index(x, a)]; }

ProbabilityMap DenseWalk::distribution() const {
  ProbabilityMap p;
  for (std::size_t cell = 0; cell < cells_; ++cell) {
    double s = 0.0;
    for (std::size_t a = 0; a < coin_; ++a) s += std::norm(amp_[cell * coin_ + a]);
    if (s > 0.0) p[point(cell)] = s;
  }
  return p;
}

double DenseWalk::norm() const {
  double s = 0.0;
  for (const auto& v : amp_) s += std::norm(v);
  return s;
}

ProbabilityMap sign_averaged_mean(std::size_t dim, std::size_t n, const DenseCoin& coin,
                                  const std::vector<cd>& coin_state) {
  const std::size_t size = 2 * dim;
  const std::size_t bits = size * n;
  if (bits > 24) throw std::invalid_argument("too many sign patterns");
  const std::size_t patterns = std::size_t{1} << bits;
  ProbabilityMap mean;
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    DenseWalk walk(dim, static_cast<int>(n), coin_state);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> theta(size);
      for (std::size_t a = 0; a < size; ++a) {
        theta[a] = ((mask >> (k * size + a)) & 1U) ? std::numbers::pi : 0.0;
      }
      walk.step(coin, &theta);
    }
    for (const auto& [x, p] : walk.distribution()) mean[x] += p / static_cast<double>(patterns);
  }
  return mean;
}

double crw2_probability(int n, int x, int y) {
  // u = x + y and v = x - y perform independent +-1 walks.
  const int u = x + y;
  const int v = x - y;
  if (std::abs(u) > n || std::abs(v) > n || (n + u) % 2 != 0 || (n + v) % 2 != 0) return 0.0;
  auto binom_half = [n](int s) {
    const int k = (n + s) / 2;
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                    n * std::log(2.0));
  };
  return binom_half(u) * binom_half(v);
}

ProbabilityMap to_map(const qwalk::Distribution& dist) {
  ProbabilityMap p;
  for (const auto& [x, mass] : dist.entries()) {
    Point pt(x.dim());
    for (std::size_t j = 0; j < x.dim(); ++j) pt[j] = x[j];
    p[pt] += mass;
  }
  return p;
}

ProbabilityMap to_map(const qwalk::WalkState& state) {
  ProbabilityMap p;
  for (std::size_t i = 0; i < state.num_positions(); ++i) {
    const auto x = state.position(i);
    Point pt(x.dim());
    for (std::size_t j = 0; j < x.dim(); ++j) pt[j] = x[j];
    double s = 0.0;
    for (const auto& v : state.coin_vector(i)) s += std::norm(v);
    p[pt] += s;
  }
  return p;
}

double max_difference(const ProbabilityMap& a, const ProbabilityMap& b) {
  double worst = 0.0;
  for (const auto& [x, p] : a) {
    const auto it = b.find(x);
    worst = std::max(worst, std::abs(p - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [x, p] : b) {
    if (!a.contains(x)) worst = std::max(worst, std::abs(p));
  }
  return worst;
}

double second_moment(const ProbabilityMap& p) {
  double s = 0.0;
  for (const auto& [x, mass] : p) {
    double r2 = 0.0;
    for (int c : x) r2 += static_cast<double>(c) * c;
    s += mass * r2;
  }
  return s;
}

}  // namespace qwalk_test
