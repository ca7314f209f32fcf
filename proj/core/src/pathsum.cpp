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

#include "qwalk/pathsum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "shift_merge.hpp"

namespace qwalk {

namespace {

std::size_t dim_for(std::size_t coin_size) {
  if (coin_size < 2 || coin_size % 2 != 0) {
    throw std::invalid_argument("coin size must be even and >= 2, got " +
                                std::to_string(coin_size));
  }
  return coin_size / 2;
}

void guard_paths(std::size_t coin_size, std::size_t n, double max_paths) {
  const double count = std::pow(static_cast<double>(coin_size), static_cast<double>(n));
  if (count > max_paths) {
    throw ResourceLimitError("enumerating " + std::to_string(coin_size) + "^" +
                             std::to_string(n) + " paths exceeds the limit of " +
                             std::to_string(static_cast<long long>(max_paths)));
  }
}

// Calls visit(path) for every path in D^n, odometer order.
template <typename Visit>
void for_each_path(std::size_t coin_size, std::size_t n, Visit&& visit) {
  DirectionPath path;
  path.steps.assign(n, Direction(0));
  for (;;) {
    visit(static_cast<const DirectionPath&>(path));
    std::size_t j = 0;
    while (j < n) {
      const std::size_t next = path.steps[j].index() + 1;
      if (next < coin_size) {
        path.steps[j] = Direction(next);
        break;
      }
      path.steps[j] = Direction(0);
      ++j;
    }
    if (j == n) return;
  }
}

Distribution collect(std::size_t dim, const std::map<std::uint64_t, double>& acc) {
  std::vector<std::uint64_t> keys;
  std::vector<double> masses;
  keys.reserve(acc.size());
  masses.reserve(acc.size());
  for (const auto& [k, p] : acc) {
    keys.push_back(k);
    masses.push_back(p);
  }
  return Distribution(dim, std::move(keys), std::move(masses));
}

// DP over (position, last direction): `first` holds the weight of each first
// step, `transfer[a * D + b]` the weight of stepping a after b.
Distribution transfer_dp(std::size_t dim, const std::vector<double>& first,
                         const std::vector<double>& transfer, std::size_t n) {
  LatticeCodec codec(dim);
  const std::size_t coin = codec.coin_size();
  if (n > static_cast<std::size_t>(codec.max_radius())) {
    throw ResourceLimitError("step count exceeds the representable lattice radius");
  }
  if (n == 0) return Distribution(dim, {codec.origin()}, {1.0});

  auto nonzero = [](std::span<const double> row) {
    for (double w : row) {
      if (w != 0.0) return true;
    }
    return false;
  };
  std::vector<std::uint64_t> keys{codec.origin()};
  std::vector<double> rows = first;
  std::vector<std::uint64_t> next_keys;
  std::vector<double> next_rows;
  detail::shift_merge<double>(codec, keys, rows, next_keys, next_rows, nonzero);
  keys.swap(next_keys);
  rows.swap(next_rows);

  std::vector<double> mixed;
  for (std::size_t k = 1; k < n; ++k) {
    mixed.assign(rows.size(), 0.0);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const double* in = rows.data() + i * coin;
      double* out = mixed.data() + i * coin;
      for (std::size_t a = 0; a < coin; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < coin; ++b) s += transfer[a * coin + b] * in[b];
        out[a] = s;
      }
    }
    detail::shift_merge<double>(codec, keys, mixed, next_keys, next_rows, nonzero);
    keys.swap(next_keys);
    rows.swap(next_rows);
  }

  std::vector<double> masses(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    double s = 0.0;
    for (std::size_t a = 0; a < coin; ++a) s += rows[i * coin + a];
    masses[i] = s;
  }
  return Distribution(dim, std::move(keys), std::move(masses));
}

std::vector<Amplitude> uniform_coin_state(std::size_t coin_size) {
  return std::vector<Amplitude>(coin_size,
                                Amplitude(1.0 / std::sqrt(static_cast<double>(coin_size))));
}

}  // namespace

Position DirectionPath::endpoint(std::size_t dim) const {
  Position x(dim);
  for (const auto a : steps) x += a;
  return x;
}

Amplitude xi_grover(const DirectionPath& path, Amplitude r, Amplitude t) {
  if (path.steps.empty()) throw std::invalid_argument("path must have at least one step");
  Amplitude product = 1.0;
  for (std::size_t j = 0; j + 1 < path.steps.size(); ++j) {
    product *= path.steps[j] == path.steps[j + 1] ? r : t;
  }
  return product;
}

double xi0_grover(const DirectionPath& path, std::size_t coin_size) {
  if (path.steps.empty()) throw std::invalid_argument("path must have at least one step");
  const double d = static_cast<double>(coin_size);
  double product = 1.0;
  for (std::size_t j = 0; j + 1 < path.steps.size(); ++j) {
    product *= path.steps[j] == path.steps[j + 1] ? d - 2.0 : -2.0;
  }
  return product;
}

WalkState pure_qw_amplitudes(std::size_t dim, std::size_t n) {
  const std::size_t coin = 2 * dim;
  if (coin < 4) {
    throw std::invalid_argument("the Grover path sum is degenerate for |D| = 2");
  }
  if (n == 0) return new_initial_state(dim);
  guard_paths(coin, n, kMaxEnumeratedPaths);

  LatticeCodec codec(dim);
  const double d = static_cast<double>(coin);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n+1}
  const double coefficient = sign / std::pow(d, (2.0 * static_cast<double>(n) - 1.0) / 2.0);

  std::map<std::uint64_t, std::vector<Amplitude>> acc;
  for_each_path(coin, n, [&](const DirectionPath& path) {
    auto& row = acc[codec.encode(path.endpoint(dim))];
    if (row.empty()) row.assign(coin, Amplitude{});
    row[path.steps.front().index()] += coefficient * xi0_grover(path, coin);
  });

  std::vector<std::uint64_t> keys;
  std::vector<Amplitude> amps;
  for (const auto& [k, row] : acc) {
    keys.push_back(k);
    amps.insert(amps.end(), row.begin(), row.end());
  }
  return WalkState(dim, std::move(keys), std::move(amps), static_cast<int>(n));
}

CoinMatrix momentum_matrix(std::span<const double> k, const CoinMatrix& coin) {
  const std::size_t size = coin.size();
  if (size % 2 != 0 || k.size() != size / 2) {
    throw std::invalid_argument("momentum vector must have one entry per axis");
  }
  std::vector<Amplitude> e(size * size);
  for (std::size_t a = 0; a < size; ++a) {
    const Direction dir(a);
    const Amplitude lambda = std::polar(1.0, -k[dir.axis()] * dir.sign());
    for (std::size_t b = 0; b < size; ++b) e[a * size + b] = lambda * coin(a, b);
  }
  return CoinMatrix(size, std::move(e));
}

WalkState momentum_space_state(std::size_t dim, std::size_t n, const CoinMatrix& coin,
                               std::size_t grid, std::span<const Amplitude> initial_coin) {
  const std::size_t size = 2 * dim;
  if (coin.size() != size) throw std::invalid_argument("coin size must be 2 * dim");
  if (grid == 0) throw std::invalid_argument("momentum grid must be non-empty");
  const std::vector<Amplitude> chi = initial_coin.empty()
                                         ? uniform_coin_state(size)
                                         : std::vector<Amplitude>(initial_coin.begin(),
                                                                  initial_coin.end());
  LatticeCodec codec(dim);
  const int radius = static_cast<int>(n);

  // Lattice points inside the light cone.
  std::vector<Position> sites;
  {
    Position x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = -radius;
    for (;;) {
      if (x.l1_norm() <= radius) sites.push_back(x);
      std::size_t j = 0;
      while (j < dim && x[j] == radius) x[j++] = -radius;
      if (j == dim) break;
      ++x[j];
    }
  }
  std::vector<Amplitude> acc(sites.size() * size);

  std::vector<std::size_t> m(dim, 0);
  std::vector<double> k(dim);
  const double spacing = 2.0 * std::numbers::pi / static_cast<double>(grid);
  for (;;) {
    for (std::size_t j = 0; j < dim; ++j) k[j] = -std::numbers::pi + spacing * static_cast<double>(m[j]);
    const CoinMatrix lk = momentum_matrix(k, coin);
    std::vector<Amplitude> v = chi;
    for (std::size_t s = 0; s < n; ++s) v = lk.apply(v);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      double kx = 0.0;
      for (std::size_t j = 0; j < dim; ++j) kx += k[j] * sites[i][j];
      const Amplitude phase = std::polar(1.0, kx);
      for (std::size_t a = 0; a < size; ++a) acc[i * size + a] += phase * v[a];
    }
    std::size_t j = 0;
    while (j < dim && m[j] + 1 == grid) m[j++] = 0;
    if (j == dim) break;
    ++m[j];
  }

  const double scale = 1.0 / std::pow(static_cast<double>(grid), static_cast<double>(dim));
  std::vector<std::pair<std::uint64_t, std::size_t>> order;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    bool keep = false;
    for (std::size_t a = 0; a < size; ++a) {
      acc[i * size + a] *= scale;
      keep = keep || std::abs(acc[i * size + a]) >= 1e-12;
    }
    if (keep) order.emplace_back(codec.encode(sites[i]), i);
  }
  std::sort(order.begin(), order.end());
  std::vector<std::uint64_t> keys;
  std::vector<Amplitude> amps;
  for (const auto& [key, i] : order) {
    keys.push_back(key);
    amps.insert(amps.end(), acc.begin() + static_cast<std::ptrdiff_t>(i * size),
                acc.begin() + static_cast<std::ptrdiff_t>((i + 1) * size));
  }
  return WalkState(dim, std::move(keys), std::move(amps), radius);
}

Lemma1Coefficients lemma1_coeffs(std::size_t n, std::size_t coin_size) {
  if (n == 0) throw std::invalid_argument("projector power coefficients start at n = 1");
  const double d = static_cast<double>(coin_size);
  const double ratio = std::pow(2.0 / d - 1.0, static_cast<double>(n - 1));
  return {2.0 / std::sqrt(d) * ratio, -ratio};
}

Distribution mean_dist_grover(const GroverParams& params, std::size_t n) {
  validate(params);
  const std::size_t coin = params.coin_size;
  const std::size_t dim = dim_for(coin);
  const double k = path_normalization(params);
  const double r2 = std::norm(params.r);
  const double t2 = std::norm(params.t);
  std::vector<double> transfer(coin * coin, t2);
  for (std::size_t a = 0; a < coin; ++a) transfer[a * coin + a] = r2;
  return transfer_dp(dim, std::vector<double>(coin, k), transfer, n);
}

Distribution mean_dist_grover_bruteforce(const GroverParams& params, std::size_t n,
                                         double max_paths) {
  validate(params);
  const std::size_t coin = params.coin_size;
  const std::size_t dim = dim_for(coin);
  LatticeCodec codec(dim);
  if (n == 0) return Distribution(dim, {codec.origin()}, {1.0});
  guard_paths(coin, n, max_paths);
  const double k = path_normalization(params);
  std::map<std::uint64_t, double> acc;
  for_each_path(coin, n, [&](const DirectionPath& path) {
    acc[codec.encode(path.endpoint(dim))] += k * std::norm(xi_grover(path, params.r, params.t));
  });
  return collect(dim, acc);
}

double per_realization_prob(const CoinMatrix& coin, std::span<const PhaseVector> phases,
                            const Position& x, std::span<const Amplitude> initial_coin,
                            double max_paths) {
  const std::size_t size = coin.size();
  const std::size_t dim = dim_for(size);
  if (x.dim() != dim) throw std::invalid_argument("target position has the wrong dimension");
  const std::vector<Amplitude> chi = initial_coin.empty()
                                         ? uniform_coin_state(size)
                                         : std::vector<Amplitude>(initial_coin.begin(),
                                                                  initial_coin.end());
  if (chi.size() != size) throw std::invalid_argument("initial coin state has the wrong length");
  const std::size_t n = phases.size();
  for (const auto& theta : phases) {
    if (theta.size() != size) throw std::invalid_argument("phase vector has the wrong length");
  }
  if (n == 0) {
    if (x.l1_norm() != 0) return 0.0;
    double s = 0.0;
    for (const auto& c : chi) s += std::norm(c);
    return s;
  }
  guard_paths(size, n, max_paths);

  const std::vector<Amplitude> first = coin.apply(chi);
  std::vector<Amplitude> final_coin(size);

  // Depth-first over chronological direction sequences, cut when the target
  // is out of reach of the remaining steps.
  struct Frame {
    Position at;
    Amplitude amp;
  };
  auto recurse = [&](auto&& self, std::size_t depth, const Frame& frame, std::size_t last) -> void {
    if (depth == n) {
      if (frame.at == x) final_coin[last] += frame.amp;
      return;
    }
    for (std::size_t a = 0; a < size; ++a) {
      Frame next{frame.at + Direction(a), {}};
      Position gap(dim);
      for (std::size_t j = 0; j < dim; ++j) gap[j] = x[j] - next.at[j];
      if (gap.l1_norm() > static_cast<std::int64_t>(n - depth - 1)) continue;
      const Amplitude weight = depth == 0 ? first[a] : coin(a, last);
      next.amp = frame.amp * weight * std::polar(1.0, phases[depth][a]);
      self(self, depth + 1, next, a);
    }
  };
  recurse(recurse, 0, Frame{Position(dim), Amplitude(1.0)}, 0);

  double p = 0.0;
  for (const auto& c : final_coin) p += std::norm(c);
  return p;
}

double per_realization_prob(const GroverParams& params, std::span<const PhaseVector> phases,
                            const Position& x) {
  return per_realization_prob(generalized_grover(params), phases, x);
}

Amplitude xi_fourier(const DirectionPath& path, std::size_t coin_size, bool symmetrized) {
  const std::size_t n = path.steps.size();
  if (n == 0) throw std::invalid_argument("path must have at least one step");
  if (!symmetrized && path.steps.back().index() != 0) return {};
  std::size_t exponent = 0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    exponent = (exponent + path.steps[j].index() * path.steps[j + 1].index()) % coin_size;
  }
  const double d = static_cast<double>(coin_size);
  const double magnitude =
      std::pow(d, -(symmetrized ? static_cast<double>(n) : static_cast<double>(n) - 1.0) / 2.0);
  return std::polar(magnitude, 2.0 * std::numbers::pi * static_cast<double>(exponent) / d);
}

Distribution mean_dist_fourier(std::size_t dim, std::size_t n, bool symmetrized) {
  const std::size_t coin = 2 * dim;
  const double uniform = 1.0 / static_cast<double>(coin);
  std::vector<double> first(coin, symmetrized ? uniform : 0.0);
  if (!symmetrized) first[0] = 1.0;
  return transfer_dp(dim, first, std::vector<double>(coin * coin, uniform), n);
}

Distribution mean_dist_fourier_bruteforce(std::size_t dim, std::size_t n, bool symmetrized,
                                          double max_paths) {
  LatticeCodec codec(dim);
  const std::size_t coin = codec.coin_size();
  if (n == 0) return Distribution(dim, {codec.origin()}, {1.0});
  guard_paths(coin, n, max_paths);
  std::map<std::uint64_t, double> acc;
  for_each_path(coin, n, [&](const DirectionPath& path) {
    const double w = std::norm(xi_fourier(path, coin, symmetrized));
    if (w != 0.0) acc[codec.encode(path.endpoint(dim))] += w;
  });
  return collect(dim, acc);
}

std::vector<Amplitude> symmetrized_fourier_coin_state(std::size_t coin_size) {
  return fourier_coin(coin_size).adjoint().apply(uniform_coin_state(coin_size));
}

}  // namespace qwalk
