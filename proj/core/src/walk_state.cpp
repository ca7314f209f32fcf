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

#include "qwalk/walk_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

// Walks the union of two sorted key arrays, calling visit(i_or_npos, j_or_npos).
template <typename Visit>
void merge_walk(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                Visit&& visit) {
  constexpr auto npos = static_cast<std::size_t>(-1);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      visit(i++, npos);
    } else if (i == a.size() || b[j] < a[i]) {
      visit(npos, j++);
    } else {
      visit(i++, j++);
    }
  }
}

}  // namespace

WalkState::WalkState(std::size_t dim) : codec_(dim) {}

WalkState::WalkState(std::size_t dim, std::vector<std::uint64_t> keys,
                     std::vector<Amplitude> amplitudes, int reach)
    : codec_(dim), keys_(std::move(keys)), amplitudes_(std::move(amplitudes)),
      reach_(reach) {
  if (amplitudes_.size() != keys_.size() * codec_.coin_size()) {
    throw std::invalid_argument("amplitude buffer does not match key count");
  }
}

Amplitude WalkState::amplitude(const Position& x, Direction a) const {
  if (a.index() >= coin_size()) throw std::out_of_range("direction out of range");
  const auto key = codec_.encode(x);
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return {};
  const auto i = static_cast<std::size_t>(it - keys_.begin());
  return amplitudes_[i * coin_size() + a.index()];
}

void WalkState::set_amplitude(const Position& x, Direction a, Amplitude value) {
  if (a.index() >= coin_size()) throw std::out_of_range("direction out of range");
  const auto key = codec_.encode(x);
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  const auto i = static_cast<std::size_t>(it - keys_.begin());
  if (it == keys_.end() || *it != key) {
    keys_.insert(it, key);
    amplitudes_.insert(amplitudes_.begin() + static_cast<std::ptrdiff_t>(i * coin_size()),
                       coin_size(), Amplitude{});
    for (std::size_t j = 0; j < x.dim(); ++j) {
      reach_ = std::max(reach_, std::abs(x[j]));
    }
  }
  amplitudes_[i * coin_size() + a.index()] = value;
}

WalkState& WalkState::operator*=(Amplitude factor) {
  for (auto& v : amplitudes_) v *= factor;
  return *this;
}

Distribution::Distribution(std::size_t dim) : codec_(dim) {}

Distribution::Distribution(std::size_t dim, std::vector<std::uint64_t> keys,
                           std::vector<double> masses)
    : codec_(dim), keys_(std::move(keys)), masses_(std::move(masses)) {
  if (keys_.size() != masses_.size()) {
    throw std::invalid_argument("mass buffer does not match key count");
  }
}

Distribution Distribution::from_entries(
    std::size_t dim, std::vector<std::pair<Position, double>> entries) {
  Distribution d(dim);
  std::vector<std::pair<std::uint64_t, double>> packed;
  packed.reserve(entries.size());
  for (const auto& [x, p] : entries) packed.emplace_back(d.codec_.encode(x), p);
  std::sort(packed.begin(), packed.end());
  for (const auto& [k, p] : packed) {
    if (!d.keys_.empty() && d.keys_.back() == k) {
      d.masses_.back() += p;
    } else {
      d.keys_.push_back(k);
      d.masses_.push_back(p);
    }
  }
  return d;
}

double Distribution::mass(const Position& x) const {
  const auto key = codec_.encode(x);
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return 0.0;
  return masses_[static_cast<std::size_t>(it - keys_.begin())];
}

double Distribution::total() const {
  double s = 0.0;
  for (double p : masses_) s += p;
  return s;
}

std::vector<std::pair<Position, double>> Distribution::entries() const {
  std::vector<std::pair<Position, double>> out;
  out.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    out.emplace_back(codec_.decode(keys_[i]), masses_[i]);
  }
  return out;
}

void Distribution::accumulate(const Distribution& other, double weight) {
  if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<std::uint64_t> keys;
  std::vector<double> masses;
  keys.reserve(std::max(keys_.size(), other.keys_.size()));
  masses.reserve(keys.capacity());
  merge_walk(keys_, other.keys_, [&](std::size_t i, std::size_t j) {
    constexpr auto npos = static_cast<std::size_t>(-1);
    double p = 0.0;
    if (i != npos) p += masses_[i];
    if (j != npos) p += weight * other.masses_[j];
    keys.push_back(i != npos ? keys_[i] : other.keys_[j]);
    masses.push_back(p);
  });
  keys_ = std::move(keys);
  masses_ = std::move(masses);
}

Distribution& Distribution::operator*=(double factor) {
  for (auto& p : masses_) p *= factor;
  return *this;
}

WalkState new_initial_state(std::size_t dim) {
  const std::size_t coin = 2 * dim;
  std::vector<Amplitude> s(coin, Amplitude(1.0 / std::sqrt(static_cast<double>(coin))));
  return new_initial_state_with_coin_state(dim, s);
}

WalkState new_initial_state_with_coin_state(std::size_t dim,
                                            std::span<const Amplitude> coin) {
  if (dim == 0) throw std::invalid_argument("walk dimension must be at least 1");
  LatticeCodec codec(dim);
  if (coin.size() != codec.coin_size()) {
    throw std::invalid_argument("coin state has " + std::to_string(coin.size()) +
                                " components, expected " +
                                std::to_string(codec.coin_size()));
  }
  double n2 = 0.0;
  for (const auto& c : coin) n2 += std::norm(c);
  if (std::abs(n2 - 1.0) > 1e-10) {
    throw std::invalid_argument("coin state is not normalized (norm^2 = " +
                                std::to_string(n2) + ")");
  }
  return WalkState(dim, {codec.origin()}, std::vector<Amplitude>(coin.begin(), coin.end()), 0);
}

double norm(const WalkState& state) {
  double s = 0.0;
  for (const auto& v : state.amplitudes()) s += std::norm(v);
  return std::sqrt(s);
}

Distribution position_distribution(const WalkState& state) {
  const std::size_t coin = state.coin_size();
  const auto amps = state.amplitudes();
  std::vector<double> masses(state.num_positions());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    double p = 0.0;
    for (std::size_t a = 0; a < coin; ++a) p += std::norm(amps[i * coin + a]);
    masses[i] = p;
  }
  const auto keys = state.keys();
  return Distribution(state.dim(), {keys.begin(), keys.end()}, std::move(masses));
}

double second_moment(const Distribution& dist) {
  double s = 0.0;
  const auto keys = dist.keys();
  const auto masses = dist.masses();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    s += masses[i] * static_cast<double>(dist.codec().squared_norm(keys[i]));
  }
  return s;
}

double second_moment(const WalkState& state) {
  const std::size_t coin = state.coin_size();
  const auto keys = state.keys();
  const auto amps = state.amplitudes();
  double s = 0.0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    double p = 0.0;
    for (std::size_t a = 0; a < coin; ++a) p += std::norm(amps[i * coin + a]);
    s += p * static_cast<double>(state.codec().squared_norm(keys[i]));
  }
  return s;
}

double max_abs_difference(const WalkState& lhs, const WalkState& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("dimension mismatch");
  constexpr auto npos = static_cast<std::size_t>(-1);
  const std::size_t coin = lhs.coin_size();
  const auto la = lhs.amplitudes();
  const auto ra = rhs.amplitudes();
  double worst = 0.0;
  merge_walk(lhs.keys(), rhs.keys(), [&](std::size_t i, std::size_t j) {
    for (std::size_t a = 0; a < coin; ++a) {
      const Amplitude u = i != npos ? la[i * coin + a] : Amplitude{};
      const Amplitude v = j != npos ? ra[j * coin + a] : Amplitude{};
      worst = std::max(worst, std::abs(u - v));
    }
  });
  return worst;
}

double max_abs_difference(const Distribution& lhs, const Distribution& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("dimension mismatch");
  constexpr auto npos = static_cast<std::size_t>(-1);
  double worst = 0.0;
  merge_walk(lhs.keys(), rhs.keys(), [&](std::size_t i, std::size_t j) {
    const double u = i != npos ? lhs.masses()[i] : 0.0;
    const double v = j != npos ? rhs.masses()[j] : 0.0;
    worst = std::max(worst, std::abs(u - v));
  });
  return worst;
}

double total_variation(const Distribution& lhs, const Distribution& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("dimension mismatch");
  constexpr auto npos = static_cast<std::size_t>(-1);
  double s = 0.0;
  merge_walk(lhs.keys(), rhs.keys(), [&](std::size_t i, std::size_t j) {
    const double u = i != npos ? lhs.masses()[i] : 0.0;
    const double v = j != npos ? rhs.masses()[j] : 0.0;
    s += std::abs(u - v);
  });
  return 0.5 * s;
}

}  // namespace qwalk
