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

#include "qwalk/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "shift_merge.hpp"

namespace qwalk {

namespace {

constexpr double kPrune2 = kPruneAmplitude * kPruneAmplitude;

bool above_prune(std::span<const Amplitude> row) {
  for (const auto& v : row) {
    if (std::norm(v) >= kPrune2) return true;
  }
  return false;
}

void check_coin(const WalkState& state, const CoinMatrix& coin) {
  if (coin.size() != state.coin_size()) {
    throw std::invalid_argument("coin of size " + std::to_string(coin.size()) +
                                " cannot act on a " + std::to_string(state.coin_size()) +
                                "-direction register");
  }
}

// out_i = diag(phase) * C * in_i for every stored row, written with explicit
// real arithmetic (std::complex multiplication carries NaN recovery branches).
void mix_rows(const CoinMatrix& coin, const PhaseVector* theta,
              std::span<const Amplitude> in, std::span<Amplitude> out) {
  const std::size_t d = coin.size();
  std::vector<double> cr(d * d), ci(d * d);
  for (std::size_t k = 0; k < d * d; ++k) {
    cr[k] = coin.entries()[k].real();
    ci[k] = coin.entries()[k].imag();
  }
  std::vector<double> pr(d, 1.0), pi(d, 0.0);
  if (theta) {
    for (std::size_t a = 0; a < d; ++a) {
      pr[a] = std::cos((*theta)[a]);
      pi[a] = std::sin((*theta)[a]);
    }
  }
  const std::size_t rows = in.size() / d;
  for (std::size_t i = 0; i < rows; ++i) {
    const Amplitude* v = in.data() + i * d;
    Amplitude* w = out.data() + i * d;
    for (std::size_t a = 0; a < d; ++a) {
      double re = 0.0;
      double im = 0.0;
      const double* rr = cr.data() + a * d;
      const double* ri = ci.data() + a * d;
      for (std::size_t b = 0; b < d; ++b) {
        const double vr = v[b].real();
        const double vi = v[b].imag();
        re += rr[b] * vr - ri[b] * vi;
        im += rr[b] * vi + ri[b] * vr;
      }
      if (theta) {
        const double r2 = re * pr[a] - im * pi[a];
        im = re * pi[a] + im * pr[a];
        re = r2;
      }
      w[a] = Amplitude(re, im);
    }
  }
}

WalkState shift_rows(const WalkState& state, std::span<const Amplitude> rows) {
  if (state.reach() + 1 > state.codec().max_radius()) {
    throw ResourceLimitError("walk would leave the representable lattice (radius " +
                             std::to_string(state.codec().max_radius()) + ")");
  }
  std::vector<std::uint64_t> keys;
  std::vector<Amplitude> amps;
  detail::shift_merge<Amplitude>(state.codec(), state.keys(), rows, keys, amps, above_prune);
  return WalkState(state.dim(), std::move(keys), std::move(amps), state.reach() + 1);
}

}  // namespace

PhaseVector::PhaseVector(std::vector<double> angles) : angles_(std::move(angles)) {
  for (auto& a : angles_) {
    if (!std::isfinite(a)) throw std::invalid_argument("phase angles must be finite");
    a = std::remainder(a, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi) a = std::numbers::pi;
  }
}

PhaseVector PhaseVector::zeros(std::size_t coin_size) {
  return PhaseVector(std::vector<double>(coin_size, 0.0));
}

PhaseDistribution PhaseDistribution::gaussian(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian phase sigma must be finite and >= 0");
  }
  return {Kind::kGaussian, sigma};
}

std::string PhaseDistribution::to_string() const {
  switch (kind) {
    case Kind::kNone:
      return "none";
    case Kind::kUniform:
      return "uniform";
    case Kind::kGaussian: {
      std::ostringstream os;
      os.precision(17);
      os << "gaussian:" << sigma;
      return os.str();
    }
  }
  return "unknown";
}

StepConfig::StepConfig(std::size_t dim_, CoinMatrix coin_, PhaseDistribution phases_,
                       std::vector<Amplitude> initial_coin_)
    : dim(dim_), coin(std::move(coin_)), phases(phases_),
      initial_coin(std::move(initial_coin_)) {
  if (dim == 0) throw std::invalid_argument("walk dimension must be at least 1");
  if (coin.size() != 2 * dim) {
    throw std::invalid_argument("coin size " + std::to_string(coin.size()) +
                                " does not match 2 * dim = " + std::to_string(2 * dim));
  }
  if (!initial_coin.empty() && initial_coin.size() != 2 * dim) {
    throw std::invalid_argument("initial coin state has the wrong length");
  }
}

WalkState StepConfig::initial_state() const {
  return initial_coin.empty() ? new_initial_state(dim)
                              : new_initial_state_with_coin_state(dim, initial_coin);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

WalkState shift(const WalkState& state) {
  return shift_rows(state, state.amplitudes());
}

WalkState apply_coin(WalkState state, const CoinMatrix& coin) {
  check_coin(state, coin);
  std::vector<Amplitude> in(state.amplitudes().begin(), state.amplitudes().end());
  mix_rows(coin, nullptr, in, state.amplitudes());
  return state;
}

WalkState apply_phases(WalkState state, const PhaseVector& theta) {
  const std::size_t d = state.coin_size();
  if (theta.size() != d) throw std::invalid_argument("phase vector has the wrong length");
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] *= std::polar(1.0, theta[i % d]);
  }
  return state;
}

WalkState step(const WalkState& state, const StepConfig& config, const PhaseVector* theta) {
  check_coin(state, config.coin);
  const bool noisy = config.phases.kind != PhaseDistribution::Kind::kNone;
  if (noisy && theta == nullptr) {
    throw std::invalid_argument("phase noise is configured but no phases were supplied");
  }
  if (!noisy && theta != nullptr) {
    throw std::invalid_argument("phases supplied to a phase-free walk");
  }
  if (theta && theta->size() != state.coin_size()) {
    throw std::invalid_argument("phase vector has the wrong length");
  }
  std::vector<Amplitude> mixed(state.amplitudes().size());
  mix_rows(config.coin, theta, state.amplitudes(), mixed);
  return shift_rows(state, mixed);
}

PhaseVector sample_phases(const PhaseDistribution& dist, std::size_t coin_size, Rng& rng) {
  std::vector<double> angles(coin_size);
  switch (dist.kind) {
    case PhaseDistribution::Kind::kNone:
      throw std::invalid_argument("cannot sample phases from the 'none' distribution");
    case PhaseDistribution::Kind::kUniform:
      for (auto& a : angles) a = std::numbers::pi - 2.0 * std::numbers::pi * uniform01(rng);
      break;
    case PhaseDistribution::Kind::kGaussian:
      for (auto& a : angles) {
        const double u1 = 1.0 - uniform01(rng);  // (0, 1]
        const double u2 = uniform01(rng);
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        a = dist.sigma * z;
      }
      break;
  }
  return PhaseVector(std::move(angles));
}

std::vector<std::size_t> recorded_steps(std::size_t n, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("record stride must be positive");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= n; k += stride) out.push_back(k);
  if (out.back() != n) out.push_back(n);
  return out;
}

std::vector<TrajectoryPoint> run_trajectory(const StepConfig& config, std::size_t n,
                                            std::uint64_t seed, const RecordOptions& record) {
  WalkState state = config.initial_state();
  if (n > static_cast<std::size_t>(state.codec().max_radius())) {
    throw ResourceLimitError(std::to_string(n) + " steps exceed the lattice radius supported in " +
                             std::to_string(config.dim) + " dimensions");
  }
  const auto steps = recorded_steps(n, record.stride);
  Rng rng(seed);
  const bool noisy = config.phases.kind != PhaseDistribution::Kind::kNone;

  std::vector<TrajectoryPoint> out;
  out.reserve(steps.size());
  auto next = steps.begin();
  for (std::size_t k = 0;; ++k) {
    if (next != steps.end() && *next == k) {
      TrajectoryPoint p;
      p.step = k;
      if (record.keep_distributions) {
        p.distribution = position_distribution(state);
        p.dispersion = second_moment(*p.distribution);
      } else {
        p.dispersion = second_moment(state);
      }
      out.push_back(std::move(p));
      ++next;
    }
    if (k == n) break;
    if (noisy) {
      const auto theta = sample_phases(config.phases, config.coin.size(), rng);
      state = step(state, config, &theta);
    } else {
      state = step(state, config);
    }
  }
  return out;
}

EnsembleResult run_ensemble(const StepConfig& config, std::size_t n, std::size_t trajectories,
                            std::uint64_t master_seed, const EnsembleOptions& options) {
  if (trajectories == 0) throw std::invalid_argument("ensemble needs at least one trajectory");
  std::size_t threads = options.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, trajectories);

  EnsembleResult result;
  result.n = n;
  result.trajectories = trajectories;
  result.master_seed = master_seed;
  result.rng_name = std::string(kRngName);
  result.coin_label = config.coin.label();
  result.phases = config.phases.to_string();
  result.dim = config.dim;
  result.steps = recorded_steps(n, options.record.stride);
  const std::size_t k_steps = result.steps.size();
  result.trajectory_dispersion.reserve(trajectories);
  if (options.record.keep_distributions) {
    result.mean_distribution.assign(k_steps, Distribution(config.dim));
  }
  const double weight = 1.0 / static_cast<double>(trajectories);

  // Trajectories run in batches of `threads`; each batch is folded into the
  // accumulators in ascending index before the next one starts.
  std::vector<std::vector<TrajectoryPoint>> batch(threads);
  for (std::size_t begin = 0; begin < trajectories; begin += threads) {
    const std::size_t count = std::min(threads, trajectories - begin);
    auto work = [&](std::size_t slot) {
      batch[slot] = run_trajectory(config, n, derive_seed(master_seed, begin + slot),
                                   options.record);
    };
    if (count == 1) {
      work(0);
    } else {
      std::atomic<std::size_t> cursor{0};
      std::vector<std::jthread> pool;
      std::exception_ptr failure;
      std::mutex failure_mutex;
      for (std::size_t w = 0; w < count; ++w) {
        pool.emplace_back([&] {
          for (std::size_t slot; (slot = cursor.fetch_add(1)) < count;) {
            try {
              work(slot);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
      pool.clear();
      if (failure) std::rethrow_exception(failure);
    }
    for (std::size_t slot = 0; slot < count; ++slot) {
      std::vector<double> disp(k_steps);
      for (std::size_t k = 0; k < k_steps; ++k) {
        disp[k] = batch[slot][k].dispersion;
        if (options.record.keep_distributions) {
          result.mean_distribution[k].accumulate(*batch[slot][k].distribution, weight);
        }
      }
      result.trajectory_dispersion.push_back(std::move(disp));
      batch[slot].clear();
    }
  }

  result.mean_dispersion.assign(k_steps, 0.0);
  result.dispersion_stderr.assign(k_steps, 0.0);
  for (std::size_t k = 0; k < k_steps; ++k) {
    // Shifted by the first trajectory, so identical trajectories reproduce
    // their common value exactly.
    const double pivot = result.trajectory_dispersion.front()[k];
    double shifted = 0.0;
    for (const auto& d : result.trajectory_dispersion) shifted += d[k] - pivot;
    const double mean = pivot + shifted / static_cast<double>(trajectories);
    double ss = 0.0;
    for (const auto& d : result.trajectory_dispersion) ss += (d[k] - mean) * (d[k] - mean);
    result.mean_dispersion[k] = mean;
    if (trajectories > 1) {
      const double m = static_cast<double>(trajectories);
      result.dispersion_stderr[k] = std::sqrt(ss / (m - 1.0) / m);
    }
  }
  return result;
}

}  // namespace qwalk
