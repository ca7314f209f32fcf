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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coins.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Entries whose every coin component has |amplitude| below this are dropped
/// after a shift.
inline constexpr double kPruneAmplitude = 1e-15;

/// One random phase per direction, applied as R(theta) = sum_a e^{i theta_a} P_a.
/// Angles are stored reduced to (-pi, pi].
class PhaseVector {
 public:
  explicit PhaseVector(std::vector<double> angles);
  static PhaseVector zeros(std::size_t coin_size);

  std::size_t size() const noexcept { return angles_.size(); }
  double operator[](std::size_t a) const { return angles_[a]; }
  std::span<const double> angles() const noexcept { return angles_; }

 private:
  std::vector<double> angles_;
};

struct PhaseDistribution {
  enum class Kind { kNone, kUniform, kGaussian };

  Kind kind = Kind::kNone;
  double sigma = 0.0;

  static PhaseDistribution none() { return {}; }
  static PhaseDistribution uniform() { return {Kind::kUniform, 0.0}; }
  static PhaseDistribution gaussian(double sigma);

  /// "none", "uniform" or "gaussian:<sigma>".
  std::string to_string() const;
};

/// Everything needed to advance a walk: lattice, coin, phase noise and the
/// initial coin state (empty means |s>).
struct StepConfig {
  std::size_t dim = 2;
  CoinMatrix coin = CoinMatrix::identity(4);
  PhaseDistribution phases;
  std::vector<Amplitude> initial_coin;

  StepConfig(std::size_t dim, CoinMatrix coin, PhaseDistribution phases = {},
             std::vector<Amplitude> initial_coin = {});

  WalkState initial_state() const;
};

/// Per-trajectory generator. The name is echoed into run metadata.
using Rng = std::mt19937_64;
inline constexpr std::string_view kRngName = "mt19937_64";

/// splitmix64 finalizer applied to master + (index + 1) * 0x9E3779B97F4A7C15.
/// Part of the output contract: ensembles replay bit-for-bit from it.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// 53-bit uniform in [0, 1).
double uniform01(Rng& rng);

WalkState shift(const WalkState& state);
WalkState apply_coin(WalkState state, const CoinMatrix& coin);
WalkState apply_phases(WalkState state, const PhaseVector& theta);

/// S (1 (x) R(theta) C): coin, then phases (when given), then shift.
WalkState step(const WalkState& state, const StepConfig& config,
               const PhaseVector* theta = nullptr);

/// Uniform angles are pi - 2 pi u, u in [0, 1); Gaussian angles come from
/// Box-Muller on two uniforms (cosine branch only).
PhaseVector sample_phases(const PhaseDistribution& dist, std::size_t coin_size, Rng& rng);

struct RecordOptions {
  std::size_t stride = 1;
  bool keep_distributions = true;
};

/// Steps 0, stride, 2*stride, ... plus n itself.
std::vector<std::size_t> recorded_steps(std::size_t n, std::size_t stride);

struct TrajectoryPoint {
  std::size_t step = 0;
  std::optional<Distribution> distribution;
  double dispersion = 0.0;
};

std::vector<TrajectoryPoint> run_trajectory(const StepConfig& config, std::size_t n,
                                            std::uint64_t seed,
                                            const RecordOptions& record = {});

struct EnsembleOptions {
  RecordOptions record;
  /// 0 means std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

struct EnsembleResult {
  std::size_t n = 0;
  std::size_t trajectories = 0;
  std::uint64_t master_seed = 0;
  std::string rng_name;
  std::string coin_label;
  std::string phases;
  std::size_t dim = 0;

  std::vector<std::size_t> steps;
  std::vector<double> mean_dispersion;
  std::vector<double> dispersion_stderr;
  /// trajectory_dispersion[m][k]: trajectory m at steps[k].
  std::vector<std::vector<double>> trajectory_dispersion;
  /// Empty unless distributions were recorded.
  std::vector<Distribution> mean_distribution;
};

/// M independent trajectories with seeds derive_seed(master_seed, m), reduced
/// in ascending m. The result does not depend on the thread count.
EnsembleResult run_ensemble(const StepConfig& config, std::size_t n, std::size_t trajectories,
                            std::uint64_t master_seed, const EnsembleOptions& options = {});

}  // namespace qwalk
