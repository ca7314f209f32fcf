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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace qwalk;
using qwalk_test::DenseCoin;
using qwalk_test::DenseWalk;

namespace {

struct CoinCase {
  CoinMatrix coin;
  DenseCoin reference;
};

std::vector<CoinCase> coin_cases(std::size_t dim) {
  const std::size_t size = 2 * dim;
  std::vector<CoinCase> cases{{grover_coin(size), qwalk_test::reference_grover(size)},
                              {fourier_coin(size), qwalk_test::reference_fourier(size)}};
  if (size >= 4) {
    const auto p = grover_from_r(0.8, size, -1);
    cases.push_back({generalized_grover(p), qwalk_test::reference_generalized(p.r, p.t, size)});
  }
  return cases;
}

double max_state_difference(const WalkState& psi, const DenseWalk& ref, int radius) {
  double worst = 0.0;
  const std::size_t dim = psi.dim();
  std::size_t cells = 1;
  for (std::size_t j = 0; j < dim; ++j) cells *= static_cast<std::size_t>(2 * radius + 1);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    Position x(dim);
    qwalk_test::Point pt(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      pt[j] = x[j] = static_cast<int>(rest % (2 * radius + 1)) - radius;
      rest /= 2 * radius + 1;
    }
    for (std::size_t a = 0; a < 2 * dim; ++a) {
      worst = std::max(worst, std::abs(psi.amplitude(x, Direction(a)) - ref.amplitude(pt, a)));
    }
  }
  return worst;
}

}  // namespace

TEST(evolution, matches_dense_box_under_random_phases) {
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    const std::size_t n = dim == 3 ? 4 : 7;
    for (const auto& c : coin_cases(dim)) {
      StepConfig config(dim, c.coin, PhaseDistribution::uniform());
      WalkState psi = config.initial_state();
      DenseWalk ref(dim, static_cast<int>(n), qwalk_test::uniform_state(2 * dim));
      Rng rng(derive_seed(99, dim));
      for (std::size_t k = 0; k < n; ++k) {
        const PhaseVector theta = sample_phases(config.phases, 2 * dim, rng);
        psi = step(psi, config, &theta);
        const std::vector<double> angles(theta.angles().begin(), theta.angles().end());
        ref.step(c.reference, &angles);
      }
      EXPECT_LT(max_state_difference(psi, ref, static_cast<int>(n)), 1e-13)
          << "dim=" << dim << " coin=" << c.coin.label();
    }
  }
}

TEST(evolution, two_grover_steps_in_the_plane) {
  StepConfig config(2, grover_coin(4));
  WalkState psi = config.initial_state();
  psi = step(step(psi, config), config);
  const Distribution p = position_distribution(psi);
  EXPECT_NEAR(p.mass(Position{0, 0}), 0.25, 1e-15);
  for (const Position x : {Position{2, 0}, Position{-2, 0}, Position{0, 2}, Position{0, -2}}) {
    EXPECT_NEAR(p.mass(x), 1.0 / 16.0, 1e-15);
  }
  for (const Position x : {Position{1, 1}, Position{1, -1}, Position{-1, 1}, Position{-1, -1}}) {
    EXPECT_NEAR(p.mass(x), 1.0 / 8.0, 1e-15);
  }
  EXPECT_NEAR(second_moment(p), 2.0, 1e-14);
}

TEST(evolution, norm_is_conserved) {
  for (std::size_t dim = 1; dim <= 2; ++dim) {
    for (const auto& c : coin_cases(dim)) {
      for (const auto& phases : {PhaseDistribution::none(), PhaseDistribution::uniform(),
                                 PhaseDistribution::gaussian(0.7)}) {
        const auto points = run_trajectory(StepConfig(dim, c.coin, phases), 60, 3,
                                           RecordOptions{60, true});
        EXPECT_NEAR(points.back().distribution->total(), 1.0, 1e-10);
      }
    }
  }
}

TEST(evolution, phases_apply_before_shift) {
  StepConfig config(1, CoinMatrix::identity(2), PhaseDistribution::uniform());
  const PhaseVector theta({0.3, -1.1});
  const WalkState psi = step(config.initial_state(), config, &theta);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(psi.amplitude(Position{1}, Direction(0)) - std::polar(s, 0.3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi.amplitude(Position{-1}, Direction(1)) - std::polar(s, -1.1)), 0.0,
              1e-15);
}

TEST(evolution, step_checks_phase_presence) {
  StepConfig noisy(2, grover_coin(4), PhaseDistribution::uniform());
  StepConfig clean(2, grover_coin(4));
  const PhaseVector theta = PhaseVector::zeros(4);
  EXPECT_THROW(step(noisy.initial_state(), noisy), std::invalid_argument);
  EXPECT_THROW(step(clean.initial_state(), clean, &theta), std::invalid_argument);
  EXPECT_THROW(StepConfig(3, grover_coin(4)), std::invalid_argument);
}

TEST(rng, seeds_and_uniforms) {
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  EXPECT_NE(derive_seed(7, 3), derive_seed(7, 4));
  EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(phases, sampling) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto theta = sample_phases(PhaseDistribution::uniform(), 6, rng);
    ASSERT_EQ(theta.size(), 6U);
    for (double a : theta.angles()) {
      EXPECT_GT(a, -std::numbers::pi);
      EXPECT_LE(a, std::numbers::pi);
    }
  }
  const auto zero_width = sample_phases(PhaseDistribution::gaussian(0.0), 4, rng);
  for (double a : zero_width.angles()) EXPECT_EQ(a, 0.0);
  EXPECT_THROW(sample_phases(PhaseDistribution::none(), 4, rng), std::invalid_argument);
  EXPECT_THROW(PhaseDistribution::gaussian(-1.0), std::invalid_argument);
  EXPECT_EQ(PhaseDistribution::gaussian(0.5).to_string(), "gaussian:0.5");
  EXPECT_NEAR(PhaseVector({3 * std::numbers::pi}).angles()[0], std::numbers::pi, 1e-12);
}

TEST(phases, gaussian_moments) {
  Rng rng(8);
  double sum = 0.0, sq = 0.0;
  const int m = 20000;
  for (int i = 0; i < m; ++i) {
    const double a = sample_phases(PhaseDistribution::gaussian(0.5), 2, rng)[0];
    sum += a;
    sq += a * a;
  }
  EXPECT_NEAR(sum / m, 0.0, 0.02);
  EXPECT_NEAR(sq / m, 0.25, 0.02);
}

TEST(trajectory, recorded_steps) {
  EXPECT_EQ(recorded_steps(10, 3), (std::vector<std::size_t>{0, 3, 6, 9, 10}));
  EXPECT_EQ(recorded_steps(4, 1), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(recorded_steps(0, 5), (std::vector<std::size_t>{0}));
}

TEST(trajectory, seed_reproducibility) {
  StepConfig config(2, grover_coin(4), PhaseDistribution::uniform());
  const auto a = run_trajectory(config, 15, 42);
  const auto b = run_trajectory(config, 15, 42);
  const auto c = run_trajectory(config, 15, 43);
  ASSERT_EQ(a.size(), 16U);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].dispersion, b[k].dispersion);
  EXPECT_NE(a.back().dispersion, c.back().dispersion);
}

TEST(trajectory, resource_guard) {
  StepConfig config(8, grover_coin(16));
  EXPECT_THROW(run_trajectory(config, 200, 1, RecordOptions{200, false}), ResourceLimitError);
}

TEST(ensemble, independent_of_thread_count) {
  StepConfig config(2, grover_coin(4), PhaseDistribution::uniform());
  EnsembleOptions one{RecordOptions{2, true}, 1};
  EnsembleOptions three{RecordOptions{2, true}, 3};
  const auto a = run_ensemble(config, 12, 7, 2024, one);
  const auto b = run_ensemble(config, 12, 7, 2024, three);
  EXPECT_EQ(a.mean_dispersion, b.mean_dispersion);
  EXPECT_EQ(a.dispersion_stderr, b.dispersion_stderr);
  EXPECT_EQ(a.trajectory_dispersion, b.trajectory_dispersion);
  ASSERT_EQ(a.mean_distribution.size(), b.mean_distribution.size());
  for (std::size_t k = 0; k < a.mean_distribution.size(); ++k) {
    EXPECT_EQ(max_abs_difference(a.mean_distribution[k], b.mean_distribution[k]), 0.0);
    EXPECT_NEAR(a.mean_distribution[k].total(), 1.0, 1e-12);
  }
  EXPECT_EQ(a.steps, (std::vector<std::size_t>{0, 2, 4, 6, 8, 10, 12}));
  EXPECT_EQ(a.rng_name, "mt19937_64");
  EXPECT_EQ(a.phases, "uniform");
}

TEST(ensemble, trajectory_m_uses_derived_seed) {
  StepConfig config(2, grover_coin(4), PhaseDistribution::uniform());
  const auto e = run_ensemble(config, 9, 3, 77, EnsembleOptions{RecordOptions{1, false}, 2});
  for (std::size_t m = 0; m < 3; ++m) {
    const auto t = run_trajectory(config, 9, derive_seed(77, m), RecordOptions{1, false});
    for (std::size_t k = 0; k < t.size(); ++k) {
      EXPECT_EQ(e.trajectory_dispersion[m][k], t[k].dispersion);
    }
  }
}

TEST(ensemble, noiseless_runs_have_no_spread) {
  StepConfig config(2, grover_coin(4));
  const auto many = run_ensemble(config, 10, 5, 1, EnsembleOptions{RecordOptions{1, false}, 1});
  const auto one = run_ensemble(config, 10, 1, 9, EnsembleOptions{RecordOptions{1, false}, 1});
  EXPECT_EQ(many.mean_dispersion, one.mean_dispersion);
  for (double s : many.dispersion_stderr) EXPECT_EQ(s, 0.0);
  for (double s : one.dispersion_stderr) EXPECT_EQ(s, 0.0);
  EXPECT_THROW(run_ensemble(config, 10, 0, 1), std::invalid_argument);
}

TEST(ensemble, mean_of_dispersions_equals_dispersion_of_mean) {
  // The two estimators agree realization by realization, not only on average.
  StepConfig config(3, grover_coin(6), PhaseDistribution::gaussian(1.3));
  const auto e = run_ensemble(config, 8, 6, 31, EnsembleOptions{RecordOptions{1, true}, 1});
  for (std::size_t k = 0; k < e.steps.size(); ++k) {
    EXPECT_NEAR(second_moment(e.mean_distribution[k]), e.mean_dispersion[k],
                1e-12 * std::max(1.0, e.mean_dispersion[k]));
  }
}
