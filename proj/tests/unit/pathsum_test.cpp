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

#include <cmath>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace qwalk;

namespace {

WalkState evolve(const StepConfig& config, std::size_t n) {
  WalkState psi = config.initial_state();
  for (std::size_t k = 0; k < n; ++k) psi = step(psi, config);
  return psi;
}

CoinMatrix projector_times_grover(std::size_t a, std::size_t size) {
  const auto g = grover_coin(size);
  std::vector<Amplitude> m(size * size, 0.0);
  for (std::size_t j = 0; j < size; ++j) m[a * size + j] = g(a, j);
  return CoinMatrix(size, m);
}

}  // namespace

TEST(projector_power, coefficients) {
  EXPECT_DOUBLE_EQ(lemma1_coeffs(1, 4).p, 1.0);
  EXPECT_DOUBLE_EQ(lemma1_coeffs(1, 4).q, -1.0);
  EXPECT_DOUBLE_EQ(lemma1_coeffs(2, 4).p, -0.5);
  EXPECT_DOUBLE_EQ(lemma1_coeffs(2, 4).q, 0.5);
  EXPECT_THROW(lemma1_coeffs(0, 4), std::invalid_argument);
}

TEST(projector_power, matrix_power_identity) {
  for (std::size_t size : {4U, 6U}) {
    for (std::size_t a = 0; a < size; ++a) {
      const auto pc = projector_times_grover(a, size);
      CoinMatrix power = pc;
      for (std::size_t n = 1; n <= 6; ++n) {
        if (n > 1) power = power * pc;
        const auto c = lemma1_coeffs(n, size);
        const double s = 1.0 / std::sqrt(static_cast<double>(size));
        for (std::size_t i = 0; i < size; ++i) {
          for (std::size_t j = 0; j < size; ++j) {
            const double expected = (i == a ? c.p * s : 0.0) + (i == a && j == a ? c.q : 0.0);
            EXPECT_NEAR(std::abs(power(i, j) - expected), 0.0, 1e-12);
          }
        }
      }
    }
  }
}

TEST(pure_path_sum, equals_evolution) {
  for (std::size_t dim : {2U, 3U}) {
    const std::size_t n_max = dim == 2 ? 5 : 3;
    const StepConfig config(dim, grover_coin(2 * dim));
    for (std::size_t n = 1; n <= n_max; ++n) {
      EXPECT_LT(max_abs_difference(pure_qw_amplitudes(dim, n), evolve(config, n)), 1e-12)
          << "dim=" << dim << " n=" << n;
    }
  }
  EXPECT_THROW(pure_qw_amplitudes(1, 3), std::invalid_argument);
}

TEST(pure_path_sum, two_step_signs) {
  // One repeated direction versus a turn: -1/4 and +1/4 for |D| = 4.
  const auto psi = pure_qw_amplitudes(2, 2);
  EXPECT_NEAR(psi.amplitude(Position{2, 0}, Direction(0)).real(), -0.25, 1e-15);
  EXPECT_NEAR(std::abs(psi.amplitude(Position{1, 1}, Direction(0)) - 0.25), 0.0, 1e-15);
}

TEST(momentum, reproduces_evolution) {
  for (const auto& coin : {grover_coin(4), fourier_coin(4)}) {
    const StepConfig config(2, coin);
    for (std::size_t n = 1; n <= 4; ++n) {
      EXPECT_LT(max_abs_difference(momentum_space_state(2, n, coin, 2 * n + 2), evolve(config, n)),
                1e-12);
    }
  }
}

TEST(momentum, matrix_is_unitary) {
  const std::vector<double> k{0.3, -1.7};
  EXPECT_TRUE(is_unitary(momentum_matrix(k, grover_coin(4))));
}

TEST(direction_path, endpoint) {
  DirectionPath path{{Direction(0), Direction(0), Direction(3)}};
  EXPECT_EQ(path.endpoint(2), (Position{2, -1}));
  EXPECT_EQ(path.length(), 3U);
}

TEST(mean_grover, dp_equals_enumeration) {
  for (std::size_t dim : {2U, 3U}) {
    for (std::size_t n = 0; n <= 5; ++n) {
      const auto p = grover_params(2 * dim);
      EXPECT_LT(max_abs_difference(mean_dist_grover(p, n), mean_dist_grover_bruteforce(p, n)),
                1e-14);
    }
  }
  const auto p = grover_from_r(0.9, 6, 1);
  EXPECT_LT(max_abs_difference(mean_dist_grover(p, 5), mean_dist_grover_bruteforce(p, 5)), 1e-14);
}

TEST(mean_grover, equals_exact_phase_average) {
  const auto p = grover_from_r(0.75, 4, -1);
  for (const auto& params : {grover_params(4), p}) {
    const auto ref = qwalk_test::sign_averaged_mean(
        2, 3, qwalk_test::reference_generalized(params.r, params.t, 4),
        qwalk_test::uniform_state(4));
    EXPECT_LT(qwalk_test::max_difference(qwalk_test::to_map(mean_dist_grover(params, 3)), ref),
              1e-13);
  }
}

TEST(mean_grover, normalized) {
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_NEAR(mean_dist_grover(grover_params(6), n).total(), 1.0, 1e-12);
}

TEST(mean_grover, enumeration_guard) {
  EXPECT_THROW(mean_dist_grover_bruteforce(grover_params(4), 20), ResourceLimitError);
}

TEST(per_realization, matches_dense_walk) {
  const auto coin = grover_from_r(0.7, 4, 1);
  const auto matrix = generalized_grover(coin);
  Rng rng(3);
  std::vector<PhaseVector> phases;
  qwalk_test::DenseWalk ref(2, 5, qwalk_test::uniform_state(4));
  for (int k = 0; k < 5; ++k) {
    phases.push_back(sample_phases(PhaseDistribution::uniform(), 4, rng));
    const std::vector<double> angles(phases.back().angles().begin(), phases.back().angles().end());
    ref.step(qwalk_test::reference_generalized(coin.r, coin.t, 4), &angles);
  }
  for (const auto& [x, prob] : ref.distribution()) {
    const Position pos{x[0], x[1]};
    EXPECT_NEAR(per_realization_prob(matrix, phases, pos), prob, 1e-13);
    EXPECT_NEAR(per_realization_prob(coin, phases, pos), prob, 1e-13);
  }
  EXPECT_EQ(per_realization_prob(matrix, phases, Position{4, 2}), 0.0);
}

TEST(fourier, symmetrized_start_is_first_basis_state) {
  for (std::size_t size : {2U, 4U, 6U, 8U}) {
    const auto chi = symmetrized_fourier_coin_state(size);
    for (std::size_t a = 0; a < size; ++a) {
      EXPECT_NEAR(std::abs(chi[a] - (a == 0 ? 1.0 : 0.0)), 0.0, 1e-14);
    }
  }
}

TEST(fourier, mean_equals_exact_phase_average) {
  const auto f = qwalk_test::reference_fourier(4);
  std::vector<qwalk_test::cd> e0(4, 0.0);
  e0[0] = 1.0;
  const auto plain = qwalk_test::sign_averaged_mean(2, 3, f, qwalk_test::uniform_state(4));
  const auto sym = qwalk_test::sign_averaged_mean(2, 3, f, e0);
  EXPECT_LT(qwalk_test::max_difference(qwalk_test::to_map(mean_dist_fourier(2, 3, false)), plain),
            1e-13);
  EXPECT_LT(qwalk_test::max_difference(qwalk_test::to_map(mean_dist_fourier(2, 3, true)), sym),
            1e-13);
}

TEST(fourier, dp_equals_enumeration) {
  for (bool sym : {false, true}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      EXPECT_LT(max_abs_difference(mean_dist_fourier(2, n, sym),
                                   mean_dist_fourier_bruteforce(2, n, sym)),
                1e-14);
    }
  }
}

TEST(fourier, plain_path_weights_need_first_direction_zero) {
  const DirectionPath bad{{Direction(0), Direction(1)}};
  EXPECT_EQ(xi_fourier(bad, 4, false), Amplitude(0.0));
  EXPECT_NE(xi_fourier(bad, 4, true), Amplitude(0.0));
}
