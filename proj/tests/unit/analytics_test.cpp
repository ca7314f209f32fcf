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

#include "qwalk/analytics.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "qwalk/classical.hpp"
#include "qwalk/pathsum.hpp"

using namespace qwalk;

TEST(base_constants, direct_sums_at_grover_points) {
  const auto d4 = base_constants_direct(grover_params(4));
  EXPECT_NEAR(d4.r2, 4.0, 1e-14);
  EXPECT_NEAR(d4.d2, 2.0, 1e-14);
  const auto d6 = base_constants_direct(grover_params(6));
  EXPECT_NEAR(d6.r2, 8.0, 1e-13);
  EXPECT_NEAR(d6.d2, 8.0 / 3.0, 1e-13);
}

TEST(base_constants, printed_forms_differ_from_the_sums) {
  const auto printed = base_constants_printed(grover_params(4));
  EXPECT_NEAR(printed.r2, 4.75, 1e-14);
  EXPECT_NEAR(printed.d2, 2.375, 1e-14);
}

TEST(base_constants, d2_is_the_two_step_dispersion) {
  for (std::size_t size : {4U, 6U, 8U}) {
    const auto p = grover_params(size);
    EXPECT_NEAR(base_constants_direct(p).d2, second_moment(mean_dist_grover(p, 2)), 1e-13);
  }
}

TEST(recursion, small_cases) {
  EXPECT_NEAR(dispersion_recursion(grover_params(6), 3), 41.0 / 9.0, 1e-13);
  EXPECT_NEAR(dispersion_recursion(grover_params(4), 2), 2.0, 1e-14);
  EXPECT_THROW(dispersion_recursion(grover_params(4), 1), std::invalid_argument);
}

TEST(recursion, equals_classical_memory_walk) {
  for (std::size_t size : {4U, 6U, 8U}) {
    const auto p = grover_params(size);
    const CRWMParams c(size / 2, std::norm(p.r));
    for (std::size_t n = 2; n <= 12; ++n) {
      const double dp = second_moment(crwm_distribution(c, n));
      EXPECT_NEAR(dispersion_recursion(p, n), dp, 1e-9 * dp);
    }
  }
}

TEST(closed_form, matches_recursion) {
  for (const auto& p : {grover_params(6), grover_params(8), grover_from_r(0.85, 4)}) {
    for (std::size_t n = 3; n <= 40; ++n) {
      const double rec = dispersion_recursion(p, n);
      EXPECT_NEAR(dispersion_closed_form(p, n), rec, 1e-6 * rec) << "n=" << n;
    }
  }
  EXPECT_THROW(dispersion_closed_form(grover_params(4), 5), std::domain_error);
  EXPECT_THROW(dispersion_closed_form(grover_params(6), 2), std::invalid_argument);
}

TEST(closed_form, xi_identity) {
  const auto c = closed_form_params(grover_from_r(0.8, 6, -1));
  EXPECT_NEAR(c.xi, c.delta * (1 - c.delta * c.delta), 1e-14);
  EXPECT_NEAR(c.k, 1.0 / 6.0, 1e-14);
}

TEST(slope, asymptotic_values) {
  EXPECT_NEAR(asymptotic_slope(grover_params(4)), 1.0, 1e-14);
  EXPECT_NEAR(asymptotic_slope(grover_params(6)), 2.0, 1e-14);
  EXPECT_NEAR(asymptotic_slope(grover_params(8)), 3.0, 1e-14);
  EXPECT_THROW(asymptotic_slope(1.0), std::domain_error);
  for (std::size_t size : {4U, 6U, 8U}) {
    const auto p = grover_params(size);
    EXPECT_NEAR(dispersion_recursion(p, 61) - dispersion_recursion(p, 60), asymptotic_slope(p),
                1e-6);
  }
}

TEST(fits, exact_line_and_power_law) {
  DispersionSeries line;
  DispersionSeries square;
  for (std::size_t n = 1; n <= 30; ++n) {
    line.steps.push_back(n);
    line.values.push_back(2.5 * static_cast<double>(n) + 4.0);
    square.steps.push_back(n);
    square.values.push_back(0.7 * static_cast<double>(n * n));
  }
  const auto fit = fit_slope(line, 10, 30);
  EXPECT_NEAR(fit.slope, 2.5, 1e-12);
  EXPECT_NEAR(fit.intercept, 4.0, 1e-10);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(fit_growth_exponent(square, 5, 30), 2.0, 1e-12);
  EXPECT_THROW(fit_slope(line, 29, 30), std::invalid_argument);
}

TEST(fits, series_validation) {
  DispersionSeries bad;
  bad.steps = {0, 2, 1};
  bad.values = {0, 1, 2};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad.steps = {0, 1};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad.values = {0, -1};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  DispersionSeries zero;
  zero.steps = {1, 2, 3};
  zero.values = {0, 1, 2};
  EXPECT_THROW(fit_growth_exponent(zero, 1, 3), std::invalid_argument);
}

TEST(transition, zero_width_reproduces_pure_walk) {
  const auto points = transition_study(2, {0.0, 2.0}, 16, 3, 5, 4, 1);
  ASSERT_EQ(points.size(), 2U);
  StepConfig pure(2, grover_coin(4));
  const auto reference = run_ensemble(pure, 16, 1, 0, EnsembleOptions{RecordOptions{1, false}, 1});
  EXPECT_EQ(points[0].series.values, reference.mean_dispersion);
  EXPECT_EQ(points[0].series.steps.size(), 17U);
  EXPECT_GT(points[0].growth_exponent, points[1].growth_exponent);
}
