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
#include <string>
#include <vector>

#include "qwalk/coins.hpp"
#include "qwalk/evolution.hpp"

namespace qwalk {

/// Second moment of the position distribution as a function of the step count.
struct DispersionSeries {
  enum class Provenance { kEmpiricalEnsemble, kDpExact, kRecursion, kClosedForm };

  std::vector<std::size_t> steps;
  std::vector<double> values;
  Provenance provenance = Provenance::kEmpiricalEnsemble;
  std::string config;

  /// Throws unless steps are strictly increasing and values are >= 0.
  void validate() const;
};

const char* to_string(DispersionSeries::Provenance p);

/// Starting values of the dispersion recursion at n = 2.
///   r2: sum_{a1,a2} |Xi(a1,a2)|^2 (e_a1 + e_a2) . e_a2
///   d2: K sum_{a1,a2} |Xi(a1,a2)|^2 |e_a1 + e_a2|^2
struct BaseConstants {
  double r2 = 0.0;
  double d2 = 0.0;
};

/// Evaluates both defining sums over all direction pairs.
BaseConstants base_constants_direct(const GroverParams& params);

/// Collapsed closed forms carrying a (|D|^2 - |D| - 1) factor:
///   r2 = 2|D||r|^2 + (|D|^2 - |D| - 1)|t|^2
///   d2 = K (4|D||r|^2 + 2(|D|^2 - |D| - 1)|t|^2)
/// Reported next to the direct values; not used for computation.
BaseConstants base_constants_printed(const GroverParams& params);

struct ClosedFormParams {
  Amplitude r;
  Amplitude t;
  std::size_t coin_size = 0;
  double k = 0.0;
  double delta = 0.0;
  /// |r|^2 - |r|^6 - |t|^2 + 3|r|^4|t|^2 - 3|r|^2|t|^4 + |t|^6 = delta (1 - delta^2).
  double xi = 0.0;
  /// 2 K (delta - 1) r2, with r2 from base_constants_direct.
  double eta = 0.0;
};

ClosedFormParams closed_form_params(const GroverParams& params);

/// D(n+1) = D(n) + 1 + 2 K delta R_n,  R_{n+1} = delta R_n + 1/K, started
/// from the direct base constants at n = 2.
double dispersion_recursion(const GroverParams& params, std::size_t n);

/// Closed-form solution of the recursion:
///   D(n) = [(n-2) xi - 2(|r|^4 + |t|^4) + 4|r|^2|t|^2 + (2 + eta) delta^n
///           + eta (|t|^2 - |r|^2)] / (delta (1 - delta)^2)
/// Singular at delta = 0; such inputs are rejected in favour of the recursion.
double dispersion_closed_form(const GroverParams& params, std::size_t n);

/// (1 + delta) / (1 - delta).
double asymptotic_slope(const GroverParams& params);
double asymptotic_slope(double delta);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of value against step over steps in [n_min, n_max].
LinearFit fit_slope(const DispersionSeries& series, std::size_t n_min, std::size_t n_max);

/// Least-squares slope of log(value) against log(step) over [n_min, n_max].
double fit_growth_exponent(const DispersionSeries& series, std::size_t n_min, std::size_t n_max);

/// Mean-dispersion series of an ensemble, tagged as empirical.
DispersionSeries to_series(const EnsembleResult& result);

struct TransitionPoint {
  double sigma = 0.0;
  DispersionSeries series;
  double growth_exponent = 0.0;
};

/// Ensembles with Gaussian phases at each sigma (Grover coin on Z^d). Sigma
/// number i uses master seed derive_seed(master_seed, i). Exponents are fitted
/// over [n_min, n]; n_min = 0 means n / 4.
std::vector<TransitionPoint> transition_study(std::size_t dim, const std::vector<double>& sigmas,
                                              std::size_t n, std::size_t trajectories,
                                              std::uint64_t master_seed, std::size_t n_min = 0,
                                              std::size_t threads = 0);

}  // namespace qwalk
