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
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

// |Xi(a1, a2)|^2 for a single pair.
double pair_weight(const GroverParams& p, std::size_t a1, std::size_t a2) {
  return a1 == a2 ? std::norm(p.r) : std::norm(p.t);
}

double dot(const Position& x, const Position& y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.dim(); ++j) s += static_cast<double>(x[j]) * y[j];
  return s;
}

struct Window {
  std::vector<double> x;
  std::vector<double> y;
};

Window select(const DispersionSeries& series, std::size_t n_min, std::size_t n_max) {
  series.validate();
  Window w;
  for (std::size_t i = 0; i < series.steps.size(); ++i) {
    const auto n = series.steps[i];
    if (n < n_min || n > n_max) continue;
    w.x.push_back(static_cast<double>(n));
    w.y.push_back(series.values[i]);
  }
  if (w.x.size() < 3) {
    throw std::invalid_argument("fit needs at least 3 points in [" + std::to_string(n_min) +
                                ", " + std::to_string(n_max) + "], found " +
                                std::to_string(w.x.size()));
  }
  return w;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit abscissae are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += e * e;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : std::max(0.0, 1.0 - sse / syy);
  return fit;
}

}  // namespace

void DispersionSeries::validate() const {
  if (steps.size() != values.size()) {
    throw std::invalid_argument("dispersion series has mismatched steps/values");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0 && steps[i] <= steps[i - 1]) {
      throw std::invalid_argument("dispersion series steps must be strictly increasing");
    }
    if (!(values[i] >= 0.0)) {
      throw std::invalid_argument("dispersion values must be non-negative");
    }
  }
}

const char* to_string(DispersionSeries::Provenance p) {
  switch (p) {
    case DispersionSeries::Provenance::kEmpiricalEnsemble:
      return "empirical-ensemble";
    case DispersionSeries::Provenance::kDpExact:
      return "dp-exact";
    case DispersionSeries::Provenance::kRecursion:
      return "recursion";
    case DispersionSeries::Provenance::kClosedForm:
      return "closed-form";
  }
  return "unknown";
}

BaseConstants base_constants_direct(const GroverParams& params) {
  validate(params);
  const std::size_t coin = params.coin_size;
  if (coin % 2 != 0) throw std::invalid_argument("coin size must be even");
  const std::size_t dim = coin / 2;
  const double k = path_normalization(params);
  BaseConstants c;
  for (std::size_t a1 = 0; a1 < coin; ++a1) {
    for (std::size_t a2 = 0; a2 < coin; ++a2) {
      const Position e2 = unit_vector(dim, Direction(a2));
      const Position sum = unit_vector(dim, Direction(a1)) + Direction(a2);
      const double w = pair_weight(params, a1, a2);
      c.r2 += w * dot(sum, e2);
      c.d2 += w * static_cast<double>(sum.squared_norm());
    }
  }
  c.d2 *= k;
  return c;
}

BaseConstants base_constants_printed(const GroverParams& params) {
  const double d = static_cast<double>(params.coin_size);
  const double r2 = std::norm(params.r);
  const double t2 = std::norm(params.t);
  const double k = path_normalization(params);
  return {2.0 * d * r2 + (d * d - d - 1.0) * t2,
          k * (4.0 * d * r2 + 2.0 * (d * d - d - 1.0) * t2)};
}

ClosedFormParams closed_form_params(const GroverParams& params) {
  const auto base = base_constants_direct(params);
  const double r2 = std::norm(params.r);
  const double t2 = std::norm(params.t);
  ClosedFormParams c;
  c.r = params.r;
  c.t = params.t;
  c.coin_size = params.coin_size;
  c.k = path_normalization(params);
  c.delta = r2 - t2;
  c.xi = r2 - r2 * r2 * r2 - t2 + 3.0 * r2 * r2 * t2 - 3.0 * r2 * t2 * t2 + t2 * t2 * t2;
  c.eta = 2.0 * c.k * (c.delta - 1.0) * base.r2;
  return c;
}

double dispersion_recursion(const GroverParams& params, std::size_t n) {
  if (n < 2) throw std::invalid_argument("the dispersion recursion starts at n = 2");
  const auto base = base_constants_direct(params);
  const double k = path_normalization(params);
  const double delta = memory_bias(params);
  double d = base.d2;
  double r = base.r2;
  for (std::size_t m = 2; m < n; ++m) {
    d += 1.0 + 2.0 * k * delta * r;
    r = delta * r + 1.0 / k;
  }
  return d;
}

double dispersion_closed_form(const GroverParams& params, std::size_t n) {
  if (n <= 2) throw std::invalid_argument("the closed form applies for n > 2");
  const auto c = closed_form_params(params);
  if (std::abs(c.delta) <= 1e-9) {
    throw std::domain_error(
        "closed form is singular at |r|^2 = |t|^2; use dispersion_recursion instead");
  }
  const double r2 = std::norm(c.r);
  const double t2 = std::norm(c.t);
  const double numerator = static_cast<double>(n - 2) * c.xi - 2.0 * (r2 * r2 + t2 * t2) +
                           4.0 * r2 * t2 +
                           (2.0 + c.eta) * std::pow(c.delta, static_cast<double>(n)) +
                           c.eta * (t2 - r2);
  return numerator / (c.delta * (1.0 - c.delta) * (1.0 - c.delta));
}

double asymptotic_slope(double delta) {
  if (!(std::abs(delta) < 1.0)) {
    throw std::domain_error("asymptotic slope needs |r|^2 - |t|^2 strictly inside (-1, 1)");
  }
  return (1.0 + delta) / (1.0 - delta);
}

double asymptotic_slope(const GroverParams& params) {
  return asymptotic_slope(memory_bias(params));
}

LinearFit fit_slope(const DispersionSeries& series, std::size_t n_min, std::size_t n_max) {
  const auto w = select(series, n_min, n_max);
  return least_squares(w.x, w.y);
}

double fit_growth_exponent(const DispersionSeries& series, std::size_t n_min, std::size_t n_max) {
  auto w = select(series, n_min, n_max);
  for (std::size_t i = 0; i < w.x.size(); ++i) {
    if (!(w.y[i] > 0.0) || !(w.x[i] > 0.0)) {
      throw std::invalid_argument("growth exponent needs positive steps and values");
    }
    w.x[i] = std::log(w.x[i]);
    w.y[i] = std::log(w.y[i]);
  }
  return least_squares(w.x, w.y).slope;
}

DispersionSeries to_series(const EnsembleResult& result) {
  DispersionSeries s;
  s.steps = result.steps;
  s.values = result.mean_dispersion;
  s.provenance = DispersionSeries::Provenance::kEmpiricalEnsemble;
  s.config = "dim=" + std::to_string(result.dim) + " coin=" + result.coin_label +
             " phases=" + result.phases + " M=" + std::to_string(result.trajectories) +
             " seed=" + std::to_string(result.master_seed);
  return s;
}

std::vector<TransitionPoint> transition_study(std::size_t dim, const std::vector<double>& sigmas,
                                              std::size_t n, std::size_t trajectories,
                                              std::uint64_t master_seed, std::size_t n_min,
                                              std::size_t threads) {
  const std::size_t lo = n_min == 0 ? n / 4 : n_min;
  std::vector<TransitionPoint> out;
  out.reserve(sigmas.size());
  EnsembleOptions options;
  options.record.keep_distributions = false;
  options.threads = threads;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    StepConfig config(dim, grover_coin(2 * dim), PhaseDistribution::gaussian(sigmas[i]));
    const auto result =
        run_ensemble(config, n, trajectories, derive_seed(master_seed, i), options);
    TransitionPoint p;
    p.sigma = sigmas[i];
    p.series = to_series(result);
    p.growth_exponent = fit_growth_exponent(p.series, std::max<std::size_t>(lo, 1), n);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qwalk
