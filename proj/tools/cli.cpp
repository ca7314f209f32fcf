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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/classical.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/pathsum.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk::cli {

namespace {

using nlohmann::ordered_json;

double parse_real(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [end, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || end != last || !std::isfinite(value)) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [end, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || end != last) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

constexpr std::string_view kGroverRPrefix = "grover-r:";

std::string join_sigmas(const std::vector<double>& sigmas) {
  std::string s;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (i > 0) s += ',';
    s += format_double(sigmas[i]);
  }
  return s;
}

DispersionSeries make_series(const std::vector<std::size_t>& steps,
                             const std::vector<double>& values,
                             DispersionSeries::Provenance provenance) {
  DispersionSeries s;
  s.steps = steps;
  s.values = values;
  s.provenance = provenance;
  return s;
}

// Result of one oracle comparison.
struct Check {
  Check(std::string name_, double deviation_, double tolerance_, bool skipped_ = false,
        std::string note_ = {})
      : name(std::move(name_)),
        deviation(deviation_),
        tolerance(tolerance_),
        skipped(skipped_),
        note(std::move(note_)) {}

  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool skipped = false;
  std::string note;

  bool passed() const { return skipped || deviation <= tolerance; }
};

void print_check(std::ostream& out, const Check& c) {
  if (c.skipped) {
    out << "SKIP " << c.name << " (" << c.note << ")\n";
    return;
  }
  out << (c.passed() ? "PASS " : "FAIL ") << c.name << " max_dev=" << format_double(c.deviation)
      << " tol=" << c.tolerance;
  if (!c.note.empty()) out << " " << c.note;
  out << '\n';
}

WalkState evolve_pure(const StepConfig& config, std::size_t n) {
  StepConfig pure(config.dim, config.coin, PhaseDistribution::none(), config.initial_coin);
  WalkState state = pure.initial_state();
  for (std::size_t k = 0; k < n; ++k) state = step(state, pure);
  return state;
}

Check check_pure_path_sum(const RunConfig& config, const StepConfig& step_config) {
  Check c{"pure path sum vs evolution", 0.0, 1e-10};
  if (config.coin != "grover" || config.init != "s") {
    c.skipped = true;
    c.note = "needs the Grover coin started from |s>";
  } else if (config.dim < 2) {
    c.skipped = true;
    c.note = "the Grover path sum needs at least 4 directions";
  } else if (config.steps == 0) {
    c.skipped = true;
    c.note = "no steps";
  } else {
    c.deviation = max_abs_difference(pure_qw_amplitudes(config.dim, config.steps),
                                     evolve_pure(step_config, config.steps));
  }
  return c;
}

Check check_momentum(const RunConfig& config, const StepConfig& step_config) {
  Check c{"momentum space vs evolution", 0.0, 1e-9};
  const std::size_t grid = 2 * config.steps + 2;
  if (std::pow(static_cast<double>(grid), static_cast<double>(config.dim)) > 2e6) {
    c.skipped = true;
    c.note = "momentum grid too large";
    return c;
  }
  c.deviation = max_abs_difference(
      momentum_space_state(config.dim, config.steps, step_config.coin, grid,
                           step_config.initial_coin),
      evolve_pure(step_config, config.steps));
  return c;
}

Check check_realization(const RunConfig& config, const StepConfig& step_config) {
  Check c{"path sum vs evolution under random phases", 0.0, 1e-10};
  StepConfig noisy(config.dim, step_config.coin, PhaseDistribution::uniform(),
                   step_config.initial_coin);
  Rng rng(derive_seed(config.seed, 0));
  std::vector<PhaseVector> phases;
  WalkState state = noisy.initial_state();
  for (std::size_t k = 0; k < config.steps; ++k) {
    phases.push_back(sample_phases(noisy.phases, noisy.coin.size(), rng));
    state = step(state, noisy, &phases.back());
  }
  const Distribution dist = position_distribution(state);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p =
        per_realization_prob(noisy.coin, phases, dist.position(i), noisy.initial_coin);
    c.deviation = std::max(c.deviation, std::abs(p - dist.masses()[i]));
  }
  c.note = "seed=" + std::to_string(config.seed);
  return c;
}

std::vector<Check> grover_checks(const RunConfig& config, const GroverParams& params,
                                 std::ostream& out) {
  const std::size_t n = config.steps;
  std::vector<Check> checks;
  const Distribution mean = mean_dist_grover(params, n);
  checks.push_back({"mean distribution DP vs path enumeration",
                    max_abs_difference(mean, mean_dist_grover_bruteforce(params, n)), 1e-12});

  const double p_same = std::norm(params.r);
  const CRWMParams crwm(config.dim, p_same);
  const Distribution crwm_dist = crwm_distribution(crwm, n);
  checks.push_back({"QW-RPS mean vs CRW-M", max_abs_difference(mean, crwm_dist), 1e-12,
                    false, "p_same=" + format_double(p_same)});
  if (std::abs(p_same - 1.0 / static_cast<double>(params.coin_size)) < 1e-15) {
    checks.push_back({"QW-RPS mean vs CRW",
                      max_abs_difference(mean, crw_distribution(config.dim, n)), 1e-12});
  }

  const double dp_moment = second_moment(crwm_dist);
  const double scale = std::max(1.0, dp_moment);
  checks.push_back({"CRW-M moment recursion vs DP",
                    std::abs(crwm_dispersion(crwm, n) - dp_moment) / scale, 1e-9});
  if (n >= 2) {
    checks.push_back({"dispersion recursion vs DP",
                      std::abs(dispersion_recursion(params, n) - dp_moment) / scale, 1e-9});
  } else {
    checks.push_back({"dispersion recursion vs DP", 0.0, 0.0, true, "needs n >= 2"});
  }
  const double delta = memory_bias(params);
  if (n > 2 && std::abs(delta) > 1e-9) {
    const double rec = dispersion_recursion(params, n);
    checks.push_back({"closed form vs recursion",
                      std::abs(dispersion_closed_form(params, n) - rec) / std::max(1.0, rec),
                      1e-6});
  } else {
    checks.push_back({"closed form vs recursion", 0.0, 0.0, true,
                      n > 2 ? "closed form is singular at delta = 0" : "needs n > 2"});
  }

  const auto direct = base_constants_direct(params);
  const auto printed = base_constants_printed(params);
  out << "INFO base constants r2_direct=" << format_double(direct.r2)
      << " r2_printed=" << format_double(printed.r2) << " d2_direct=" << format_double(direct.d2)
      << " d2_printed=" << format_double(printed.d2)
      << " (the printed collapsed forms are reported, not checked)\n";
  return checks;
}

std::vector<Check> fourier_checks(const RunConfig& config) {
  const std::size_t n = config.steps;
  std::vector<Check> checks;
  for (const bool sym : {false, true}) {
    const std::string tag = sym ? "symmetrized" : "plain";
    checks.push_back(
        {"Fourier " + tag + " mean distribution DP vs path enumeration",
         max_abs_difference(mean_dist_fourier(config.dim, n, sym),
                            mean_dist_fourier_bruteforce(config.dim, n, sym)),
         1e-12});
  }
  checks.push_back({"Fourier symmetrized mean vs CRW",
                    max_abs_difference(mean_dist_fourier(config.dim, n, true),
                                       crw_distribution(config.dim, n)),
                    1e-12});
  return checks;
}

void write_output(const std::optional<std::string>& path, std::ostream& fallback,
                  const std::function<int(std::ostream&)>& body, int& status) {
  if (!path || path->empty() || *path == "-") {
    status = body(fallback);
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + *path + "'");
  status = body(file);
  if (!file) throw std::runtime_error("failed writing '" + *path + "'");
}

}  // namespace

FitRange parse_fit_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("fit range must look like a:b, got '" + text + "'");
  }
  FitRange r{parse_size(text.substr(0, colon), "fit range start"),
             parse_size(text.substr(colon + 1), "fit range end")};
  if (r.lo > r.hi) throw std::invalid_argument("fit range start exceeds its end");
  return r;
}

void RunConfig::validate() const {
  if (dim == 0 || dim > kMaxDim) {
    throw std::invalid_argument("--dim must lie in [1, " + std::to_string(kMaxDim) + "]");
  }
  if (trajectories == 0) throw std::invalid_argument("--trajectories must be at least 1");
  if (stride == 0) throw std::invalid_argument("--stride must be at least 1");
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("--format must be csv or json");
  }
  if (init != "s" && init != "sym-fourier") {
    throw std::invalid_argument("--init must be s or sym-fourier");
  }
  make_coin(coin, dim);
  parse_phases(phases);
  for (double s : sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("sigmas must be >= 0");
  }
  if (fit_range && fit_range->hi > steps) {
    throw std::invalid_argument("fit range end exceeds --steps");
  }
}

FitRange RunConfig::effective_fit_range() const {
  return fit_range ? *fit_range : FitRange{steps / 4, steps};
}

CoinMatrix make_coin(const std::string& spec, std::size_t dim) {
  const std::size_t size = 2 * dim;
  if (spec == "grover") return grover_coin(size);
  if (spec == "fourier") return fourier_coin(size);
  if (auto params = grover_family(spec, dim)) return generalized_grover(*params);
  throw std::invalid_argument("unknown coin '" + spec + "' (grover, fourier, grover-r:<r>)");
}

std::optional<GroverParams> grover_family(const std::string& spec, std::size_t dim) {
  const std::size_t size = 2 * dim;
  if (spec == "grover") return grover_params(size);
  if (spec.rfind(kGroverRPrefix, 0) == 0) {
    const double r = parse_real(spec.substr(kGroverRPrefix.size()), "coin parameter r");
    return grover_from_r(r, size);
  }
  return std::nullopt;
}

PhaseDistribution parse_phases(const std::string& spec) {
  if (spec == "none") return PhaseDistribution::none();
  if (spec == "uniform") return PhaseDistribution::uniform();
  constexpr std::string_view prefix = "gaussian:";
  if (spec.rfind(prefix, 0) == 0) {
    return PhaseDistribution::gaussian(parse_real(spec.substr(prefix.size()), "sigma"));
  }
  throw std::invalid_argument("unknown phase spec '" + spec +
                              "' (none, uniform, gaussian:<sigma>)");
}

std::vector<Amplitude> make_initial_coin(const std::string& init, std::size_t coin_size) {
  if (init == "s") return {};
  if (init == "sym-fourier") return symmetrized_fourier_coin_state(coin_size);
  throw std::invalid_argument("unknown initial coin state '" + init + "'");
}

StepConfig make_step_config(const RunConfig& config) {
  return StepConfig(config.dim, make_coin(config.coin, config.dim), parse_phases(config.phases),
                    make_initial_coin(config.init, 2 * config.dim));
}

void guard_state_size(std::size_t dim, std::size_t n) {
  const double rows = l1_ball_count(dim, n);
  // Current and next state, each a key plus a coin row.
  const double bytes = 2.0 * rows * (8.0 + 16.0 * static_cast<double>(2 * dim));
  if (bytes > kMaxStateBytes) {
    std::ostringstream msg;
    msg << "a " << n << "-step walk on Z^" << dim << " needs about " << bytes / 1e9
        << " GB of state, above the " << kMaxStateBytes / 1e9 << " GB limit";
    throw ResourceLimitError(msg.str());
  }
  if (n > static_cast<std::size_t>(LatticeCodec(dim).max_radius())) {
    throw ResourceLimitError("step count exceeds the representable lattice radius");
  }
}

Metadata run_metadata(const RunConfig& config, const std::string& command) {
  std::ostringstream line;
  line << "qwalk " << command << " --dim " << config.dim << " --steps " << config.steps
       << " --coin " << config.coin << " --phases " << config.phases << " --init "
       << config.init << " --trajectories " << config.trajectories << " --seed " << config.seed
       << " --stride " << config.stride << " --format " << config.format;
  if (config.fit_range) {
    line << " --fit-range " << config.fit_range->lo << ':' << config.fit_range->hi;
  }
  if (command == "transition") line << " --sigmas " << join_sigmas(config.sigmas);
  return {
      {"command", line.str()},
      {"dim", std::to_string(config.dim)},
      {"steps", std::to_string(config.steps)},
      {"coin", config.coin},
      {"phases", config.phases},
      {"init", config.init},
      {"trajectories", std::to_string(config.trajectories)},
      {"master_seed", std::to_string(config.seed)},
      {"stride", std::to_string(config.stride)},
      {"rng", std::string(kRngName)},
  };
}

DispersionReport dispersion_report(const RunConfig& config) {
  config.validate();
  guard_state_size(config.dim, config.steps);
  const StepConfig noisy = make_step_config(config);
  const StepConfig pure(config.dim, noisy.coin, PhaseDistribution::none(), noisy.initial_coin);

  EnsembleOptions options;
  options.record.stride = config.stride;
  options.record.keep_distributions = false;
  options.threads = config.threads;
  const auto pure_run = run_ensemble(pure, config.steps, 1, config.seed, options);
  const auto rps_run =
      run_ensemble(noisy, config.steps, config.trajectories, config.seed, options);

  DispersionReport report;
  report.dim = config.dim;
  report.range = config.effective_fit_range();
  report.steps = rps_run.steps;
  report.pure_qw = pure_run.mean_dispersion;
  report.rps_mean = rps_run.mean_dispersion;
  report.rps_stderr = rps_run.dispersion_stderr;

  const auto family = grover_family(config.coin, config.dim);
  const double p_same =
      family ? std::norm(family->r) : 1.0 / static_cast<double>(2 * config.dim);
  const CRWMParams crwm(config.dim, p_same);
  for (std::size_t n : report.steps) {
    report.crw.push_back(crw_dispersion(config.dim, n));
    report.crwm.push_back(crwm_dispersion(crwm, n));
  }

  using P = DispersionSeries::Provenance;
  const auto lo = report.range.lo;
  const auto hi = report.range.hi;
  report.rps_fit = fit_slope(make_series(report.steps, report.rps_mean, P::kEmpiricalEnsemble),
                             lo, hi);
  report.crw_fit = fit_slope(make_series(report.steps, report.crw, P::kDpExact), lo, hi);
  report.crwm_fit = fit_slope(make_series(report.steps, report.crwm, P::kRecursion), lo, hi);
  report.pure_exponent = fit_growth_exponent(
      make_series(report.steps, report.pure_qw, P::kEmpiricalEnsemble),
      std::max<std::size_t>(lo, 1), hi);
  if (family && std::abs(memory_bias(*family)) < 1.0) {
    report.target_slope = asymptotic_slope(*family);
  }
  return report;
}

std::vector<RunConfig> preset(const std::string& name) {
  RunConfig base;
  base.coin = "grover";
  base.phases = "uniform";
  base.trajectories = 50;
  base.seed = 20260101;
  if (name == "fig1" || name == "fig2") {
    base.dim = name == "fig1" ? 2 : 3;
    base.steps = 80;
    base.fit_range = FitRange{20, 80};
    return {base};
  }
  if (name == "fig3") {
    // n = 80 on Z^4 needs several GB of state; 40 steps keep it desk-sized.
    base.dim = 4;
    base.steps = 40;
    base.fit_range = FitRange{20, 40};
    return {base};
  }
  if (name == "fig4") {
    std::vector<RunConfig> all;
    for (const char* fig : {"fig1", "fig2", "fig3"}) all.push_back(preset(fig).front());
    return all;
  }
  if (name == "fig5") {
    base.dim = 2;
    base.steps = 60;
    base.phases = "gaussian:0";
    base.sigmas = {0.0, 0.5, 1.0, 2.0, 3.0};
    base.fit_range = FitRange{15, 60};
    return {base};
  }
  throw std::invalid_argument("unknown preset '" + name + "' (fig1 ... fig5)");
}

int cmd_simulate(const RunConfig& config, bool with_distributions, std::ostream& out) {
  config.validate();
  guard_state_size(config.dim, config.steps);
  EnsembleOptions options;
  options.record.stride = config.stride;
  options.record.keep_distributions = with_distributions;
  options.threads = config.threads;
  const auto result = run_ensemble(make_step_config(config), config.steps, config.trajectories,
                                   config.seed, options);
  const auto metadata = run_metadata(config, "simulate");
  if (config.format == "json") {
    out << ensemble_json(result, metadata) << '\n';
  } else {
    write_series_csv(out, result, metadata);
  }
  return kExitOk;
}

int cmd_dispersion(const std::vector<RunConfig>& configs, std::ostream& out) {
  if (configs.empty()) throw std::invalid_argument("no configuration to run");
  std::vector<DispersionReport> reports;
  for (const auto& c : configs) reports.push_back(dispersion_report(c));

  auto metadata = run_metadata(configs.front(), "dispersion");
  if (configs.size() > 1) {
    std::string dims;
    for (const auto& c : configs) dims += (dims.empty() ? "" : ",") + std::to_string(c.dim);
    metadata["dims"] = dims;
    metadata.erase("command");
  }

  if (configs.front().format == "json") {
    ordered_json doc;
    doc["config"] = metadata;
    doc["reports"] = ordered_json::array();
    for (const auto& r : reports) {
      ordered_json series = ordered_json::array();
      for (std::size_t k = 0; k < r.steps.size(); ++k) {
        series.push_back({{"step", r.steps[k]},
                          {"pure_qw", r.pure_qw[k]},
                          {"qw_rps_mean", r.rps_mean[k]},
                          {"qw_rps_stderr", r.rps_stderr[k]},
                          {"crw_exact", r.crw[k]},
                          {"crwm_exact", r.crwm[k]}});
      }
      ordered_json fits = {{"fit_range", {r.range.lo, r.range.hi}},
                           {"qw_rps_slope", r.rps_fit.slope},
                           {"qw_rps_intercept", r.rps_fit.intercept},
                           {"qw_rps_r_squared", r.rps_fit.r_squared},
                           {"pure_qw_exponent", r.pure_exponent},
                           {"crw_slope", r.crw_fit.slope},
                           {"crwm_slope", r.crwm_fit.slope}};
      if (r.target_slope) fits["target_slope"] = *r.target_slope;
      doc["reports"].push_back({{"dim", r.dim}, {"series", std::move(series)}, {"fits", fits}});
    }
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  write_metadata_comments(out, metadata);
  out << "dim,step,pure_qw,qw_rps_mean,qw_rps_stderr,crw_exact,crwm_exact\n";
  for (const auto& r : reports) {
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
      out << r.dim << ',' << r.steps[k] << ',' << format_double(r.pure_qw[k]) << ','
          << format_double(r.rps_mean[k]) << ',' << format_double(r.rps_stderr[k]) << ','
          << format_double(r.crw[k]) << ',' << format_double(r.crwm[k]) << '\n';
    }
  }
  for (const auto& r : reports) {
    out << "# fit dim=" << r.dim << " range=" << r.range.lo << ':' << r.range.hi
        << " qw_rps_slope=" << format_double(r.rps_fit.slope)
        << " qw_rps_intercept=" << format_double(r.rps_fit.intercept)
        << " qw_rps_r_squared=" << format_double(r.rps_fit.r_squared)
        << " pure_qw_exponent=" << format_double(r.pure_exponent)
        << " crw_slope=" << format_double(r.crw_fit.slope)
        << " crwm_slope=" << format_double(r.crwm_fit.slope);
    if (r.target_slope) out << " target_slope=" << format_double(*r.target_slope);
    out << '\n';
  }
  return kExitOk;
}

int cmd_transition(const RunConfig& config, std::ostream& out) {
  config.validate();
  if (config.coin != "grover") {
    throw std::invalid_argument("transition runs use the Grover coin only");
  }
  if (config.sigmas.empty()) throw std::invalid_argument("--sigmas must not be empty");
  guard_state_size(config.dim, config.steps);
  const FitRange range = config.effective_fit_range();
  const auto points = transition_study(config.dim, config.sigmas, config.steps,
                                       config.trajectories, config.seed,
                                       std::max<std::size_t>(range.lo, 1), config.threads);
  std::vector<double> exponents;
  for (const auto& p : points) {
    exponents.push_back(fit_growth_exponent(p.series, std::max<std::size_t>(range.lo, 1),
                                            range.hi));
  }

  auto metadata = run_metadata(config, "transition");
  metadata.erase("phases");
  metadata["sigmas"] = join_sigmas(config.sigmas);
  if (config.format == "json") {
    ordered_json doc;
    doc["config"] = metadata;
    doc["fit_range"] = {range.lo, range.hi};
    doc["points"] = ordered_json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
      ordered_json series = ordered_json::array();
      for (std::size_t k = 0; k < points[i].series.steps.size(); ++k) {
        series.push_back(
            {{"step", points[i].series.steps[k]}, {"dispersion", points[i].series.values[k]}});
      }
      doc["points"].push_back({{"sigma", points[i].sigma},
                               {"growth_exponent", exponents[i]},
                               {"series", std::move(series)}});
    }
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  write_metadata_comments(out, metadata);
  out << "sigma,step,dispersion\n";
  for (const auto& p : points) {
    for (std::size_t k = 0; k < p.series.steps.size(); ++k) {
      out << format_double(p.sigma) << ',' << p.series.steps[k] << ','
          << format_double(p.series.values[k]) << '\n';
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << "# exponent sigma=" << format_double(points[i].sigma) << " range=" << range.lo << ':'
        << range.hi << " value=" << format_double(exponents[i]) << '\n';
  }
  return kExitOk;
}

int cmd_oracle_check(const RunConfig& config, std::ostream& out) {
  config.validate();
  const std::size_t coin_size = 2 * config.dim;
  const double paths =
      std::pow(static_cast<double>(coin_size), static_cast<double>(config.steps));
  if (paths > kMaxEnumeratedPaths) {
    throw ResourceLimitError("oracle checks enumerate |D|^n = " + format_double(paths) +
                             " paths, above the limit of " +
                             format_double(kMaxEnumeratedPaths));
  }
  const StepConfig step_config = make_step_config(config);
  out << "oracle-check dim=" << config.dim << " steps=" << config.steps
      << " coin=" << config.coin << " init=" << config.init << '\n';

  std::vector<Check> checks;
  checks.push_back(check_pure_path_sum(config, step_config));
  checks.push_back(check_momentum(config, step_config));
  checks.push_back(check_realization(config, step_config));
  std::vector<Check> model;
  if (const auto family = grover_family(config.coin, config.dim)) {
    model = grover_checks(config, *family, out);
  } else {
    model = fourier_checks(config);
  }
  checks.insert(checks.end(), model.begin(), model.end());

  std::vector<std::string> failed;
  for (const auto& c : checks) {
    print_check(out, c);
    if (!c.passed()) failed.push_back(c.name);
  }
  if (failed.empty()) {
    out << "oracle-check: all checks passed\n";
    return kExitOk;
  }
  out << "oracle-check: FAILED:";
  for (const auto& name : failed) out << ' ' << '[' << name << ']';
  out << '\n';
  return kExitCheckFailed;
}

int cmd_classical(const RunConfig& config, std::optional<double> p_same, std::ostream& out) {
  config.validate();
  const Distribution dist = p_same ? crwm_distribution(CRWMParams(config.dim, *p_same),
                                                       config.steps)
                                   : crw_distribution(config.dim, config.steps);
  if (config.format == "json") {
    out << distribution_json(dist) << '\n';
    return kExitOk;
  }
  Metadata metadata = {{"dim", std::to_string(config.dim)},
                       {"steps", std::to_string(config.steps)},
                       {"walk", p_same ? "crw-m" : "crw"},
                       {"dispersion", format_double(second_moment(dist))}};
  if (p_same) metadata["p_same"] = format_double(*p_same);
  write_metadata_comments(out, metadata);
  write_distribution_csv(out, dist);
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum walks with random phase shifts on Z^d", "qwalk"};
  app.require_subcommand(1);

  struct Flags {
    std::optional<std::size_t> dim, steps, trajectories, stride, threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> coin, phases, init, format, out, fit_range, preset;
    std::vector<double> sigmas;
    std::optional<double> p_same;
    bool with_distributions = false;
  } flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dim", flags.dim, "Lattice dimension d (coin size 2d)");
    sub->add_option("--steps", flags.steps, "Number of walk steps n");
    sub->add_option("--seed", flags.seed, "Master seed");
    sub->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", flags.out, "Output file (default: stdout)");
    sub->add_option("--threads", flags.threads, "Worker threads (0: all cores)");
  };
  auto add_walk = [&](CLI::App* sub) {
    sub->add_option("--coin", flags.coin, "grover | fourier | grover-r:<r>");
    sub->add_option("--phases", flags.phases, "none | uniform | gaussian:<sigma>");
    sub->add_option("--init", flags.init, "Initial coin state: s | sym-fourier")
        ->check(CLI::IsMember({"s", "sym-fourier"}));
    sub->add_option("--trajectories", flags.trajectories, "Ensemble size M");
    sub->add_option("--stride", flags.stride, "Record every k-th step");
    sub->add_option("--fit-range", flags.fit_range, "Fit window a:b");
  };

  auto* simulate = app.add_subcommand("simulate", "Run a QW-RPS ensemble");
  add_common(simulate);
  add_walk(simulate);
  simulate->add_flag("--distributions", flags.with_distributions,
                     "Include mean distributions (JSON output)");

  auto* dispersion =
      app.add_subcommand("dispersion", "Pure QW, QW-RPS and classical dispersion series");
  add_common(dispersion);
  add_walk(dispersion);
  dispersion->add_option("--preset", flags.preset, "fig1 | fig2 | fig3 | fig4")
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));

  auto* transition =
      app.add_subcommand("transition", "Growth exponents against Gaussian phase width");
  add_common(transition);
  add_walk(transition);
  transition->add_option("--sigmas", flags.sigmas, "Comma-separated sigma list")
      ->delimiter(',');
  transition->add_option("--preset", flags.preset, "fig5")->check(CLI::IsMember({"fig5"}));

  auto* oracle = app.add_subcommand("oracle-check", "Cross-check simulators against oracles");
  add_common(oracle);
  add_walk(oracle);

  auto* classical = app.add_subcommand("classical", "Exact CRW / CRW-M distribution");
  add_common(classical);
  classical->add_option("--p-same", flags.p_same, "Repeat probability (omit for CRW)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qwalk: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::vector<RunConfig> configs{RunConfig{}};
    if (oracle->parsed()) configs.front().steps = 5;
    if (flags.preset) configs = preset(*flags.preset);
    for (auto& c : configs) {
      if (flags.dim) c.dim = *flags.dim;
      if (flags.steps) c.steps = *flags.steps;
      if (flags.trajectories) c.trajectories = *flags.trajectories;
      if (flags.stride) c.stride = *flags.stride;
      if (flags.threads) c.threads = *flags.threads;
      if (flags.seed) c.seed = *flags.seed;
      if (flags.coin) c.coin = *flags.coin;
      if (flags.phases) c.phases = *flags.phases;
      if (flags.init) c.init = *flags.init;
      if (flags.format) c.format = *flags.format;
      if (flags.fit_range) c.fit_range = parse_fit_range(*flags.fit_range);
      if (!flags.sigmas.empty()) c.sigmas = flags.sigmas;
      c.validate();
    }

    int status = kExitOk;
    write_output(flags.out, out, [&](std::ostream& sink) {
      if (simulate->parsed()) return cmd_simulate(configs.front(), flags.with_distributions, sink);
      if (dispersion->parsed()) return cmd_dispersion(configs, sink);
      if (transition->parsed()) return cmd_transition(configs.front(), sink);
      if (oracle->parsed()) return cmd_oracle_check(configs.front(), sink);
      return cmd_classical(configs.front(), flags.p_same, sink);
    }, status);
    return status;
  } catch (const ResourceLimitError& e) {
    err << "qwalk: resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "qwalk: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "qwalk: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qwalk: error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace qwalk::cli
