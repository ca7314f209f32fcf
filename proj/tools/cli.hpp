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
#include <ostream>
#include <string>
#include <vector>

#include "qwalk/analytics.hpp"
#include "qwalk/coins.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/io.hpp"

namespace qwalk::cli {

/// Exit statuses of the qwalk executable.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

struct FitRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

/// Parses "a:b" with a <= b.
FitRange parse_fit_range(const std::string& text);

struct RunConfig {
  std::size_t dim = 2;
  std::size_t steps = 40;
  /// "grover", "fourier" or "grover-r:<r>".
  std::string coin = "grover";
  /// "none", "uniform" or "gaussian:<sigma>".
  std::string phases = "uniform";
  /// "s" (uniform superposition) or "sym-fourier".
  std::string init = "s";
  std::size_t trajectories = 50;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::size_t stride = 1;
  /// Empty means [steps / 4, steps].
  std::optional<FitRange> fit_range;
  std::size_t threads = 0;
  std::vector<double> sigmas = {0.0, 0.5, 1.0, 2.0, 3.0};

  /// Throws std::invalid_argument on inconsistent values.
  void validate() const;
  FitRange effective_fit_range() const;
};

/// Rejects runs whose dense state estimate exceeds this many bytes.
inline constexpr double kMaxStateBytes = 2.0e9;

CoinMatrix make_coin(const std::string& spec, std::size_t dim);
/// Set for the Grover family, empty for the Fourier coin.
std::optional<GroverParams> grover_family(const std::string& spec, std::size_t dim);
PhaseDistribution parse_phases(const std::string& spec);
std::vector<Amplitude> make_initial_coin(const std::string& init, std::size_t coin_size);
StepConfig make_step_config(const RunConfig& config);

/// Throws ResourceLimitError when an n-step state on Z^d would not fit.
void guard_state_size(std::size_t dim, std::size_t n);

/// Header entries that, fed back as flags, reproduce a run.
Metadata run_metadata(const RunConfig& config, const std::string& command);

struct DispersionReport {
  std::size_t dim = 0;
  FitRange range;
  std::vector<std::size_t> steps;
  std::vector<double> pure_qw;
  std::vector<double> rps_mean;
  std::vector<double> rps_stderr;
  std::vector<double> crw;
  std::vector<double> crwm;
  LinearFit rps_fit;
  LinearFit crw_fit;
  LinearFit crwm_fit;
  double pure_exponent = 0.0;
  /// (1 + delta) / (1 - delta) for Grover-family coins.
  std::optional<double> target_slope;
};

DispersionReport dispersion_report(const RunConfig& config);

/// Presets named fig1 ... fig5. fig4 expands to one config per dimension.
std::vector<RunConfig> preset(const std::string& name);

int cmd_simulate(const RunConfig& config, bool with_distributions, std::ostream& out);
int cmd_dispersion(const std::vector<RunConfig>& configs, std::ostream& out);
int cmd_transition(const RunConfig& config, std::ostream& out);
int cmd_oracle_check(const RunConfig& config, std::ostream& out);
/// Exact CRW or CRW-M distribution; p_same empty means the memoryless walk.
int cmd_classical(const RunConfig& config, std::optional<double> p_same, std::ostream& out);

/// Whole command line: parses argv, dispatches, maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
