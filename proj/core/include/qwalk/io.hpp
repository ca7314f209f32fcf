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

#include <map>
#include <ostream>
#include <string>

#include "qwalk/evolution.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Free-form key/value pairs copied into output headers.
using Metadata = std::map<std::string, std::string>;

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_double(double value);

/// Header `x1,...,xd,probability`, then one row per support point in key order.
void write_distribution_csv(std::ostream& out, const Distribution& dist);

/// [{"position": [x1, ...], "p": value}, ...]
std::string distribution_json(const Distribution& dist);

/// `# key=value` lines, one per entry.
void write_metadata_comments(std::ostream& out, const Metadata& metadata);

/// Metadata comments, then `step,dispersion_mean,dispersion_stderr`.
void write_series_csv(std::ostream& out, const EnsembleResult& result, const Metadata& metadata);

/// {config, n, M, master_seed, rng_name, series: [...], distributions?}. The
/// config object holds dim/coin/phases from the result plus every metadata entry.
std::string ensemble_json(const EnsembleResult& result, const Metadata& metadata);

}  // namespace qwalk
