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

#include "qwalk/io.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace qwalk {

namespace {

using nlohmann::ordered_json;

ordered_json distribution_to_json(const Distribution& dist) {
  ordered_json records = ordered_json::array();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Position x = dist.position(i);
    ordered_json coords = ordered_json::array();
    for (std::size_t j = 0; j < x.dim(); ++j) coords.push_back(x[j]);
    records.push_back({{"position", std::move(coords)}, {"p", dist.masses()[i]}});
  }
  return records;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double: buffer too small");
  return std::string(buffer, end);
}

void write_distribution_csv(std::ostream& out, const Distribution& dist) {
  for (std::size_t j = 0; j < dist.dim(); ++j) out << 'x' << (j + 1) << ',';
  out << "probability\n";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Position x = dist.position(i);
    for (std::size_t j = 0; j < x.dim(); ++j) out << x[j] << ',';
    out << format_double(dist.masses()[i]) << '\n';
  }
}

std::string distribution_json(const Distribution& dist) {
  return distribution_to_json(dist).dump();
}

void write_metadata_comments(std::ostream& out, const Metadata& metadata) {
  for (const auto& [key, value] : metadata) out << "# " << key << '=' << value << '\n';
}

void write_series_csv(std::ostream& out, const EnsembleResult& result,
                      const Metadata& metadata) {
  write_metadata_comments(out, metadata);
  out << "step,dispersion_mean,dispersion_stderr\n";
  for (std::size_t k = 0; k < result.steps.size(); ++k) {
    out << result.steps[k] << ',' << format_double(result.mean_dispersion[k]) << ','
        << format_double(result.dispersion_stderr[k]) << '\n';
  }
}

std::string ensemble_json(const EnsembleResult& result, const Metadata& metadata) {
  ordered_json config = {
      {"dim", result.dim}, {"coin", result.coin_label}, {"phases", result.phases}};
  for (const auto& [key, value] : metadata) {
    if (!config.contains(key)) config[key] = value;
  }
  ordered_json series = ordered_json::array();
  for (std::size_t k = 0; k < result.steps.size(); ++k) {
    series.push_back({{"step", result.steps[k]},
                      {"dispersion_mean", result.mean_dispersion[k]},
                      {"dispersion_stderr", result.dispersion_stderr[k]}});
  }
  ordered_json doc = {{"config", std::move(config)},
                      {"n", result.n},
                      {"M", result.trajectories},
                      {"master_seed", result.master_seed},
                      {"rng_name", result.rng_name},
                      {"series", std::move(series)}};
  if (!result.mean_distribution.empty()) {
    ordered_json dists = ordered_json::array();
    for (std::size_t k = 0; k < result.mean_distribution.size(); ++k) {
      dists.push_back({{"step", result.steps[k]},
                       {"distribution", distribution_to_json(result.mean_distribution[k])}});
    }
    doc["distributions"] = std::move(dists);
  }
  return doc.dump(2);
}

}  // namespace qwalk
