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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Dense |D| x |D| complex matrix acting on the direction register.
/// Rows and columns are Direction indices.
class CoinMatrix {
 public:
  CoinMatrix(std::size_t size, std::vector<Amplitude> row_major, std::string label = {});

  static CoinMatrix identity(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  const std::string& label() const noexcept { return label_; }
  Amplitude operator()(std::size_t row, std::size_t col) const {
    return entries_[row * size_ + col];
  }
  std::span<const Amplitude> entries() const noexcept { return entries_; }

  CoinMatrix adjoint() const;
  std::vector<Amplitude> apply(std::span<const Amplitude> v) const;
  friend CoinMatrix operator*(const CoinMatrix& lhs, const CoinMatrix& rhs);

 private:
  std::size_t size_;
  std::vector<Amplitude> entries_;
  std::string label_;
};

/// Parameters of the permutation-symmetric coin G_{r,t}: r on the diagonal,
/// t everywhere else.
struct GroverParams {
  Amplitude r;
  Amplitude t;
  std::size_t coin_size = 0;
};

/// Residuals of the two unitarity conditions of G_{r,t}:
///   |r|^2 + (|D|-1)|t|^2 - 1   and   (|D|-2)|t|^2 + r* t + r t*.
struct UnitarityResiduals {
  double normalization = 0.0;
  double orthogonality = 0.0;
};

class CoinConstraintError : public std::invalid_argument {
 public:
  CoinConstraintError(const std::string& what, UnitarityResiduals residuals)
      : std::invalid_argument(what), residuals_(residuals) {}
  const UnitarityResiduals& residuals() const noexcept { return residuals_; }

 private:
  UnitarityResiduals residuals_;
};

inline constexpr double kCoinTolerance = 1e-12;

UnitarityResiduals unitarity_residuals(const GroverParams& p);

/// Throws CoinConstraintError unless both residuals are below kCoinTolerance.
void validate(const GroverParams& p);

/// 2|s><s| - 1. Requires an even size >= 2.
CoinMatrix grover_coin(std::size_t coin_size);

/// The canonical Grover point r = 2/|D| - 1, t = 2/|D|.
GroverParams grover_params(std::size_t coin_size);

CoinMatrix generalized_grover(const GroverParams& p);
CoinMatrix generalized_grover(Amplitude r, Amplitude t, std::size_t coin_size);

/// Real-r member of the unitary family: |t| = sqrt((1-r^2)/(|D|-1)) and
/// arg t = sign * arccos[(2-|D|)|t| / (2r)]. Valid for |D| >= 4 and
/// (|D|-2)/|D| <= r < 1.
GroverParams grover_from_r(double r, std::size_t coin_size, int sign = 1);

/// Entry (j,k) = exp(2 pi i j k / |D|) / sqrt(|D|).
CoinMatrix fourier_coin(std::size_t coin_size);

/// max_{ij} |(C^dagger C - I)_{ij}|.
double unitarity_error(const CoinMatrix& c);
bool is_unitary(const CoinMatrix& c, double tol = kCoinTolerance);

/// Delta = |r|^2 - |t|^2, the repeat-vs-turn bias of the classical image.
double memory_bias(const GroverParams& p);

/// K = |(r-t)/sqrt|D| + sqrt|D| t|^2, the squared overlap <a|G|s> weight of
/// every first step. Equals 1/|D| on the unitary family.
double path_normalization(const GroverParams& p);

}  // namespace qwalk
