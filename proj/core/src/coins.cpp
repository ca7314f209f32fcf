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

#include "qwalk/coins.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qwalk {

namespace {

std::string describe(const UnitarityResiduals& r) {
  std::ostringstream os;
  os.precision(6);
  os << "normalization residual " << r.normalization << ", orthogonality residual "
     << r.orthogonality;
  return os.str();
}

}  // namespace

CoinMatrix::CoinMatrix(std::size_t size, std::vector<Amplitude> row_major, std::string label)
    : size_(size), entries_(std::move(row_major)), label_(std::move(label)) {
  if (size_ == 0) throw std::invalid_argument("coin size must be positive");
  if (entries_.size() != size_ * size_) {
    throw std::invalid_argument("coin matrix needs size*size entries");
  }
}

CoinMatrix CoinMatrix::identity(std::size_t size) {
  std::vector<Amplitude> e(size * size);
  for (std::size_t i = 0; i < size; ++i) e[i * size + i] = 1.0;
  return CoinMatrix(size, std::move(e), "identity");
}

CoinMatrix CoinMatrix::adjoint() const {
  std::vector<Amplitude> e(size_ * size_);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) e[j * size_ + i] = std::conj((*this)(i, j));
  }
  return CoinMatrix(size_, std::move(e));
}

std::vector<Amplitude> CoinMatrix::apply(std::span<const Amplitude> v) const {
  if (v.size() != size_) throw std::invalid_argument("coin/vector size mismatch");
  std::vector<Amplitude> out(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    Amplitude acc{};
    for (std::size_t j = 0; j < size_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

CoinMatrix operator*(const CoinMatrix& lhs, const CoinMatrix& rhs) {
  const std::size_t n = lhs.size();
  if (rhs.size() != n) throw std::invalid_argument("coin size mismatch");
  std::vector<Amplitude> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Amplitude l = lhs(i, k);
      for (std::size_t j = 0; j < n; ++j) e[i * n + j] += l * rhs(k, j);
    }
  }
  return CoinMatrix(n, std::move(e));
}

UnitarityResiduals unitarity_residuals(const GroverParams& p) {
  const double d = static_cast<double>(p.coin_size);
  const double r2 = std::norm(p.r);
  const double t2 = std::norm(p.t);
  const Amplitude cross = std::conj(p.r) * p.t + p.r * std::conj(p.t);
  return {std::abs(r2 + (d - 1.0) * t2 - 1.0),
          std::abs((d - 2.0) * t2 + cross.real())};
}

void validate(const GroverParams& p) {
  if (p.coin_size < 2) throw std::invalid_argument("coin size must be at least 2");
  const auto res = unitarity_residuals(p);
  if (res.normalization >= kCoinTolerance || res.orthogonality >= kCoinTolerance) {
    throw CoinConstraintError("G_{r,t} is not unitary: " + describe(res), res);
  }
}

CoinMatrix grover_coin(std::size_t coin_size) {
  if (coin_size < 2 || coin_size % 2 != 0) {
    throw std::invalid_argument("Grover coin size must be even and >= 2, got " +
                                std::to_string(coin_size));
  }
  auto m = generalized_grover(grover_params(coin_size));
  return CoinMatrix(coin_size, {m.entries().begin(), m.entries().end()}, "grover");
}

GroverParams grover_params(std::size_t coin_size) {
  const double d = static_cast<double>(coin_size);
  return {2.0 / d - 1.0, 2.0 / d, coin_size};
}

CoinMatrix generalized_grover(const GroverParams& p) {
  validate(p);
  const std::size_t n = p.coin_size;
  std::vector<Amplitude> e(n * n, p.t);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = p.r;
  return CoinMatrix(n, std::move(e), "generalized-grover");
}

CoinMatrix generalized_grover(Amplitude r, Amplitude t, std::size_t coin_size) {
  return generalized_grover(GroverParams{r, t, coin_size});
}

GroverParams grover_from_r(double r, std::size_t coin_size, int sign) {
  if (coin_size < 4 || coin_size % 2 != 0) {
    throw std::invalid_argument("real-r coin family needs an even |D| >= 4");
  }
  const double d = static_cast<double>(coin_size);
  const double r_min = (d - 2.0) / d;
  if (!(r >= r_min - 1e-15 && r < 1.0)) {
    std::ostringstream os;
    os << "r = " << r << " outside [" << r_min << ", 1) for |D| = " << coin_size;
    throw std::invalid_argument(os.str());
  }
  const double t_abs = std::sqrt((1.0 - r * r) / (d - 1.0));
  const double arg = std::clamp((2.0 - d) * t_abs / (2.0 * r), -1.0, 1.0);
  const double alpha = (sign < 0 ? -1.0 : 1.0) * std::acos(arg);
  GroverParams p{r, std::polar(t_abs, alpha), coin_size};
  validate(p);
  return p;
}

CoinMatrix fourier_coin(std::size_t coin_size) {
  if (coin_size == 0) throw std::invalid_argument("Fourier coin size must be positive");
  const double scale = 1.0 / std::sqrt(static_cast<double>(coin_size));
  std::vector<Amplitude> e(coin_size * coin_size);
  for (std::size_t j = 0; j < coin_size; ++j) {
    for (std::size_t k = 0; k < coin_size; ++k) {
      // jk is reduced mod |D| so the phase argument stays in [0, 2 pi).
      const double phase = 2.0 * std::numbers::pi *
                           static_cast<double>((j * k) % coin_size) /
                           static_cast<double>(coin_size);
      e[j * coin_size + k] = std::polar(scale, phase);
    }
  }
  return CoinMatrix(coin_size, std::move(e), "fourier");
}

double unitarity_error(const CoinMatrix& c) {
  const std::size_t n = c.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Amplitude acc{};
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(c(k, i)) * c(k, j);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

bool is_unitary(const CoinMatrix& c, double tol) { return unitarity_error(c) < tol; }

double memory_bias(const GroverParams& p) { return std::norm(p.r) - std::norm(p.t); }

double path_normalization(const GroverParams& p) {
  const double sd = std::sqrt(static_cast<double>(p.coin_size));
  return std::norm((p.r - p.t) / sd + sd * p.t);
}

}  // namespace qwalk
