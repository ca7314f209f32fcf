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

#include "qwalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace qwalk {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw std::invalid_argument("lattice dimension must be in [1, " +
                                std::to_string(kMaxDim) + "], got " +
                                std::to_string(dim));
  }
}

}  // namespace

Position::Position(std::size_t dim) : dim_(static_cast<std::uint32_t>(dim)) {
  check_dim(dim);
}

Position::Position(std::initializer_list<int> coords)
    : dim_(static_cast<std::uint32_t>(coords.size())) {
  check_dim(coords.size());
  std::copy(coords.begin(), coords.end(), coords_.begin());
}

std::int64_t Position::squared_norm() const noexcept {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    s += static_cast<std::int64_t>(coords_[j]) * coords_[j];
  }
  return s;
}

std::int64_t Position::l1_norm() const noexcept {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < dim_; ++j) s += std::abs(coords_[j]);
  return s;
}

Position& Position::operator+=(Direction a) {
  if (a.axis() >= dim_) {
    throw std::out_of_range("direction " + std::to_string(a.index()) +
                            " does not exist in dimension " +
                            std::to_string(dim_));
  }
  coords_[a.axis()] += a.sign();
  return *this;
}

std::string Position::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < dim_; ++j) {
    if (j) s += ",";
    s += std::to_string(coords_[j]);
  }
  return s + ")";
}

Position unit_vector(std::size_t dim, Direction a) { return Position(dim) + a; }

double l1_ball_count(std::size_t dim, std::size_t radius) {
  // sum_k 2^k C(d,k) C(r,k): choose k nonzero axes, their signs, and a
  // composition of at most r into k positive parts.
  double total = 0.0;
  double c_dk = 1.0;
  double c_rk = 1.0;
  double pow2 = 1.0;
  for (std::size_t k = 0; k <= dim; ++k) {
    if (k > 0) {
      c_dk = c_dk * static_cast<double>(dim - k + 1) / static_cast<double>(k);
      c_rk = k <= radius ? c_rk * static_cast<double>(radius - k + 1) /
                               static_cast<double>(k)
                         : 0.0;
      pow2 *= 2.0;
    }
    total += pow2 * c_dk * c_rk;
  }
  return total;
}

LatticeCodec::LatticeCodec(std::size_t dim) : dim_(dim) {
  check_dim(dim);
  bits_ = static_cast<unsigned>(std::min<std::size_t>(32, 64 / dim));
  bias_ = std::uint64_t{1} << (bits_ - 1);
  mask_ = bits_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits_) - 1;
  origin_ = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    const std::uint64_t unit = std::uint64_t{1} << (bits_ * j);
    origin_ |= bias_ << (bits_ * j);
    offsets_[2 * j] = unit;
    offsets_[2 * j + 1] = ~unit + 1;  // -unit modulo 2^64
  }
}

std::uint64_t LatticeCodec::encode(const Position& x) const {
  if (x.dim() != dim_) {
    throw std::invalid_argument("position " + x.to_string() +
                                " has wrong dimension for this lattice");
  }
  std::uint64_t key = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (std::abs(x[j]) > max_radius()) {
      throw ResourceLimitError("coordinate " + std::to_string(x[j]) +
                               " exceeds the packed-key radius " +
                               std::to_string(max_radius()));
    }
    const auto field = static_cast<std::uint64_t>(static_cast<std::int64_t>(x[j]) +
                                                  static_cast<std::int64_t>(bias_));
    key |= field << (bits_ * j);
  }
  return key;
}

Position LatticeCodec::decode(std::uint64_t key) const {
  Position x(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    const auto field = (key >> (bits_ * j)) & mask_;
    x[j] = static_cast<int>(static_cast<std::int64_t>(field) -
                            static_cast<std::int64_t>(bias_));
  }
  return x;
}

std::int64_t LatticeCodec::squared_norm(std::uint64_t key) const noexcept {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    const auto c = static_cast<std::int64_t>((key >> (bits_ * j)) & mask_) -
                   static_cast<std::int64_t>(bias_);
    s += c * c;
  }
  return s;
}

}  // namespace qwalk
