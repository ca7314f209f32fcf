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

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk::detail {

/// Conditional shift on packed storage: row i's component a moves from key[i]
/// to key[i] + offset(a). Every component stream stays sorted under the
/// translation, so the output is a |D|-way merge. Rows rejected by `keep` are
/// dropped.
template <typename T, typename Keep>
void shift_merge(const LatticeCodec& codec, std::span<const std::uint64_t> keys,
                 std::span<const T> rows, std::vector<std::uint64_t>& out_keys,
                 std::vector<T>& out_rows, Keep&& keep) {
  constexpr std::uint64_t kDone = std::numeric_limits<std::uint64_t>::max();
  const std::size_t coin = codec.coin_size();
  const std::size_t n = keys.size();

  std::array<std::size_t, 2 * kMaxDim> idx{};
  std::array<std::uint64_t, 2 * kMaxDim> head{};
  std::array<std::uint64_t, 2 * kMaxDim> off{};
  for (std::size_t a = 0; a < coin; ++a) {
    off[a] = codec.offset(Direction(a));
    head[a] = n > 0 ? keys[0] + off[a] : kDone;
  }

  out_keys.clear();
  out_rows.clear();
  out_keys.reserve(n + n / 2 + coin);
  out_rows.reserve(out_keys.capacity() * coin);

  std::array<T, 2 * kMaxDim> row{};
  for (;;) {
    std::uint64_t next = kDone;
    for (std::size_t a = 0; a < coin; ++a) next = head[a] < next ? head[a] : next;
    if (next == kDone) break;
    for (std::size_t a = 0; a < coin; ++a) {
      if (head[a] == next) {
        row[a] = rows[idx[a] * coin + a];
        ++idx[a];
        head[a] = idx[a] < n ? keys[idx[a]] + off[a] : kDone;
      } else {
        row[a] = T{};
      }
    }
    if (keep(std::span<const T>(row.data(), coin))) {
      out_keys.push_back(next);
      out_rows.insert(out_rows.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(coin));
    }
  }
}

}  // namespace qwalk::detail
