// Copyright 2026 The mermin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// Bit-ordering helpers shared by every module.
///
/// Convention: qubit 0 is the leftmost character of an outcome string and the
/// most significant bit of an amplitude index. Prime masks over parties use
/// the same rule (party 0 is the leftmost character / most significant bit).

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "mermin/error.hpp"

namespace mermin {

using Index = std::uint64_t;

inline constexpr std::size_t kMaxStateQubits = 10;

[[nodiscard]] constexpr Index dimension(std::size_t n_qubits) noexcept {
    return Index{1} << n_qubits;
}

/// Position of qubit `q` inside an index over `n` qubits.
[[nodiscard]] constexpr std::size_t bit_position(std::size_t q, std::size_t n) noexcept {
    return n - 1 - q;
}

[[nodiscard]] constexpr Index qubit_mask(std::size_t q, std::size_t n) noexcept {
    return Index{1} << bit_position(q, n);
}

[[nodiscard]] constexpr bool bit_of(Index index, std::size_t q, std::size_t n) noexcept {
    return ((index >> bit_position(q, n)) & 1U) != 0;
}

[[nodiscard]] constexpr int parity_sign(Index index) noexcept {
    return (std::popcount(index) % 2 == 0) ? 1 : -1;
}

[[nodiscard]] inline std::string to_bitstring(Index index, std::size_t n) {
    std::string out(n, '0');
    for (std::size_t q = 0; q < n; ++q) {
        if (bit_of(index, q, n)) {
            out[q] = '1';
        }
    }
    return out;
}

[[nodiscard]] inline Index from_bitstring(std::string_view bits) {
    if (bits.empty() || bits.size() > 63) {
        throw Error("bitstring length must be in 1..63");
    }
    Index out = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error("bitstring contains a character other than 0/1: '" +
                        std::string(bits) + "'");
        }
        out = (out << 1U) | static_cast<Index>(c == '1');
    }
    return out;
}

} // namespace mermin
