// Copyright 2026 The mcmcb Authors
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

#ifndef MCMCB_BITS_HPP
#define MCMCB_BITS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace mcmcb {

using Rng = std::mt19937_64;

/// Parity of the bitwise AND, i.e. the GF(2) dot product.
inline int dot2(uint64_t a, uint64_t b) { return std::popcount(a & b) & 1; }

inline double parity_sign(uint64_t a, uint64_t b) { return dot2(a, b) ? -1.0 : 1.0; }

/// Mixes a base seed with a stream index (splitmix64 finalizer).
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
  uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// n-character bit string where character j is bit j.
std::string bits_to_string(uint32_t bits, std::size_t n);
uint32_t bits_from_string(std::string_view s);

}  // namespace mcmcb

#endif  // MCMCB_BITS_HPP
