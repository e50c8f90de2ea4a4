/*
Copyright (c) 2026 The scgraph authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <cstdint>

namespace scg {

// 64-bit avalanche finalizer (splitmix64 style). Every source of
// pseudo-randomness in the project derives from this function so that
// results are bit-exact across platforms.
constexpr std::uint64_t hash64(std::uint64_t x) {
  std::uint64_t y = x + 0x9E3779B97F4A7C15ULL;
  y = (y ^ (y >> 30)) * 0xBF58476D1CE4E5B9ULL;
  y = (y ^ (y >> 27)) * 0x94D049BB133111EBULL;
  return y ^ (y >> 31);
}

// Counter-mode stream: value i of the stream identified by `seed`.
constexpr std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t i) {
  return hash64(hash64(seed) * 31 + hash64(i));
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double hash_unit(std::uint64_t seed, std::uint64_t i) {
  return static_cast<double>(hash_counter(seed, i) >> 11) * 0x1.0p-53;
}

}  // namespace scg
