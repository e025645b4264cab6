// Copyright 2026 The cfqkd Authors
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


#ifndef CFQKD_RNG_H
#define CFQKD_RNG_H

#include <cstdint>
#include <random>

namespace cfqkd {

/// SplitMix64 finalizer. Used to derive independent substream seeds from (root seed, index).
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// The generator driving one batch of rounds.
using RoundRng = std::mt19937_64;

inline RoundRng substream(uint64_t root_seed, uint64_t index) {
    return RoundRng(mix64(root_seed ^ mix64(index)));
}

inline int draw_bit(RoundRng &rng) {
    return static_cast<int>(rng() >> 63);
}

}  // namespace cfqkd

#endif
