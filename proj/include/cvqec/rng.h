// Copyright 2026 The cvqec Authors
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

#ifndef CVQEC_RNG_H
#define CVQEC_RNG_H

#include <cstdint>
#include <random>

namespace cvqec {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent generator for (seed, stream, index). Streams separate experiment cells,
/// indices separate chunks of trials, so results never depend on how chunks are scheduled.
inline Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t key = splitmix64(seed);
    key = splitmix64(key ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
    key = splitmix64(key ^ splitmix64(index + 0x8CB92BA72F3D8DD7ULL));
    return Rng(key);
}

}  // namespace cvqec

#endif
