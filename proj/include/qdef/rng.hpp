// Copyright 2026 The qdef Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "matrix.hpp"

namespace qdef {

using Rng = std::mt19937_64;

/// Domain tags keep substreams for different purposes disjoint.
enum class StreamTag : std::uint64_t {
    SampleMatrix = 0x5a11,
    SampleZeroSubset = 0x5a12,
    Trial = 0x7e1a,
    Matrix = 0x3a7c,
    Oracle = 0x0dac,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Hashes a seed and a path of stream coordinates into a child seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t p : path) {
        h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    return derive_seed(seed, {static_cast<std::uint64_t>(tag), index});
}

inline Rng make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    return Rng(derive_seed(seed, tag, index));
}

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
inline Complex complex_gaussian(Rng &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

} // namespace qdef
