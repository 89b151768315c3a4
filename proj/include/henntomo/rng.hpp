// Copyright 2026 The henntomo Authors
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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace henntomo {

using Rng = std::mt19937_64;

/// Stream tags for derive_seed, one per independent consumer of randomness in a realization.
enum class Stream : std::uint32_t {
    kHamiltonian = 1,
    kInitialStates = 2,
    kNoise = 3,
    kTraining = 4,
};

/// Counter-based seed split: the result depends only on (master, path), never on call order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Uniform draw in [0, 1).
inline double uniform01(Rng &rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace henntomo
