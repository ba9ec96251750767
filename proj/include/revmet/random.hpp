// Copyright 2026 The revmet Authors
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

// Seeded random instances for sweeps and property tests.

#ifndef REVMET_RANDOM_HPP_
#define REVMET_RANDOM_HPP_

#include <cstddef>
#include <random>

#include "revmet/core.hpp"

namespace revmet {

using Rng = std::mt19937_64;

/// Haar-random unitary (QR of a complex Ginibre matrix with the phase fix).
Matrix random_unitary(std::size_t dim, Rng& rng);

/// Random Hermitian matrix rescaled to unit spectral norm.
HermitianOperator random_hermitian(std::size_t dim, Rng& rng);

/// Uniformly random pure state.
StateVector random_state(std::size_t dim, Rng& rng);

/// Random full-rank density matrix (Hilbert-Schmidt measure).
DensityOperator random_density(std::size_t dim, Rng& rng);

/// Uniform point on the unit sphere.
Eigen::Vector3d random_direction(Rng& rng);

/// Random channel with `count` Kraus operators, taken from the first rows of a
/// Haar unitary on dim·count dimensions.
KrausChannel random_channel(std::size_t dim, std::size_t count, Rng& rng);

}  // namespace revmet

#endif  // REVMET_RANDOM_HPP_
