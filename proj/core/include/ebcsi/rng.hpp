// SPDX-License-Identifier: Apache-2.0
//
// ebcsi - environment subspace basis toolkit for partial-to-whole CSI prediction
// Copyright (C) 2026 The ebcsi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "ebcsi/types.hpp"

namespace ebcsi {

using Rng = std::mt19937_64;

// Mixes a base seed with a sequence of stream identifiers (splitmix64 finalizer
// chained per word). Used to give every cell, snapshot and trial its own
// independent, schedule-independent stream.
Seed derive_seed(Seed base, std::initializer_list<std::uint64_t> stream);

inline Rng make_rng(Seed base, std::initializer_list<std::uint64_t> stream) {
    return Rng(derive_seed(base, stream));
}

// Fills `out` with iid circularly symmetric complex Gaussian samples of
// per-entry variance `variance` (real and imaginary parts each variance/2).
void fill_cscg(Rng &rng, double variance, Complex *out, std::size_t n);

} // namespace ebcsi
