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

#include "ebcsi/rng.hpp"

#include <cmath>

namespace ebcsi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

Seed derive_seed(Seed base, std::initializer_list<std::uint64_t> stream) {
    std::uint64_t h = splitmix64(base);
    for (auto word : stream)
        h = splitmix64(h ^ splitmix64(word + 0x632BE59BD9B4E019ULL));
    return h;
}

void fill_cscg(Rng &rng, double variance, Complex *out, std::size_t n) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        out[i] = Complex(re, im);
    }
}

} // namespace ebcsi
