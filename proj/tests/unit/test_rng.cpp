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

#include <set>

#include <gtest/gtest.h>

#include "ebcsi/rng.hpp"

using namespace ebcsi;

TEST(DeriveSeed, DeterministicAndStreamSensitive) {
    EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
    EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {2}));
    EXPECT_NE(derive_seed(1, {}), derive_seed(1, {0}));
}

TEST(DeriveSeed, NoCollisionsOverSmallGrid) {
    std::set<Seed> seen;
    for (std::uint64_t a = 0; a < 64; ++a)
        for (std::uint64_t b = 0; b < 64; ++b)
            seen.insert(derive_seed(7, {a, b}));
    EXPECT_EQ(seen.size(), 64u * 64u);
}

TEST(FillCscg, MomentsMatchVariance) {
    auto rng = make_rng(3, {1});
    constexpr std::size_t n = 200000;
    std::vector<Complex> v(n);
    fill_cscg(rng, 2.5, v.data(), n);
    double re2 = 0.0, im2 = 0.0, cross = 0.0;
    Complex mean{};
    for (const auto &z : v) {
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
        cross += z.real() * z.imag();
        mean += z;
    }
    // Each part carries half the variance; parts are uncorrelated and zero mean.
    EXPECT_NEAR(re2 / n, 1.25, 0.02);
    EXPECT_NEAR(im2 / n, 1.25, 0.02);
    EXPECT_NEAR(cross / n, 0.0, 0.01);
    EXPECT_NEAR(std::abs(mean / static_cast<double>(n)), 0.0, 0.01);
}
