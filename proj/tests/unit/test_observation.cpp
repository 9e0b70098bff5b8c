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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ebcsi/error.hpp"
#include "ebcsi/observation.hpp"
#include "test_util.hpp"

using namespace ebcsi;
using ebcsi::testing::random_cmatrix;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ChannelMatrix as_channel(CMatrix m) {
    return ChannelMatrix{std::move(m), {}};
}

} // namespace

TEST(PilotCount, RoundsRatioTimesSubcarriers) {
    EXPECT_EQ(pilot_count(208, PilotRatio{1, 4}), 52);
    EXPECT_EQ(pilot_count(208, PilotRatio{1, 8}), 26);
    EXPECT_EQ(pilot_count(208, PilotRatio{1, 16}), 13);
    EXPECT_EQ(pilot_count(208, PilotRatio{1, 32}), 7);
    EXPECT_EQ(pilot_count(32, PilotRatio{1, 1}), 32);
    EXPECT_THROW(pilot_count(8, PilotRatio{1, 32}), InvalidInput);
}

TEST(PilotRatio, Parse) {
    EXPECT_EQ(PilotRatio::parse("1/8"), (PilotRatio{1, 8}));
    EXPECT_EQ(PilotRatio::parse("2/16"), (PilotRatio{1, 8}));
    EXPECT_EQ(PilotRatio::parse("1"), (PilotRatio{1, 1}));
    EXPECT_EQ(PilotRatio::parse("0.125"), (PilotRatio{1, 8}));
    EXPECT_EQ(PilotRatio::parse("1/8").str(), "1/8");
    for (const char *bad : {"", "0", "0/8", "9/8", "1/0", "-1/8", "abc", "1/8x", "1.5"})
        EXPECT_THROW(PilotRatio::parse(bad), InvalidInput) << bad;
}

TEST(ObservationMask, CombExample) {
    const auto m = make_mask(2, 8, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 8; ++c)
            EXPECT_EQ(m.data(r, c), (c == 0 || c == 4) ? 1.0 : 0.0) << r << "," << c;
    EXPECT_EQ(m.n_pilot, 2);
    EXPECT_FALSE(m.full());
    EXPECT_TRUE(make_mask(2, 8, 8).full());
}

TEST(ObservationMask, CombSharedAcrossAntennasAndEvenlySpaced) {
    const auto m = make_mask(32, 32, PilotRatio{1, 8});
    ASSERT_EQ(m.n_pilot, 4);
    for (int c = 0; c < 32; ++c) {
        const bool pilot = c % 8 == 0;
        for (int r = 0; r < 32; ++r)
            EXPECT_EQ(m.data(r, c), pilot ? 1.0 : 0.0);
    }
}

TEST(ObservationMask, RandomPatternRowCountsAndSeeding) {
    const auto a = make_mask(32, 32, 5, MaskPattern::random, 7);
    const auto b = make_mask(32, 32, 5, MaskPattern::random, 7);
    const auto c = make_mask(32, 32, 5, MaskPattern::random, 8);
    EXPECT_EQ(a.data, b.data);
    EXPECT_NE(a.data, c.data);
    EXPECT_EQ(a.fingerprint(), b.fingerprint());
    EXPECT_NE(a.fingerprint(), c.fingerprint());
    for (int r = 0; r < 32; ++r) {
        EXPECT_EQ(a.data.row(r).sum(), 5.0);
        for (int k = 0; k < 32; ++k)
            EXPECT_TRUE(a.data(r, k) == 0.0 || a.data(r, k) == 1.0);
    }
}

TEST(ObservationMask, InvalidArguments) {
    EXPECT_THROW(make_mask(0, 8, 1), InvalidInput);
    EXPECT_THROW(make_mask(2, 0, 1), InvalidInput);
    EXPECT_THROW(make_mask(2, 8, 0), InvalidInput);
    EXPECT_THROW(make_mask(2, 8, 9), InvalidInput);
    EXPECT_EQ(parse_mask_pattern("random"), MaskPattern::random);
    EXPECT_THROW(parse_mask_pattern("dense"), InvalidInput);
}

TEST(Observe, MaskingProperties) {
    auto rng = make_rng(3, {});
    const CMatrix h = random_cmatrix(rng, 4, 16);
    const auto full = make_mask(4, 16, 16);
    EXPECT_EQ(observe(h, full), h);

    const auto m = make_mask(4, 16, 4);
    const CMatrix h0 = observe(h, m);
    EXPECT_EQ(observe(h0, m), h0);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 16; ++c) {
            if (m.data(r, c) == 0.0)
                EXPECT_EQ(h0(r, c), Complex(0.0, 0.0));
            else
                EXPECT_EQ(h0(r, c), h(r, c));
        }
    EXPECT_LE(h0.norm(), h.norm());
    EXPECT_THROW(observe(h, make_mask(4, 8, 4)), InvalidInput);
}

TEST(AddNoise, InfiniteSnrLeavesChannelUnchanged) {
    auto rng = make_rng(4, {});
    const CMatrix h = random_cmatrix(rng, 8, 8);
    EXPECT_EQ(add_noise(h, NoiseSpec{kInf, 1}), h);
    EXPECT_EQ(add_noise(h, NoiseSpec::disabled()), h);
    EXPECT_EQ(noise_variance(h, kInf), 0.0);
}

TEST(AddNoise, EmpiricalPowerMatchesSnr) {
    auto rng = make_rng(5, {});
    const CMatrix h = random_cmatrix(rng, 100, 1000);
    const double sigma2 = noise_variance(h, 0.0);
    EXPECT_NEAR(sigma2, h.squaredNorm() / 1e5, 1e-12);
    const CMatrix n = add_noise(h, NoiseSpec{0.0, 9}) - h;
    const double measured = n.squaredNorm() / static_cast<double>(n.size());
    EXPECT_NEAR(measured / sigma2, 1.0, 0.02);

    for (double snr : {-5.0, 10.0, 20.0}) {
        const CMatrix nn = add_noise(h, NoiseSpec{snr, 11}) - h;
        const double snr_measured = 10.0 * std::log10(h.squaredNorm() / nn.squaredNorm());
        EXPECT_NEAR(snr_measured, snr, 0.2);
    }
}

TEST(AddNoise, SeedDeterminismAndIndependence) {
    auto rng = make_rng(6, {});
    const CMatrix h = random_cmatrix(rng, 50, 200);
    EXPECT_EQ(add_noise(h, NoiseSpec{3.0, 1}), add_noise(h, NoiseSpec{3.0, 1}));
    const CMatrix n1 = add_noise(h, NoiseSpec{3.0, 1}) - h;
    const CMatrix n2 = add_noise(h, NoiseSpec{3.0, 2}) - h;
    const Complex corr = (n1.array() * n2.array().conjugate()).sum();
    EXPECT_LT(std::abs(corr) / (n1.norm() * n2.norm()), 0.01);
    // Noise does not depend on the signal draw.
    const CMatrix n3 = add_noise(CMatrix(2.0 * h), noise_variance(h, 3.0), 1) - 2.0 * h;
    EXPECT_LT((n3 - n1).norm(), 1e-12 * n1.norm());
}

TEST(AddNoise, InvalidInputs) {
    const CMatrix zero = CMatrix::Zero(4, 4);
    EXPECT_THROW(add_noise(zero, NoiseSpec{10.0, 1}), InvalidInput);
    EXPECT_EQ(add_noise(zero, NoiseSpec{kInf, 1}), zero);
    EXPECT_THROW(noise_variance(CMatrix::Ones(2, 2), std::nan("")), InvalidInput);
    EXPECT_THROW(noise_variance(CMatrix::Ones(2, 2), -kInf), InvalidInput);
    EXPECT_THROW(add_noise(zero, -1.0, 1), InvalidInput);
    EXPECT_EQ(add_noise(zero, 0.0, 1), zero);
}

TEST(MixInterference, LinearCombination) {
    auto rng = make_rng(7, {});
    const auto hx = as_channel(random_cmatrix(rng, 4, 8));
    const auto hy = as_channel(random_cmatrix(rng, 4, 8));
    EXPECT_EQ(mix_interference(hx, hy, 0.0).data, hx.data);
    EXPECT_LT((mix_interference(hx, hy, 1.0).data - (hx.data + hy.data)).norm(), 1e-15);
    EXPECT_LT((mix_interference(hx, hy, 0.5).data - (hx.data + 0.5 * hy.data)).norm(), 1e-15);
    const auto hx_two = as_channel(CMatrix::Constant(1, 1, Complex(1.0, 0.0)));
    const auto hy_two = as_channel(CMatrix::Constant(1, 1, Complex(0.0, 2.0)));
    EXPECT_EQ(mix_interference(hx_two, hy_two, 0.25).data(0, 0), Complex(1.0, 0.5));
    EXPECT_THROW(mix_interference(hx, hy, 1.1), InvalidInput);
    EXPECT_THROW(mix_interference(hx, hy, -0.1), InvalidInput);
    EXPECT_THROW(mix_interference(hx, as_channel(CMatrix::Zero(4, 4)), 0.5), InvalidInput);
}
