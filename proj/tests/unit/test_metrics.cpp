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

#include <random>

#include <gtest/gtest.h>

#include "ebcsi/channel.hpp"
#include "ebcsi/error.hpp"
#include "ebcsi/metrics.hpp"
#include "test_util.hpp"

using namespace ebcsi;
using ebcsi::testing::random_cmatrix;
using ebcsi::testing::random_cvector;

TEST(CosineSimilarity, SelfIsOne) {
    auto rng = make_rng(1, {1});
    const CVector h = random_cvector(rng, 64);
    EXPECT_NEAR(cosine_similarity(h, h), 1.0, 1e-15);
}

TEST(CosineSimilarity, ComplexScaleInvariant) {
    auto rng = make_rng(1, {2});
    const CVector h = random_cvector(rng, 64);
    for (double beta : {0.01, 1.0, -3.0, 250.0})
        EXPECT_NEAR(cosine_similarity(h, CVector(Complex(0.0, beta) * h)), 1.0, 1e-12);
}

TEST(CosineSimilarity, OrthogonalIsZero) {
    CVector a(2), b(2);
    a << Complex(1, 0), Complex(0, 0);
    b << Complex(0, 0), Complex(0, 3);
    EXPECT_EQ(cosine_similarity(a, b), 0.0);
}

TEST(CosineSimilarity, MatchesHandValue) {
    CVector a(2), b(2);
    a << Complex(1, 0), Complex(1, 0);
    b << Complex(1, 0), Complex(0, 1);
    // |1 + j| / (sqrt 2 sqrt 2) = sqrt(2) / 2
    EXPECT_NEAR(cosine_similarity(a, b), std::sqrt(2.0) / 2.0, 1e-15);
}

TEST(CosineSimilarity, ZeroVectorRejected) {
    CVector a = CVector::Zero(3), b = CVector::Ones(3);
    EXPECT_THROW(cosine_similarity(a, b), InvalidInput);
    EXPECT_THROW(cosine_similarity(b, a), InvalidInput);
    EXPECT_THROW(cosine_similarity(CVector::Ones(2), b), InvalidInput);
}

TEST(CosineSimilarity, MatrixFormFlattens) {
    auto rng = make_rng(1, {3});
    const CMatrix a = random_cmatrix(rng, 4, 5), b = random_cmatrix(rng, 4, 5);
    EXPECT_DOUBLE_EQ(cosine_similarity(a, b), cosine_similarity(flatten(a), flatten(b)));
}

TEST(Nmse, Examples) {
    auto rng = make_rng(1, {4});
    const CMatrix h = random_cmatrix(rng, 8, 8);
    EXPECT_EQ(nmse(h, h), 0.0);
    EXPECT_EQ(nmse(h, CMatrix::Zero(8, 8)), 1.0);
    EXPECT_EQ(nmse(h, 2.0 * h), 1.0);
    EXPECT_NEAR(to_db(nmse(h, 0.9 * h)), -20.0, 1e-9);
}

TEST(Nmse, Errors) {
    EXPECT_THROW(nmse(CMatrix::Zero(2, 2), CMatrix::Ones(2, 2)), InvalidInput);
    EXPECT_THROW(nmse(CMatrix::Ones(2, 2), CMatrix::Ones(2, 3)), InvalidInput);
}

TEST(Aar, PerfectPredictionIsMatchedBound) {
    auto rng = make_rng(1, {5});
    const CMatrix h = random_cmatrix(rng, 8, 6);
    const double sigma2 = 0.3;
    double expected = 0.0;
    for (Eigen::Index k = 0; k < h.cols(); ++k)
        expected += std::log2(1.0 + h.col(k).squaredNorm() / sigma2);
    expected /= static_cast<double>(h.cols());
    EXPECT_NEAR(aar(h, h, sigma2), expected, 1e-12);
    EXPECT_NEAR(aar_upper_bound(h, sigma2), expected, 1e-12);
}

TEST(Aar, PredictionScaleInvariant) {
    auto rng = make_rng(1, {6});
    const CMatrix h = random_cmatrix(rng, 8, 6);
    const CMatrix est = h + random_cmatrix(rng, 8, 6, 0.5);
    const double base = aar(h, est, 0.1);
    for (Complex beta : {Complex(2, 0), Complex(0, -0.01), Complex(-3, 4)})
        EXPECT_NEAR(aar(h, CMatrix(beta * est), 0.1), base, 1e-12);
}

TEST(Aar, OrthogonalPredictionIsZero) {
    CMatrix h(2, 2), est(2, 2);
    h << 1, 0, 0, 1;
    est << 0, 2, 3, 0;
    EXPECT_EQ(aar(h, est, 1.0), 0.0);
}

TEST(Aar, Errors) {
    CMatrix h = CMatrix::Ones(2, 2), est = CMatrix::Ones(2, 2);
    est.col(1).setZero();
    EXPECT_THROW(aar(h, est, 1.0), InvalidInput);
    EXPECT_THROW(aar(h, h, 0.0), InvalidInput);
    EXPECT_THROW(aar(h, CMatrix::Ones(2, 3), 1.0), InvalidInput);
}

TEST(CrossMetric, ScaledTruth) {
    auto rng = make_rng(1, {7});
    const CMatrix h = random_cmatrix(rng, 6, 6);
    const Complex beta(0.7, -0.4);
    const CMatrix est = beta * h;
    EXPECT_NEAR(cosine_similarity(h, est), 1.0, 1e-12);
    EXPECT_NEAR(aar(h, est, 0.2), aar_upper_bound(h, 0.2), 1e-12);
    EXPECT_NEAR(nmse(h, est), std::norm(beta - 1.0), 1e-12);
}

TEST(EmpiricalCdf, SingleValue) {
    const auto cdf = empirical_cdf({5.0});
    ASSERT_EQ(cdf.size(), 1u);
    EXPECT_EQ(cdf[0], (CdfPoint{5.0, 1.0}));
}

TEST(EmpiricalCdf, MedianOfFour) {
    const auto cdf = empirical_cdf({4, 1, 3, 2});
    EXPECT_EQ(cdf_quantile(cdf, 0.5), 2.0);
    EXPECT_EQ(cdf_quantile(cdf, 1.0), 4.0);
    EXPECT_EQ(cdf_quantile(cdf, 0.01), 1.0);
}

TEST(EmpiricalCdf, RightContinuousStepsAndTies) {
    const auto cdf = empirical_cdf({2, 1, 2, 3});
    ASSERT_EQ(cdf.size(), 3u);
    EXPECT_EQ(cdf[0], (CdfPoint{1.0, 0.25}));
    EXPECT_EQ(cdf[1], (CdfPoint{2.0, 0.75}));
    EXPECT_EQ(cdf[2], (CdfPoint{3.0, 1.0}));
    EXPECT_EQ(cdf_at(cdf, 0.5), 0.0);
    EXPECT_EQ(cdf_at(cdf, 2.0), 0.75);
    EXPECT_EQ(cdf_at(cdf, 2.5), 0.75);
    EXPECT_EQ(cdf_at(cdf, 9.0), 1.0);
}

TEST(EmpiricalCdf, Errors) {
    EXPECT_THROW(empirical_cdf({}), InvalidInput);
    const auto cdf = empirical_cdf({1.0});
    EXPECT_THROW(cdf_quantile(cdf, 0.0), InvalidInput);
    EXPECT_THROW(cdf_quantile(cdf, 1.5), InvalidInput);
}

TEST(EmpiricalCdf, UniformSamplesTrackIdentity) {
    auto rng = make_rng(1, {8});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(10000);
    for (auto &x : v)
        x = u(rng);
    const auto cdf = empirical_cdf(v);
    // Kolmogorov distance; the DKW bound puts 0.03 far above the 1e-6 tail at n = 1e4.
    double d = 0.0, prev = 0.0;
    for (const auto &p : cdf) {
        d = std::max({d, std::abs(p.probability - p.value), std::abs(prev - p.value)});
        prev = p.probability;
    }
    EXPECT_LT(d, 0.03);
}
