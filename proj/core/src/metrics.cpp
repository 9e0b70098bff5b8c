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

#include "ebcsi/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ebcsi/error.hpp"

namespace ebcsi {

double cosine_similarity(const CVector &h1, const CVector &h2) {
    if (h1.size() != h2.size())
        throw InvalidInput("cosine similarity: length mismatch");
    const double n1 = h1.norm();
    const double n2 = h2.norm();
    if (!(n1 > 0.0) || !(n2 > 0.0))
        throw InvalidInput("cosine similarity is undefined for zero vectors");
    return std::min(1.0, std::abs(h1.dot(h2)) / (n1 * n2));
}

double cosine_similarity(const CMatrix &h1, const CMatrix &h2) {
    if (h1.rows() != h2.rows() || h1.cols() != h2.cols())
        throw InvalidInput("cosine similarity: shape mismatch");
    return cosine_similarity(CVector(Eigen::Map<const CVector>(h1.data(), h1.size())),
                             CVector(Eigen::Map<const CVector>(h2.data(), h2.size())));
}

double nmse(const CMatrix &truth, const CMatrix &estimate) {
    if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
        throw InvalidInput("nmse: shape mismatch");
    const double denom = truth.squaredNorm();
    if (!(denom > 0.0))
        throw InvalidInput("nmse is undefined for an all-zero truth");
    return (truth - estimate).squaredNorm() / denom;
}

double to_db(double linear) {
    return 10.0 * std::log10(linear);
}

double aar(const CMatrix &truth, const CMatrix &estimate, double sigma2) {
    if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
        throw InvalidInput("aar: shape mismatch");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw InvalidInput("aar needs a positive finite noise power");
    if (truth.cols() == 0)
        throw InvalidInput("aar needs at least one subcarrier");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < truth.cols(); ++k) {
        const double pred_power = estimate.col(k).squaredNorm();
        if (!(pred_power > 0.0))
            throw InvalidInput("aar: predicted channel has an all-zero subcarrier column");
        const double gain = std::norm(estimate.col(k).dot(truth.col(k)));
        sum += std::log2(1.0 + gain / (pred_power * sigma2));
    }
    return sum / static_cast<double>(truth.cols());
}

double aar_upper_bound(const CMatrix &truth, double sigma2) {
    return aar(truth, truth, sigma2);
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
    if (values.empty())
        throw InvalidInput("empirical CDF of an empty sample");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    std::vector<CdfPoint> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i])
            continue;
        out.push_back(CdfPoint{values[i], static_cast<double>(i + 1) / n});
    }
    return out;
}

double cdf_quantile(const std::vector<CdfPoint> &cdf, double p) {
    if (cdf.empty())
        throw InvalidInput("quantile of an empty CDF");
    if (!(p > 0.0 && p <= 1.0))
        throw InvalidInput("quantile level must lie in (0, 1]");
    for (const auto &pt : cdf)
        if (pt.probability >= p)
            return pt.value;
    return cdf.back().value;
}

double cdf_at(const std::vector<CdfPoint> &cdf, double x) {
    double f = 0.0;
    for (const auto &pt : cdf) {
        if (pt.value > x)
            break;
        f = pt.probability;
    }
    return f;
}

} // namespace ebcsi
