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

#include <vector>

#include "ebcsi/types.hpp"

namespace ebcsi {

// |h1^H h2| / (||h1|| ||h2||), in [0, 1]. InvalidInput for zero vectors.
double cosine_similarity(const CVector &h1, const CVector &h2);
double cosine_similarity(const CMatrix &h1, const CMatrix &h2);

// ||H - H_hat||_F^2 / ||H||_F^2.
double nmse(const CMatrix &truth, const CMatrix &estimate);
double to_db(double linear);

// Average achievable rate with matched beamforming on the predicted channel,
// (1/N_sc) sum_k log2(1 + |h_hat_k^H h_k|^2 / (||h_hat_k||^2 sigma^2)).
double aar(const CMatrix &truth, const CMatrix &estimate, double sigma2);
// AAR with perfect CSI, the matched-beamforming upper bound.
double aar_upper_bound(const CMatrix &truth, double sigma2);

struct CdfPoint {
    double value = 0.0;
    double probability = 0.0;

    friend bool operator==(const CdfPoint &, const CdfPoint &) = default;
};

// Right-continuous step function: one point per distinct value, sorted, with
// probability = fraction of samples <= value.
std::vector<CdfPoint> empirical_cdf(std::vector<double> values);

// Smallest value v with F(v) >= p, p in (0, 1].
double cdf_quantile(const std::vector<CdfPoint> &cdf, double p);

// F(x) for the step function.
double cdf_at(const std::vector<CdfPoint> &cdf, double x);

} // namespace ebcsi
