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

#include <limits>
#include <string>

#include "ebcsi/channel.hpp"
#include "ebcsi/types.hpp"

namespace ebcsi {

enum class MaskPattern { comb, random };

std::string to_string(MaskPattern p);
MaskPattern parse_mask_pattern(const std::string &s);

// Fraction of subcarriers carrying pilots, e.g. 1/8.
struct PilotRatio {
    int num = 1;
    int den = 1;

    double value() const noexcept { return static_cast<double>(num) / den; }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    // Accepts "1/8", "1" or a decimal such as "0.125" (kept as a x/1e6 rational).
    static PilotRatio parse(const std::string &s);

    friend bool operator==(const PilotRatio &, const PilotRatio &) = default;
};

// N_p = round(ratio * n_sc); InvalidInput when that is 0 or exceeds n_sc.
int pilot_count(int n_sc, const PilotRatio &ratio);

// Binary M_t x N_sc observation matrix with exactly n_pilot ones per row.
struct ObservationMask {
    RMatrix data;
    int n_pilot = 0;
    MaskPattern pattern = MaskPattern::comb;

    Eigen::Index antennas() const noexcept { return data.rows(); }
    Eigen::Index subcarriers() const noexcept { return data.cols(); }
    bool full() const { return n_pilot == data.cols(); }
    // Mask flattened in the same order as flatten(H).
    RVector flat() const { return Eigen::Map<const RVector>(data.data(), data.size()); }
    // Stable textual identity of the observed pattern (hex SHA-256 prefix).
    std::string fingerprint() const;
};

ObservationMask make_mask(int m_t, int n_sc, int n_pilot, MaskPattern pattern = MaskPattern::comb, Seed seed = 0);
ObservationMask make_mask(int m_t, int n_sc, const PilotRatio &ratio, MaskPattern pattern = MaskPattern::comb,
                          Seed seed = 0);

struct NoiseSpec {
    double snr_db = std::numeric_limits<double>::infinity();
    Seed seed = 0;

    bool enabled() const noexcept { return snr_db != std::numeric_limits<double>::infinity(); }
    static NoiseSpec disabled() { return NoiseSpec{}; }

    friend bool operator==(const NoiseSpec &, const NoiseSpec &) = default;
};

// sigma^2 = mean(|H|^2) / 10^(snr_db / 10); 0 when noise is disabled.
double noise_variance(const CMatrix &h, double snr_db);

ChannelMatrix observe(const ChannelMatrix &h, const ObservationMask &mask);
CMatrix observe(const CMatrix &h, const ObservationMask &mask);

ChannelMatrix add_noise(const ChannelMatrix &h, const NoiseSpec &spec);
CMatrix add_noise(const CMatrix &h, const NoiseSpec &spec);
// Same draw as the NoiseSpec overload, with an explicit per-entry variance.
CMatrix add_noise(const CMatrix &h, double variance, Seed seed);

// h_x + a h_y
ChannelMatrix mix_interference(const ChannelMatrix &h_x, const ChannelMatrix &h_y, double a);

} // namespace ebcsi
