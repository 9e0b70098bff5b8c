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

#include <nlohmann/json.hpp>

#include "ebcsi/scene.hpp"
#include "ebcsi/types.hpp"

namespace ebcsi {

// Uniform planar array; element (p, q) sits at row p, column q and is stored at
// index p * m_cols + q.
struct ArrayConfig {
    int m_rows = 8;
    int m_cols = 4;
    double spacing_wavelengths = 0.5;

    int elements() const noexcept { return m_rows * m_cols; }
    void validate() const;

    friend bool operator==(const ArrayConfig &, const ArrayConfig &) = default;
};

struct OfdmConfig {
    int n_subcarriers = 32;
    double bandwidth_hz = 25.0e6;
    double carrier_hz = 6.5e9;

    void validate() const;

    friend bool operator==(const OfdmConfig &, const OfdmConfig &) = default;
};

struct ChannelMeta {
    ArrayConfig array;
    OfdmConfig ofdm;
    Coords coords;
    double time = 0.0;
};

// Space-frequency CSI, M_t x N_sc.
struct ChannelMatrix {
    CMatrix data;
    ChannelMeta meta;

    Eigen::Index antennas() const noexcept { return data.rows(); }
    Eigen::Index subcarriers() const noexcept { return data.cols(); }
};

// Unit-modulus UPA response; element (p, q) has phase
// 2 pi d (p sin(theta) + q cos(theta) sin(phi)).
CVector steering_vector(double theta, double phi, const ArrayConfig &array);

// Column k (1-based) = sum_l sqrt(a_l / N_sc) exp(j (2 pi k tau_l B / N_sc + psi_l)) a(theta_l, phi_l).
ChannelMatrix channel_from_paths(const PathSet &paths, const ArrayConfig &array, const OfdmConfig &ofdm);

// Channel seen by a user at `coords` and `time`.
ChannelMatrix channel_at(const SceneGrid &scene, const Coords &coords, double time, const ArrayConfig &array,
                         const OfdmConfig &ofdm);

// Column-major (subcarrier-major) stacking into a length M_t * N_sc vector.
CVector flatten(const CMatrix &h);
inline CVector flatten(const ChannelMatrix &h) { return flatten(h.data); }
CMatrix unflatten(const CVector &h_flat, Eigen::Index antennas, Eigen::Index subcarriers);

nlohmann::json to_json(const ArrayConfig &a);
nlohmann::json to_json(const OfdmConfig &o);
ArrayConfig array_config_from_json(const nlohmann::json &j);
OfdmConfig ofdm_config_from_json(const nlohmann::json &j);

} // namespace ebcsi
