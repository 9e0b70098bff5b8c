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

#include "ebcsi/channel.hpp"

#include <cmath>

#include "ebcsi/error.hpp"

namespace ebcsi {

void ArrayConfig::validate() const {
    if (m_rows < 1 || m_cols < 1)
        throw ConfigError("array needs at least one row and one column");
    if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
        throw ConfigError("element spacing must be positive");
}

void OfdmConfig::validate() const {
    if (n_subcarriers < 1)
        throw ConfigError("need at least one subcarrier");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw ConfigError("bandwidth must be positive");
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
        throw ConfigError("carrier frequency must be positive");
}

CVector steering_vector(double theta, double phi, const ArrayConfig &array) {
    array.validate();
    constexpr double tol = 1e-12;
    if (!(theta >= -kPi / 2.0 - tol && theta <= kPi / 2.0 + tol))
        throw InvalidInput("elevation outside [-pi/2, pi/2]");
    if (!(phi >= -tol && phi < kTwoPi + tol))
        throw InvalidInput("azimuth outside [0, 2pi)");

    const double st = std::sin(theta);
    const double ct_sp = std::cos(theta) * std::sin(phi);
    const double k = kTwoPi * array.spacing_wavelengths;
    CVector a(array.elements());
    for (int p = 0; p < array.m_rows; ++p)
        for (int q = 0; q < array.m_cols; ++q)
            a(p * array.m_cols + q) = std::polar(1.0, k * (p * st + q * ct_sp));
    return a;
}

ChannelMatrix channel_from_paths(const PathSet &paths, const ArrayConfig &array, const OfdmConfig &ofdm) {
    if (paths.empty())
        throw InvalidInput("channel_from_paths needs at least one path");
    array.validate();
    ofdm.validate();

    const int n_sc = ofdm.n_subcarriers;
    ChannelMatrix h;
    h.meta.array = array;
    h.meta.ofdm = ofdm;
    h.data = CMatrix::Zero(array.elements(), n_sc);

    CVector freq(n_sc);
    for (const auto &p : paths) {
        if (!(p.power > 0.0))
            throw InvalidInput("path power must be positive");
        const CVector a = steering_vector(p.elevation, p.azimuth, array);
        const double amp = std::sqrt(p.power / n_sc);
        const double step = kTwoPi * p.delay_s * ofdm.bandwidth_hz / n_sc;
        for (int k = 1; k <= n_sc; ++k)
            freq(k - 1) = std::polar(amp, step * k + p.phase);
        h.data.noalias() += a * freq.transpose();
    }
    return h;
}

ChannelMatrix channel_at(const SceneGrid &scene, const Coords &coords, double time, const ArrayConfig &array,
                         const OfdmConfig &ofdm) {
    auto h = channel_from_paths(location_paths(scene, coords, time), array, ofdm);
    h.meta.coords = coords;
    h.meta.time = time;
    return h;
}

CVector flatten(const CMatrix &h) {
    return Eigen::Map<const CVector>(h.data(), h.size());
}

CMatrix unflatten(const CVector &h_flat, Eigen::Index antennas, Eigen::Index subcarriers) {
    if (antennas * subcarriers != h_flat.size())
        throw InvalidInput("unflatten: length does not match the requested shape");
    return Eigen::Map<const CMatrix>(h_flat.data(), antennas, subcarriers);
}

nlohmann::json to_json(const ArrayConfig &a) {
    return {{"m_rows", a.m_rows}, {"m_cols", a.m_cols}, {"spacing_wavelengths", a.spacing_wavelengths}};
}

nlohmann::json to_json(const OfdmConfig &o) {
    return {{"n_subcarriers", o.n_subcarriers}, {"bandwidth_hz", o.bandwidth_hz}, {"carrier_hz", o.carrier_hz}};
}

ArrayConfig array_config_from_json(const nlohmann::json &j) {
    ArrayConfig a;
    a.m_rows = j.at("m_rows").get<int>();
    a.m_cols = j.at("m_cols").get<int>();
    a.spacing_wavelengths = j.at("spacing_wavelengths").get<double>();
    a.validate();
    return a;
}

OfdmConfig ofdm_config_from_json(const nlohmann::json &j) {
    OfdmConfig o;
    o.n_subcarriers = j.at("n_subcarriers").get<int>();
    o.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    o.carrier_hz = j.at("carrier_hz").get<double>();
    o.validate();
    return o;
}

} // namespace ebcsi
