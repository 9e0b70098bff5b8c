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

#include <complex>
#include <cstdint>
#include <compare>
#include <string>

#include <Eigen/Dense>

namespace ebcsi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

using Seed = std::uint64_t;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSpeedOfLight = 299792458.0;

// Position in the scene plane, meters. Origin at the south-west corner.
struct Coords {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Coords &, const Coords &) = default;
};

// Grid cell index: row counts along y, col along x.
struct CellId {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const CellId &, const CellId &) = default;

    std::string str() const { return std::to_string(row) + "_" + std::to_string(col); }
};

} // namespace ebcsi
