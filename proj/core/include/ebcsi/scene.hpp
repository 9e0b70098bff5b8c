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

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ebcsi/types.hpp"

namespace ebcsi {

// Maximum Doppler shift f_d = v f_c / c.
inline double doppler_limit_hz(double speed_kmh, double carrier_hz) {
    return speed_kmh / 3.6 * carrier_hz / kSpeedOfLight;
}

struct SceneConfig {
    double extent_m = 40.0;
    double grid_size_m = 5.0;
    int path_min = 3;
    int path_max = 8;
    double los_fraction = 0.4;
    // RMS of the per-location delay/angle perturbation relative to each parameter's
    // domain width. 0 selects frozen-path mode.
    double intra_cell_jitter = 0.0;
    Seed seed = 1;
    // Delays are drawn from `delay_bins` quantized levels in [0, delay_span_s).
    double delay_span_s = 32.0 / 25.0e6;
    int delay_bins = 64;
    double max_doppler_hz = doppler_limit_hz(3.0, 6.5e9);
    // Sets the wavelength used for the intra-cell plane-wave phase advance.
    double carrier_hz = 6.5e9;

    void validate() const;
    int cells_per_side() const;
    double wavelength_m() const { return kSpeedOfLight / carrier_hz; }

    friend bool operator==(const SceneConfig &, const SceneConfig &) = default;
};

struct PathParams {
    double power = 0.0;        // linear
    double delay_s = 0.0;      // [0, delay_span_s)
    double phase = 0.0;        // [0, 2pi)
    double elevation = 0.0;    // [-pi/2, pi/2]
    double azimuth = 0.0;      // [0, 2pi)
    double doppler_rate = 0.0; // rad/s

    friend bool operator==(const PathParams &, const PathParams &) = default;
};

using PathSet = std::vector<PathParams>;

struct CellDescriptor {
    CellId id;
    bool los = false;
    PathSet base_paths;
    // South-west, south-east, north-east, north-west. Element 0 is the anchor.
    std::array<Coords, 4> vertex_coords{};

    const Coords &anchor() const { return vertex_coords[0]; }

    friend bool operator==(const CellDescriptor &, const CellDescriptor &) = default;
};

class SceneGrid {
  public:
    SceneGrid(SceneConfig config, std::vector<CellDescriptor> cells);

    const SceneConfig &config() const noexcept { return config_; }
    int cells_per_side() const noexcept { return side_; }
    std::size_t cell_count() const noexcept { return cells_.size(); }
    const std::vector<CellDescriptor> &cells() const noexcept { return cells_; }

    bool contains(const CellId &id) const noexcept;
    bool contains(const Coords &c) const noexcept;

    // Throws OutOfBounds for unknown cells.
    const CellDescriptor &cell(const CellId &id) const;
    // Cell containing `c`; points on the far edges belong to the last row/column.
    CellId cell_at(const Coords &c) const;

    Coords cell_center(const CellId &id) const;

    friend bool operator==(const SceneGrid &, const SceneGrid &) = default;

  private:
    SceneConfig config_;
    int side_ = 0;
    std::vector<CellDescriptor> cells_; // row-major
};

SceneGrid generate_scene(const SceneConfig &config);

// Cell containing `c` for the grid described by `config`; OutOfBounds when `c`
// lies outside [0, extent]^2.
CellId cell_at(const SceneConfig &config, const Coords &c);

// Wraps an angle into [0, 2pi).
double wrap_phase(double x);

// Path parameters seen at `coords` (any point of the closed cell) at time 0: the
// cell's base paths with the plane-wave phase advance from the anchor and, when
// jitter > 0, the smooth intra-cell delay/angle perturbation.
PathSet cell_paths(const SceneGrid &scene, const CellId &cell, const Coords &coords);

// Adds doppler_rate * dt to every path phase.
void advance_phases(PathSet &paths, double dt);

// Paths for a user at `coords` and `time`, using the cell that contains `coords`.
PathSet location_paths(const SceneGrid &scene, const Coords &coords, double time);

nlohmann::json to_json(const SceneConfig &config);
SceneConfig scene_config_from_json(const nlohmann::json &j);
nlohmann::json to_json(const SceneGrid &scene);
SceneGrid scene_from_json(const nlohmann::json &j);

void save_scene(const SceneGrid &scene, const std::filesystem::path &path);
SceneGrid load_scene(const std::filesystem::path &path);

} // namespace ebcsi
