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

#include "ebcsi/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "ebcsi/error.hpp"
#include "ebcsi/rng.hpp"

namespace ebcsi {

namespace {

constexpr std::uint64_t kCellStream = 0x5CE4E;
constexpr std::uint64_t kJitterStream = 0x717E5;
constexpr int kMaxPaths = 25;

struct JitterField {
    double u = 0.0;
    double v = 0.0;
    double phase = 0.0;

    // Zero at the anchor, amplitude sqrt(2).
    double at(double dx, double dy, double grid) const {
        return std::sqrt(2.0) * (std::sin(kTwoPi * (u * dx + v * dy) / grid + phase) - std::sin(phase));
    }
};

std::array<JitterField, 3> jitter_fields(Seed seed, const CellId &id, std::size_t path) {
    auto rng = make_rng(seed, {kJitterStream, static_cast<std::uint64_t>(id.row), static_cast<std::uint64_t>(id.col), path});
    std::uniform_real_distribution<double> wave(-1.0, 1.0);
    std::uniform_real_distribution<double> ph(0.0, kTwoPi);
    std::array<JitterField, 3> f{};
    for (auto &field : f) {
        field.u = wave(rng);
        field.v = wave(rng);
        field.phase = ph(rng);
    }
    return f;
}

CellDescriptor make_cell(const SceneConfig &cfg, const CellId &id) {
    auto rng = make_rng(cfg.seed, {kCellStream, static_cast<std::uint64_t>(id.row), static_cast<std::uint64_t>(id.col)});
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> full_turn(0.0, kTwoPi);
    std::uniform_real_distribution<double> elev(-kPi / 2.0, kPi / 2.0);

    CellDescriptor cell;
    cell.id = id;
    const double g = cfg.grid_size_m;
    const double x0 = id.col * g;
    const double y0 = id.row * g;
    cell.vertex_coords = {Coords{x0, y0}, Coords{x0 + g, y0}, Coords{x0 + g, y0 + g}, Coords{x0, y0 + g}};

    cell.los = unit(rng) < cfg.los_fraction;
    const int n_paths = std::uniform_int_distribution<int>(cfg.path_min, cfg.path_max)(rng);

    // Distinct delay bins, partial Fisher-Yates.
    std::vector<int> bins(static_cast<std::size_t>(cfg.delay_bins));
    std::iota(bins.begin(), bins.end(), 0);
    for (int i = 0; i < n_paths; ++i) {
        const int j = std::uniform_int_distribution<int>(i, cfg.delay_bins - 1)(rng);
        std::swap(bins[static_cast<std::size_t>(i)], bins[static_cast<std::size_t>(j)]);
    }
    bins.resize(static_cast<std::size_t>(n_paths));
    if (cell.los)
        std::iter_swap(bins.begin(), std::min_element(bins.begin(), bins.end()));

    const double bin_width = cfg.delay_span_s / cfg.delay_bins;
    cell.base_paths.resize(static_cast<std::size_t>(n_paths));
    for (std::size_t l = 0; l < cell.base_paths.size(); ++l) {
        auto &p = cell.base_paths[l];
        p.power = std::pow(10.0, -2.0 * unit(rng)); // log-uniform over 20 dB
        p.delay_s = bins[l] * bin_width;
        p.phase = wrap_phase(full_turn(rng));
        p.elevation = elev(rng);
        p.azimuth = wrap_phase(full_turn(rng));
        p.doppler_rate = kTwoPi * cfg.max_doppler_hz * std::cos(full_turn(rng));
    }

    if (cell.los && n_paths > 1) {
        double strongest_other = 0.0;
        for (std::size_t l = 1; l < cell.base_paths.size(); ++l)
            strongest_other = std::max(strongest_other, cell.base_paths[l].power);
        cell.base_paths[0].power = 10.0 * strongest_other;
    }

    double total = 0.0;
    for (const auto &p : cell.base_paths)
        total += p.power;
    for (auto &p : cell.base_paths)
        p.power /= total;
    return cell;
}

} // namespace

void SceneConfig::validate() const {
    if (!(grid_size_m > 0.0) || !(extent_m > 0.0))
        throw ConfigError("scene extent and grid size must be positive");
    const double n = extent_m / grid_size_m;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n) || std::round(n) < 1.0)
        throw ConfigError("scene extent must be an integer multiple of the grid size");
    if (path_min < 1 || path_min > path_max || path_max > kMaxPaths)
        throw ConfigError("path count range must satisfy 1 <= min <= max <= 25");
    if (!(los_fraction >= 0.0 && los_fraction <= 1.0))
        throw ConfigError("los_fraction must lie in [0, 1]");
    if (!(intra_cell_jitter >= 0.0) || !std::isfinite(intra_cell_jitter))
        throw ConfigError("intra_cell_jitter must be finite and nonnegative");
    if (!(delay_span_s > 0.0) || delay_bins < path_max)
        throw ConfigError("delay span must be positive with at least path_max delay bins");
    if (!(max_doppler_hz >= 0.0) || !std::isfinite(max_doppler_hz))
        throw ConfigError("max_doppler_hz must be finite and nonnegative");
    if (!(carrier_hz > 0.0))
        throw ConfigError("carrier frequency must be positive");
}

int SceneConfig::cells_per_side() const {
    return static_cast<int>(std::lround(extent_m / grid_size_m));
}

SceneGrid::SceneGrid(SceneConfig config, std::vector<CellDescriptor> cells)
    : config_(std::move(config)), cells_(std::move(cells)) {
    config_.validate();
    side_ = config_.cells_per_side();
    if (cells_.size() != static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_))
        throw ConfigError("cell count does not match (extent / grid size)^2");
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const auto &c = cells_[i];
        if (c.id.row * side_ + c.id.col != static_cast<int>(i))
            throw ConfigError("cells must be stored row-major");
        if (c.base_paths.empty() || c.base_paths.size() > kMaxPaths)
            throw ConfigError("every cell needs between 1 and 25 paths");
    }
}

bool SceneGrid::contains(const CellId &id) const noexcept {
    return id.row >= 0 && id.col >= 0 && id.row < side_ && id.col < side_;
}

bool SceneGrid::contains(const Coords &c) const noexcept {
    return c.x >= 0.0 && c.y >= 0.0 && c.x <= config_.extent_m && c.y <= config_.extent_m;
}

const CellDescriptor &SceneGrid::cell(const CellId &id) const {
    if (!contains(id))
        throw OutOfBounds("cell " + id.str() + " is outside the scene grid");
    return cells_[static_cast<std::size_t>(id.row * side_ + id.col)];
}

CellId SceneGrid::cell_at(const Coords &c) const {
    return ebcsi::cell_at(config_, c);
}

CellId cell_at(const SceneConfig &config, const Coords &c) {
    const double e = config.extent_m;
    if (!(c.x >= 0.0 && c.y >= 0.0 && c.x <= e && c.y <= e))
        throw OutOfBounds("coordinates (" + std::to_string(c.x) + ", " + std::to_string(c.y) + ") are outside the scene");
    const int side = config.cells_per_side();
    const int col = std::min(static_cast<int>(std::floor(c.x / config.grid_size_m)), side - 1);
    const int row = std::min(static_cast<int>(std::floor(c.y / config.grid_size_m)), side - 1);
    return CellId{row, col};
}

Coords SceneGrid::cell_center(const CellId &id) const {
    const auto &a = cell(id).anchor();
    return Coords{a.x + 0.5 * config_.grid_size_m, a.y + 0.5 * config_.grid_size_m};
}

SceneGrid generate_scene(const SceneConfig &config) {
    config.validate();
    const int side = config.cells_per_side();
    std::vector<CellDescriptor> cells;
    cells.reserve(static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c)
            cells.push_back(make_cell(config, CellId{r, c}));
    return SceneGrid(config, std::move(cells));
}

double wrap_phase(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi)
        r = 0.0;
    return r;
}

PathSet cell_paths(const SceneGrid &scene, const CellId &id, const Coords &coords) {
    const auto &cell = scene.cell(id);
    const auto &cfg = scene.config();
    const double g = cfg.grid_size_m;
    const auto &a = cell.anchor();
    const double dx = coords.x - a.x;
    const double dy = coords.y - a.y;
    constexpr double tol = 1e-9;
    if (dx < -tol || dy < -tol || dx > g + tol || dy > g + tol)
        throw OutOfBounds("coordinates lie outside cell " + id.str());

    PathSet paths = cell.base_paths;
    const double jitter = cfg.intra_cell_jitter;
    const double k0 = kTwoPi / cfg.wavelength_m();
    for (std::size_t l = 0; l < paths.size(); ++l) {
        auto &p = paths[l];
        if (jitter > 0.0) {
            const auto f = jitter_fields(cfg.seed, id, l);
            const double max_delay = std::nextafter(cfg.delay_span_s, 0.0);
            p.delay_s = std::clamp(p.delay_s + jitter * cfg.delay_span_s * f[0].at(dx, dy, g), 0.0, max_delay);
            p.elevation = std::clamp(p.elevation + jitter * kPi * f[1].at(dx, dy, g), -kPi / 2.0, kPi / 2.0);
            p.azimuth = wrap_phase(p.azimuth + jitter * kTwoPi * f[2].at(dx, dy, g));
        }
        const double ce = std::cos(p.elevation);
        const double advance = k0 * (dx * ce * std::cos(p.azimuth) + dy * ce * std::sin(p.azimuth));
        p.phase = wrap_phase(p.phase + advance);
    }
    return paths;
}

void advance_phases(PathSet &paths, double dt) {
    for (auto &p : paths)
        p.phase = wrap_phase(p.phase + p.doppler_rate * dt);
}

PathSet location_paths(const SceneGrid &scene, const Coords &coords, double time) {
    auto paths = cell_paths(scene, scene.cell_at(coords), coords);
    advance_phases(paths, time);
    return paths;
}

nlohmann::json to_json(const SceneConfig &c) {
    return nlohmann::json{
        {"extent_m", c.extent_m},
        {"grid_size_m", c.grid_size_m},
        {"path_min", c.path_min},
        {"path_max", c.path_max},
        {"los_fraction", c.los_fraction},
        {"intra_cell_jitter", c.intra_cell_jitter},
        {"seed", c.seed},
        {"delay_span_s", c.delay_span_s},
        {"delay_bins", c.delay_bins},
        {"max_doppler_hz", c.max_doppler_hz},
        {"carrier_hz", c.carrier_hz},
    };
}

SceneConfig scene_config_from_json(const nlohmann::json &j) {
    SceneConfig c;
    c.extent_m = j.at("extent_m").get<double>();
    c.grid_size_m = j.at("grid_size_m").get<double>();
    c.path_min = j.at("path_min").get<int>();
    c.path_max = j.at("path_max").get<int>();
    c.los_fraction = j.at("los_fraction").get<double>();
    c.intra_cell_jitter = j.at("intra_cell_jitter").get<double>();
    c.seed = j.at("seed").get<Seed>();
    c.delay_span_s = j.at("delay_span_s").get<double>();
    c.delay_bins = j.at("delay_bins").get<int>();
    c.max_doppler_hz = j.at("max_doppler_hz").get<double>();
    c.carrier_hz = j.at("carrier_hz").get<double>();
    return c;
}

nlohmann::json to_json(const SceneGrid &scene) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto &c : scene.cells()) {
        nlohmann::json paths = nlohmann::json::array();
        for (const auto &p : c.base_paths)
            paths.push_back({p.power, p.delay_s, p.phase, p.elevation, p.azimuth, p.doppler_rate});
        cells.push_back({{"row", c.id.row}, {"col", c.id.col}, {"los", c.los}, {"paths", std::move(paths)}});
    }
    return nlohmann::json{
        {"format", "ebcsi.scene"},
        {"version", 1},
        {"config", to_json(scene.config())},
        {"path_columns", {"power", "delay_s", "phase", "elevation", "azimuth", "doppler_rate"}},
        {"generator",
         {{"delay", "quantized to delay_bins levels of delay_span_s / delay_bins, distinct per cell"},
          {"power", "log-uniform over 20 dB, LoS dominant path 10x strongest other, normalized to unit sum"},
          {"doppler", "2 pi max_doppler_hz cos(beta), beta uniform"},
          {"vertex_sharing", "none, each cell's vertices use that cell's own paths"}}},
        {"cells", std::move(cells)},
    };
}

SceneGrid scene_from_json(const nlohmann::json &j) {
    if (j.value("format", "") != "ebcsi.scene")
        throw ConfigError("not an ebcsi scene document");
    SceneConfig cfg = scene_config_from_json(j.at("config"));
    cfg.validate();
    const double g = cfg.grid_size_m;
    std::vector<CellDescriptor> cells;
    for (const auto &jc : j.at("cells")) {
        CellDescriptor c;
        c.id = CellId{jc.at("row").get<int>(), jc.at("col").get<int>()};
        c.los = jc.at("los").get<bool>();
        const double x0 = c.id.col * g;
        const double y0 = c.id.row * g;
        c.vertex_coords = {Coords{x0, y0}, Coords{x0 + g, y0}, Coords{x0 + g, y0 + g}, Coords{x0, y0 + g}};
        for (const auto &jp : jc.at("paths")) {
            if (jp.size() != 6)
                throw ConfigError("path rows must have 6 columns");
            c.base_paths.push_back(PathParams{jp[0].get<double>(), jp[1].get<double>(), jp[2].get<double>(),
                                              jp[3].get<double>(), jp[4].get<double>(), jp[5].get<double>()});
        }
        cells.push_back(std::move(c));
    }
    return SceneGrid(cfg, std::move(cells));
}

void save_scene(const SceneGrid &scene, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << to_json(scene).dump(1) << '\n';
    if (!out)
        throw IoError("failed writing " + path.string());
}

SceneGrid load_scene(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open scene file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw IoError("malformed scene file " + path.string() + ": " + e.what());
    }
    return scene_from_json(j);
}

} // namespace ebcsi
