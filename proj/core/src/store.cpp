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

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ebcsi/error.hpp"
#include "ebcsi/parallel.hpp"
#include "ebcsi/rng.hpp"
#include "ebcsi/subspace.hpp"
#include "ebcsi/tensor_io.hpp"

namespace ebcsi {

namespace {

constexpr const char *kStoreFormat = "ebcsi.eb_store";
constexpr int kStoreVersion = 1;

std::string cell_file(const CellId &id) {
    return "cell_" + id.str() + ".bin";
}

} // namespace

EbStore::EbStore(SceneConfig scene, ArrayConfig array, OfdmConfig ofdm, ExtractionSettings settings,
                 std::map<CellId, EbBasis> bases)
    : scene_(std::move(scene)), array_(array), ofdm_(ofdm), settings_(std::move(settings)), bases_(std::move(bases)) {
    scene_.validate();
    const auto side = static_cast<std::size_t>(scene_.cells_per_side());
    if (bases_.size() != side * side)
        throw InvalidInput("store must hold exactly one basis per scene cell");
    const Eigen::Index n_h = static_cast<Eigen::Index>(array_.elements()) * ofdm_.n_subcarriers;
    for (const auto &[id, b] : bases_) {
        if (id != b.cell)
            throw InvalidInput("store key does not match basis cell id");
        if (b.u.rows() != n_h || b.u.cols() != b.n_b)
            throw InvalidInput("basis for cell " + id.str() + " has the wrong shape");
    }
}

const EbBasis &EbStore::basis(const CellId &cell) const {
    const auto it = bases_.find(cell);
    if (it == bases_.end())
        throw OutOfBounds("no basis stored for cell " + cell.str());
    return it->second;
}

EbStore build_store(const SceneGrid &scene, const ArrayConfig &array, const OfdmConfig &ofdm,
                    const ExtractionSettings &settings, int jobs) {
    const auto &cells = scene.cells();
    std::vector<EbBasis> bases(cells.size());
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        const auto snaps = collect_vertex_snapshots(scene, cells[i].id, array, ofdm, settings.snapshots);
        bases[i] = extract_eb(snaps, settings.selection);
    });
    std::map<CellId, EbBasis> by_cell;
    for (auto &b : bases)
        by_cell.emplace(b.cell, std::move(b));
    return EbStore(scene.config(), array, ofdm, settings, std::move(by_cell));
}

Coords perturb_location(const SceneConfig &scene, const Coords &coords, const LocalizationError &error) {
    if (!(error.magnitude_m >= 0.0) || !std::isfinite(error.magnitude_m))
        throw InvalidInput("localization error magnitude must be finite and nonnegative");
    auto rng = make_rng(error.seed, {0x10CE});
    const double dir = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
    const double e = scene.extent_m;
    return Coords{std::clamp(coords.x + error.magnitude_m * std::cos(dir), 0.0, e),
                  std::clamp(coords.y + error.magnitude_m * std::sin(dir), 0.0, e)};
}

const EbBasis &grid_lookup(const EbStore &store, const Coords &coords, const std::optional<LocalizationError> &error) {
    const auto &cfg = store.scene_config();
    const CellId truth = cell_at(cfg, coords); // throws when outside the scene
    if (!error || error->magnitude_m == 0.0)
        return store.basis(truth);
    return store.basis(cell_at(cfg, perturb_location(cfg, coords, *error)));
}

void save_store(const EbStore &store, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    nlohmann::json cells = nlohmann::json::array();
    for (const auto &[id, b] : store.bases()) {
        const std::string file = cell_file(id);
        const std::string digest = write_complex_matrix(dir / file, b.u);
        std::vector<double> sv(b.singular_values.data(), b.singular_values.data() + b.singular_values.size());
        cells.push_back({{"row", id.row},
                         {"col", id.col},
                         {"n_b", b.n_b},
                         {"shape", {b.u.rows(), b.u.cols()}},
                         {"file", file},
                         {"sha256", digest},
                         {"singular_values", sv}});
    }
    nlohmann::json manifest{
        {"format", kStoreFormat},
        {"version", kStoreVersion},
        {"dtype", "complex128"},
        {"byte_order", "little"},
        {"layout", "row-major, interleaved re/im"},
        {"scene", to_json(store.scene_config())},
        {"array", to_json(store.array())},
        {"ofdm", to_json(store.ofdm())},
        {"extraction", to_json(store.settings())},
        {"noisy", store.noisy()},
        {"cells", std::move(cells)},
    };
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write store manifest in " + dir.string());
    out << manifest.dump(1) << '\n';
}

EbStore load_store(const std::filesystem::path &dir) {
    std::ifstream in(dir / "manifest.json", std::ios::binary);
    if (!in)
        throw IoError("no store manifest in " + dir.string());
    nlohmann::json m;
    try {
        in >> m;
    } catch (const nlohmann::json::exception &e) {
        throw IoError("malformed store manifest: " + std::string(e.what()));
    }
    if (m.value("format", "") != kStoreFormat || m.value("version", 0) != kStoreVersion)
        throw IoError(dir.string() + " is not a version 1 ebcsi EB store");

    const SceneConfig scene = scene_config_from_json(m.at("scene"));
    const ArrayConfig array = array_config_from_json(m.at("array"));
    const OfdmConfig ofdm = ofdm_config_from_json(m.at("ofdm"));
    const ExtractionSettings settings = extraction_settings_from_json(m.at("extraction"));

    std::map<CellId, EbBasis> bases;
    for (const auto &jc : m.at("cells")) {
        EbBasis b;
        b.cell = CellId{jc.at("row").get<int>(), jc.at("col").get<int>()};
        b.n_b = jc.at("n_b").get<int>();
        b.energy_threshold = settings.selection.energy_threshold;
        const auto file = dir / jc.at("file").get<std::string>();
        if (!std::filesystem::exists(file))
            throw IoError("store is missing " + file.string());
        const auto bytes = read_bytes(file);
        if (sha256_hex(bytes.data(), bytes.size()) != jc.at("sha256").get<std::string>())
            throw ChecksumError("checksum mismatch for " + file.string());
        const auto rows = jc.at("shape")[0].get<Eigen::Index>();
        const auto cols = jc.at("shape")[1].get<Eigen::Index>();
        b.u = read_complex_matrix(file, rows, cols);
        const auto sv = jc.at("singular_values").get<std::vector<double>>();
        b.singular_values = Eigen::Map<const RVector>(sv.data(), static_cast<Eigen::Index>(sv.size()));
        bases.emplace(b.cell, std::move(b));
    }
    const auto side = static_cast<std::size_t>(scene.cells_per_side());
    if (bases.size() != side * side)
        throw IoError("store lists " + std::to_string(bases.size()) + " cells, scene needs " + std::to_string(side * side));
    return EbStore(scene, array, ofdm, settings, std::move(bases));
}

} // namespace ebcsi
