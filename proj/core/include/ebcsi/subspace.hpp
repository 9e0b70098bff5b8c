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

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ebcsi/channel.hpp"
#include "ebcsi/observation.hpp"
#include "ebcsi/scene.hpp"
#include "ebcsi/types.hpp"

namespace ebcsi {

enum class DopplerMode {
    time_samples, // one per-path rotation sampled at n_times instants
    independent,  // per-path Doppler rates redrawn for every profile
};

std::string to_string(DopplerMode m);
DopplerMode parse_doppler_mode(const std::string &s);

struct SnapshotOptions {
    int n_times = 10;
    double time_step_s = 0.040;
    DopplerMode doppler = DopplerMode::time_samples;
    bool zero_velocity = false;
    // Corrupts each snapshot independently (EB-PR); unset gives the ideal set.
    std::optional<NoiseSpec> noise;

    friend bool operator==(const SnapshotOptions &, const SnapshotOptions &) = default;
};

// Flattened vertex channels of one cell, N_H x (4 * n_times). Column v * n_times + t
// holds vertex v at time index t.
struct VertexSnapshotSet {
    CellId cell;
    CMatrix snapshots;
    int n_times = 10;
    bool noisy = false;

    Eigen::Index size() const noexcept { return snapshots.cols(); }
    Eigen::Index dimension() const noexcept { return snapshots.rows(); }
};

VertexSnapshotSet collect_vertex_snapshots(const SceneGrid &scene, const CellId &cell, const ArrayConfig &array,
                                           const OfdmConfig &ofdm, const SnapshotOptions &options = {});

// Fixed basis count or smallest alpha reaching an energy ratio.
struct BasisSelection {
    int n_b = 15;
    std::optional<double> energy_threshold;

    static BasisSelection fixed(int n) { return BasisSelection{n, std::nullopt}; }
    static BasisSelection energy(double eta) { return BasisSelection{0, eta}; }

    friend bool operator==(const BasisSelection &, const BasisSelection &) = default;
};

struct EbBasis {
    CellId cell;
    CMatrix u;                 // N_H x n_b, orthonormal columns
    RVector singular_values;   // eigenvalues of sum h h^H, descending, length min(N_H, snapshots)
    int n_b = 0;
    std::optional<double> energy_threshold;

    friend bool operator==(const EbBasis &a, const EbBasis &b) {
        return a.cell == b.cell && a.n_b == b.n_b && a.energy_threshold == b.energy_threshold &&
               a.u.rows() == b.u.rows() && a.u.cols() == b.u.cols() && a.u == b.u &&
               a.singular_values.size() == b.singular_values.size() && a.singular_values == b.singular_values;
    }
};

// eta_alpha = sum_{i <= alpha} lambda_i / sum_i lambda_i.
double energy_ratio(const RVector &singular_values, int alpha);

// Smallest alpha with eta_alpha >= eta.
int basis_count_for_energy(const RVector &singular_values, double eta);

// Thin SVD of the snapshot matrix; its left singular vectors are the eigenvectors
// of the autocorrelation sum. Each column is rotated so its largest-magnitude
// entry is real and positive.
EbBasis extract_eb(const VertexSnapshotSet &snaps, const BasisSelection &selection = {});

struct ExtractionSettings {
    SnapshotOptions snapshots;
    BasisSelection selection;

    friend bool operator==(const ExtractionSettings &, const ExtractionSettings &) = default;
};

nlohmann::json to_json(const ExtractionSettings &s);
ExtractionSettings extraction_settings_from_json(const nlohmann::json &j);

// Immutable map cell -> basis for a whole scene.
class EbStore {
  public:
    EbStore(SceneConfig scene, ArrayConfig array, OfdmConfig ofdm, ExtractionSettings settings,
            std::map<CellId, EbBasis> bases);

    const SceneConfig &scene_config() const noexcept { return scene_; }
    const ArrayConfig &array() const noexcept { return array_; }
    const OfdmConfig &ofdm() const noexcept { return ofdm_; }
    const ExtractionSettings &settings() const noexcept { return settings_; }
    bool noisy() const noexcept { return settings_.snapshots.noise.has_value(); }
    const std::map<CellId, EbBasis> &bases() const noexcept { return bases_; }

    const EbBasis &basis(const CellId &cell) const;

    friend bool operator==(const EbStore &, const EbStore &) = default;

  private:
    SceneConfig scene_;
    ArrayConfig array_;
    OfdmConfig ofdm_;
    ExtractionSettings settings_;
    std::map<CellId, EbBasis> bases_;
};

EbStore build_store(const SceneGrid &scene, const ArrayConfig &array, const OfdmConfig &ofdm,
                    const ExtractionSettings &settings, int jobs = 1);

struct LocalizationError {
    double magnitude_m = 0.0;
    Seed seed = 0;
};

// Moves `coords` by `magnitude_m` in a uniformly random (seeded) direction and
// clamps to the scene extent.
Coords perturb_location(const SceneConfig &scene, const Coords &coords, const LocalizationError &error);

// Basis of the cell the (possibly perturbed) position falls in.
const EbBasis &grid_lookup(const EbStore &store, const Coords &coords,
                           const std::optional<LocalizationError> &error = std::nullopt);

// Directory layout: manifest.json + cell_<row>_<col>.bin (row-major N_H x n_b complex).
void save_store(const EbStore &store, const std::filesystem::path &dir);
EbStore load_store(const std::filesystem::path &dir);

} // namespace ebcsi
