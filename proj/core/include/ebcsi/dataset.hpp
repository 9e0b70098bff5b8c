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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ebcsi/channel.hpp"
#include "ebcsi/observation.hpp"
#include "ebcsi/scene.hpp"
#include "ebcsi/subspace.hpp"
#include "ebcsi/types.hpp"

namespace ebcsi {

struct DatasetCondition {
    double snr_db = 0.0;
    PilotRatio pilot_ratio{1, 8};

    friend bool operator==(const DatasetCondition &, const DatasetCondition &) = default;
};

struct SplitRatios {
    double train = 0.7;
    double val = 0.1;
    double test = 0.2;

    // Nonnegative and summing to 1 within 1e-9.
    void validate() const;
    friend bool operator==(const SplitRatios &, const SplitRatios &) = default;
};

struct DatasetConfig {
    std::vector<DatasetCondition> conditions{DatasetCondition{}};
    int users_per_side = 5;  // users sit at the centres of a users_per_side^2 sub-grid of each cell
    int sequence_length = 1; // frames per record
    double time_step_s = 0.010;
    SplitRatios split;
    Seed seed = 1;
    ArrayConfig array;
    OfdmConfig ofdm;
    MaskPattern mask_pattern = MaskPattern::comb;
    ExtractionSettings eb; // EB reference stored under eb/
    int jobs = 1;

    void validate() const;
};

nlohmann::json to_json(const DatasetConfig &c);

struct CellSplit {
    std::vector<CellId> train, val, test;
};

// Seeded shuffle of `cells` then floor/floor/remainder partition.
CellSplit split_cells(std::vector<CellId> cells, const SplitRatios &ratios, Seed seed);

struct DatasetSummary {
    std::size_t train_records = 0;
    std::size_t val_records = 0;
    std::size_t test_records = 0;
    std::vector<std::filesystem::path> files; // relative to the dataset root, sorted
};

// Writes manifest.json, {split}_h_true.bin [n, T, M_t, N_sc] complex,
// {split}_h_obs.bin [n, T, M_t, N_sc] complex, {split}_mask.bin [n, M_t, N_sc] real and
// the EB store under eb/. Records are ordered cell, user, condition within each split.
DatasetSummary export_dataset(const SceneGrid &scene, const DatasetConfig &config, const std::filesystem::path &dir);

struct Tensor {
    std::vector<std::int64_t> shape;
    bool complex = false;
    std::vector<double> values; // interleaved (re, im) when complex

    std::size_t element_count() const;
};

struct Dataset {
    nlohmann::json manifest;
    std::map<std::string, Tensor> tensors; // "train/h_true", "val/mask", ...
    EbStore eb;
};

// Verifies every checksum and tensor size against the manifest.
Dataset load_dataset(const std::filesystem::path &dir);

} // namespace ebcsi
