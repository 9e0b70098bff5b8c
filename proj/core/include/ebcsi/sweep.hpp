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
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ebcsi/channel.hpp"
#include "ebcsi/metrics.hpp"
#include "ebcsi/observation.hpp"
#include "ebcsi/reconstruct.hpp"
#include "ebcsi/scene.hpp"
#include "ebcsi/subspace.hpp"
#include "ebcsi/types.hpp"

namespace ebcsi {

// Source of the LMMSE training channels.
enum class LmmseTraining {
    noisy, // vertex snapshots corrupted at the condition SNR
    ideal, // noiseless vertex snapshots
};

std::string to_string(LmmseTraining t);
LmmseTraining parse_lmmse_training(const std::string &s);

struct SweepConfig {
    std::vector<double> snr_db{0.0};
    std::vector<PilotRatio> pilot_ratios{PilotRatio{1, 8}};
    std::vector<double> interference_a{0.0};
    std::vector<double> loc_error_m{0.0};
    std::vector<double> horizon_ms{0.0};
    int trials = 200;
    Seed seed = 1;
    std::vector<Method> methods{Method::ieb_pr, Method::eb_pr, Method::lmmse, Method::zero_fill};

    ArrayConfig array;
    OfdmConfig ofdm;
    BasisSelection selection;
    SnapshotOptions snapshots; // noise field is ignored; EB-PR noise follows the condition SNR
    ProjectionMode projection = ProjectionMode::zero_fill;
    MaskPattern mask_pattern = MaskPattern::comb;
    LmmseTraining lmmse_training = LmmseTraining::noisy;
    // Noise power for AAR and LMMSE regularization when a condition has no noise.
    double reference_snr_db = 10.0;
    // User times are drawn uniformly from [0, time_span_s].
    double time_span_s = 0.36;
    int jobs = 1;

    void validate() const;
    friend bool operator==(const SweepConfig &, const SweepConfig &) = default;
};

nlohmann::json to_json(const SweepConfig &c);
SweepConfig sweep_config_from_json(const nlohmann::json &j);

struct Condition {
    double snr_db = std::numeric_limits<double>::infinity();
    PilotRatio pilot_ratio;
    double interference_a = 0.0;
    double loc_error_m = 0.0;
    double horizon_ms = 0.0;
};

// Cartesian product of the grids, snr slowest and horizon fastest.
std::vector<Condition> expand_conditions(const SweepConfig &c);

struct MetricRecord {
    std::size_t condition_index = 0;
    int trial = 0;
    Method method = Method::zero_fill;
    Condition condition;
    double grid_size_m = 0.0;
    Seed seed = 0;
    CellId cell;        // true cell of the user
    CellId lookup_cell; // cell selected from the reported position
    bool ok = false;
    double nmse = std::numeric_limits<double>::quiet_NaN();
    double cs = std::numeric_limits<double>::quiet_NaN();
    // NaN when the prediction has an all-zero subcarrier column.
    double aar = std::numeric_limits<double>::quiet_NaN();
    double aar_ratio = std::numeric_limits<double>::quiet_NaN();
    std::string error;
};

struct MethodSummary {
    Method method = Method::zero_fill;
    int n_ok = 0;
    int n_failed = 0;
    int n_aar = 0;
    double nmse_mean = std::numeric_limits<double>::quiet_NaN();
    double nmse_db = std::numeric_limits<double>::quiet_NaN();
    double cs_mean = std::numeric_limits<double>::quiet_NaN();
    double aar_mean = std::numeric_limits<double>::quiet_NaN();
    double aar_ratio_mean = std::numeric_limits<double>::quiet_NaN();
    std::vector<CdfPoint> cs_cdf;
};

struct ConditionSummary {
    Condition condition;
    std::vector<MethodSummary> methods; // same order as SweepConfig::methods
};

struct SweepResult {
    SweepConfig config;
    double grid_size_m = 0.0;
    std::vector<Condition> conditions;
    std::vector<MetricRecord> records; // condition, trial, method order
    std::vector<ConditionSummary> summary;

    const MethodSummary &at(std::size_t condition_index, Method m) const;
};

// Runs every condition x trial x method. Per-method failures are recorded, not
// thrown. Results do not depend on config.jobs.
SweepResult run_sweep(const SceneGrid &scene, const SweepConfig &config);

// Writes records.csv, summary.json and curves/<method>.tsv, curves/<method>_cs_cdf.tsv.
// Returns the written paths relative to `dir`, sorted.
std::vector<std::filesystem::path> write_sweep_outputs(const SweepResult &result, const std::filesystem::path &dir);

// Column names of records.csv in order.
const std::vector<std::string> &record_columns();

} // namespace ebcsi
