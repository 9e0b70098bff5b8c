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
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ebcsi/error.hpp"
#include "ebcsi/sweep.hpp"
#include "test_util.hpp"

using namespace ebcsi;
using ebcsi::testing::TempDir;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const SceneGrid &scene() {
    static const SceneGrid s = [] {
        SceneConfig c;
        c.extent_m = 20.0;
        c.seed = 3;
        return generate_scene(c);
    }();
    return s;
}

SweepConfig small_config() {
    SweepConfig c;
    c.array = ArrayConfig{4, 4};
    c.ofdm = OfdmConfig{16};
    c.selection = BasisSelection::fixed(8);
    c.pilot_ratios = {PilotRatio{1, 4}};
    c.trials = 10;
    return c;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Sweep, IdentityPipelineIsExact) {
    auto c = small_config();
    c.snr_db = {kInf};
    c.pilot_ratios = {PilotRatio{1, 1}};
    c.array = ArrayConfig{2, 2};
    c.ofdm = OfdmConfig{8};
    c.selection = BasisSelection::fixed(c.array.elements() * c.ofdm.n_subcarriers);
    c.methods = {Method::zero_fill, Method::ieb_pr};
    const auto r = run_sweep(scene(), c);
    ASSERT_EQ(r.records.size(), 20u);
    for (const auto &rec : r.records) {
        ASSERT_TRUE(rec.ok) << rec.error;
        EXPECT_EQ(rec.cell, rec.lookup_cell);
        if (rec.method == Method::zero_fill) {
            EXPECT_EQ(rec.nmse, 0.0);
        } else {
            EXPECT_LT(rec.nmse, 1e-20);
        }
        EXPECT_NEAR(rec.cs, 1.0, 1e-12);
        EXPECT_NEAR(rec.aar_ratio, 1.0, 1e-12);
    }
    EXPECT_EQ(r.at(0, Method::zero_fill).n_ok, 10);
    EXPECT_THROW(r.at(0, Method::lmmse), OutOfBounds);
    EXPECT_THROW(r.at(1, Method::zero_fill), OutOfBounds);
}

TEST(Sweep, GridExpansionAndRecordCounts) {
    auto c = small_config();
    c.snr_db = {0.0, 10.0};
    c.pilot_ratios = {PilotRatio{1, 4}, PilotRatio{1, 8}};
    c.horizon_ms = {0.0, 5.0};
    c.trials = 3;
    c.methods = {Method::ieb_pr, Method::zero_fill};
    const auto conds = expand_conditions(c);
    ASSERT_EQ(conds.size(), 8u);
    EXPECT_EQ(conds[1].snr_db, 0.0);
    EXPECT_EQ(conds[1].pilot_ratio, (PilotRatio{1, 4}));
    EXPECT_EQ(conds[1].horizon_ms, 5.0);
    EXPECT_EQ(conds[2].pilot_ratio, (PilotRatio{1, 8}));
    EXPECT_EQ(conds[4].snr_db, 10.0);
    const auto r = run_sweep(scene(), c);
    EXPECT_EQ(r.records.size(), 48u);
    EXPECT_EQ(r.summary.size(), 8u);
    EXPECT_EQ(r.grid_size_m, 5.0);
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const auto &rec = r.records[i];
        EXPECT_EQ(rec.condition_index, i / 6);
        EXPECT_EQ(rec.trial, static_cast<int>((i / 2) % 3));
        EXPECT_EQ(rec.method, c.methods[i % 2]);
    }
}

TEST(Sweep, OutputsAreByteIdenticalAcrossRunsAndJobs) {
    TempDir tmp;
    auto c = small_config();
    c.snr_db = {5.0};
    c.interference_a = {0.0, 0.5};
    c.methods = {Method::ieb_pr, Method::eb_pr, Method::lmmse, Method::zero_fill, Method::hold_last};
    c.trials = 6;
    const auto files_a = write_sweep_outputs(run_sweep(scene(), c), tmp / "a");
    const auto files_b = write_sweep_outputs(run_sweep(scene(), c), tmp / "b");
    c.jobs = 3;
    const auto files_c = write_sweep_outputs(run_sweep(scene(), c), tmp / "c");
    ASSERT_EQ(files_a, files_b);
    ASSERT_EQ(files_a, files_c);
    for (const auto &f : files_a) {
        EXPECT_EQ(slurp(tmp / "a" / f), slurp(tmp / "b" / f)) << f;
        EXPECT_EQ(slurp(tmp / "a" / f), slurp(tmp / "c" / f)) << f;
    }
    EXPECT_NE(std::find(files_a.begin(), files_a.end(), "records.csv"), files_a.end());
    EXPECT_NE(std::find(files_a.begin(), files_a.end(), "summary.json"), files_a.end());
    EXPECT_NE(std::find(files_a.begin(), files_a.end(), std::filesystem::path("curves/ieb-pr.tsv")), files_a.end());
    EXPECT_NE(std::find(files_a.begin(), files_a.end(), std::filesystem::path("curves/lmmse_cs_cdf.tsv")), files_a.end());
}

TEST(Sweep, RecordsCsvLayout) {
    TempDir tmp;
    auto c = small_config();
    c.trials = 4;
    c.methods = {Method::ieb_pr, Method::zero_fill};
    const auto r = run_sweep(scene(), c);
    write_sweep_outputs(r, tmp.path());
    std::ifstream in(tmp / "records.csv");
    std::string header;
    std::getline(in, header);
    std::string expect;
    for (const auto &col : record_columns())
        expect += (expect.empty() ? "" : ",") + col;
    EXPECT_EQ(header, expect);
    int lines = 0;
    for (std::string line; std::getline(in, line);)
        ++lines;
    EXPECT_EQ(lines, 8);
}

TEST(Sweep, InterferenceDegradesSimilarity) {
    auto c = small_config();
    c.snr_db = {10.0};
    c.interference_a = {0.0, 0.9};
    c.trials = 100;
    c.methods = {Method::ieb_pr, Method::zero_fill};
    const auto r = run_sweep(scene(), c);
    for (auto m : c.methods) {
        EXPECT_EQ(r.at(0, m).n_failed, 0);
        EXPECT_GT(r.at(0, m).cs_mean, r.at(1, m).cs_mean) << to_string(m);
    }
}

TEST(Sweep, FailuresAreRecordedNotThrown) {
    auto c = small_config();
    c.array = ArrayConfig{2, 2};
    c.ofdm = OfdmConfig{32};
    c.selection = BasisSelection::fixed(15);
    c.pilot_ratios = {PilotRatio{1, 32}};
    c.projection = ProjectionMode::masked_ls;
    c.trials = 3;
    c.methods = {Method::ieb_pr, Method::zero_fill};
    const auto r = run_sweep(scene(), c);
    const auto &ieb = r.at(0, Method::ieb_pr);
    EXPECT_EQ(ieb.n_failed, 3);
    EXPECT_EQ(ieb.n_ok, 0);
    EXPECT_TRUE(std::isnan(ieb.nmse_mean));
    EXPECT_EQ(r.at(0, Method::zero_fill).n_ok, 3);
    for (const auto &rec : r.records)
        if (rec.method == Method::ieb_pr) {
            EXPECT_FALSE(rec.ok);
            EXPECT_FALSE(rec.error.empty());
            EXPECT_TRUE(std::isnan(rec.nmse));
        }
}

TEST(SweepConfig, JsonRoundTrip) {
    auto c = small_config();
    c.snr_db = {kInf, -3.5, 20.0};
    c.pilot_ratios = {PilotRatio{1, 4}, PilotRatio{3, 16}};
    c.methods = {Method::lmmse_pooled, Method::hold_last};
    c.lmmse_training = LmmseTraining::ideal;
    c.selection = BasisSelection::energy(0.9);
    const auto j = to_json(c);
    EXPECT_EQ(j.at("snr_db")[0], "inf");
    auto back = sweep_config_from_json(j);
    back.jobs = c.jobs;
    EXPECT_EQ(back, c);
    EXPECT_EQ(parse_lmmse_training("noisy"), LmmseTraining::noisy);
    EXPECT_THROW(parse_lmmse_training("oracle"), ConfigError);
}

TEST(SweepConfig, Validation) {
    auto bad = [](auto mutate) {
        auto c = small_config();
        mutate(c);
        return c;
    };
    EXPECT_NO_THROW(small_config().validate());
    EXPECT_THROW(bad([](SweepConfig &c) { c.snr_db.clear(); }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.trials = 0; }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.methods.clear(); }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.methods = {Method::lmmse, Method::lmmse}; }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.interference_a = {1.5}; }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.loc_error_m = {-1.0}; }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.snr_db = {std::nan("")}; }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.jobs = 0; }).validate(), ConfigError);
    EXPECT_THROW(run_sweep(scene(), bad([](SweepConfig &c) { c.trials = 0; })), ConfigError);
}
