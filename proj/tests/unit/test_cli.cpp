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

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "../../tools/src/commands.hpp"
#include "ebcsi/scene.hpp"
#include "ebcsi/subspace.hpp"
#include "ebcsi/tensor_io.hpp"
#include "test_util.hpp"

using namespace ebcsi;
using ebcsi::testing::TempDir;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string digest_of(const std::string &out) {
    const auto pos = out.find("output digest: ");
    return pos == std::string::npos ? std::string() : out.substr(pos + 15, 64);
}

nlohmann::json read_json(const std::filesystem::path &p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

std::string make_scene(const TempDir &tmp, const std::string &name = "scene") {
    const auto o = run_cli({"gen-scene", "--extent", "10", "--seed", "2", "--out", (tmp / name).string()});
    EXPECT_EQ(o.code, 0) << o.err;
    return (tmp / name / "scene.json").string();
}

} // namespace

TEST(Cli, GenSceneWritesGridAndManifest) {
    TempDir tmp;
    const auto o = run_cli({"gen-scene", "--extent", "40", "--grid-size", "5", "--seed", "7", "--out", tmp.path().string()});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(read_json(tmp / "scene.json").at("cells").size(), 64u);
    EXPECT_EQ(load_scene(tmp / "scene.json").config().seed, 7u);
    const auto manifest = read_json(tmp / "run_manifest.json");
    EXPECT_EQ(manifest.at("command"), "gen-scene");
    EXPECT_FALSE(manifest.contains("jobs"));
    EXPECT_TRUE(std::filesystem::exists(tmp / "run_timings.json"));
    EXPECT_EQ(digest_of(o.out).size(), 64u);
}

TEST(Cli, GenSceneIsDeterministic) {
    TempDir tmp;
    const std::vector<std::string> args{"gen-scene", "--extent", "20", "--seed", "3", "--out", tmp.path().string()};
    const auto a = run_cli(args);
    ASSERT_EQ(a.code, 0);
    const auto scene_hash = sha256_file(tmp / "scene.json");
    const auto b = run_cli(args);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(digest_of(a.out), digest_of(b.out));
    EXPECT_EQ(sha256_file(tmp / "scene.json"), scene_hash);
    auto with_jobs = args;
    with_jobs.insert(with_jobs.begin(), {"--jobs", "4"});
    EXPECT_EQ(digest_of(run_cli(with_jobs).out), digest_of(a.out));
    auto other_seed = args;
    other_seed[4] = "4";
    EXPECT_NE(digest_of(run_cli(other_seed).out), digest_of(a.out));
}

TEST(Cli, UsageErrorsExitTwo) {
    TempDir tmp;
    EXPECT_EQ(run_cli({"gen-scene", "--seed", "1", "--out", tmp.path().string()}).code, 2);
    EXPECT_EQ(run_cli({"gen-scene", "--extent", "42", "--seed", "1", "--out", tmp.path().string()}).code, 2);
    EXPECT_EQ(run_cli({"gen-scene", "--extent", "40", "--seed", "1", "--paths", "3", "--out", tmp.path().string()}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
    EXPECT_FALSE(std::filesystem::exists(tmp / "scene.json"));
}

TEST(Cli, ExtractEbFixedAndEnergyCounts) {
    TempDir tmp;
    const auto scene = make_scene(tmp);
    const auto o = run_cli({"extract-eb", "--scene", scene, "--n-b", "15", "--out", (tmp / "eb").string()});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto store = load_store(tmp / "eb");
    ASSERT_EQ(store.bases().size(), 4u);
    for (const auto &[id, b] : store.bases()) {
        EXPECT_EQ(b.u.cols(), 15);
        EXPECT_EQ(b.u.rows(), 1024);
    }

    const auto e = run_cli({"extract-eb", "--scene", scene, "--energy", "0.95", "--out", (tmp / "energy").string()});
    ASSERT_EQ(e.code, 0) << e.err;
    const auto energy_store = load_store(tmp / "energy");
    for (const auto &[id, b] : energy_store.bases()) {
        EXPECT_GE(energy_ratio(b.singular_values, b.n_b), 0.95);
        if (b.n_b > 1) {
            EXPECT_LT(energy_ratio(b.singular_values, b.n_b - 1), 0.95);
        }
    }
    EXPECT_EQ(run_cli({"extract-eb", "--scene", scene, "--n-b", "0", "--out", (tmp / "z").string()}).code, 2);
    EXPECT_EQ(run_cli({"extract-eb", "--scene", (tmp / "nope.json").string(), "--out", (tmp / "z").string()}).code, 1);
}

TEST(Cli, SweepGridArithmeticAndReproducibility) {
    TempDir tmp;
    const auto scene = make_scene(tmp);
    const std::vector<std::string> base{"sweep",       "--scene",  scene,         "--snr",   "0,10",  "--pilot-ratios",
                                        "1/4,1/8",     "--trials", "1",           "--seed",  "3",     "--methods",
                                        "ieb-pr,zero-fill", "--array", "4x4", "--subcarriers", "16", "--n-b", "8"};
    auto args = base;
    args.insert(args.end(), {"--out", (tmp / "a").string()});
    const auto a = run_cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    const auto csv_hash = sha256_file(tmp / "a" / "records.csv");
    args.insert(args.begin(), {"--jobs", "2"});
    const auto b = run_cli(args);
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(digest_of(a.out), digest_of(b.out));
    EXPECT_EQ(sha256_file(tmp / "a" / "records.csv"), csv_hash);
    std::ifstream csv(tmp / "a" / "records.csv");
    int lines = 0;
    for (std::string line; std::getline(csv, line);)
        ++lines;
    EXPECT_EQ(lines, 1 + 2 * 2 * 1 * 2);
    EXPECT_EQ(read_json(tmp / "a" / "summary.json").at("conditions").size(), 4u);
}

TEST(Cli, SweepRejectsUnknownMethodWithListing) {
    TempDir tmp;
    const auto scene = make_scene(tmp);
    const auto o = run_cli({"sweep", "--scene", scene, "--methods", "ieb-pr,oracle", "--out", (tmp / "s").string()});
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("oracle"), std::string::npos);
    EXPECT_NE(o.err.find("lmmse-pooled"), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists(tmp / "s"));
    EXPECT_EQ(run_cli({"sweep", "--scene", scene, "--pilot-ratios", "0", "--out", (tmp / "s").string()}).code, 2);
    EXPECT_EQ(run_cli({"sweep", "--scene", scene, "--interference-a", "2", "--out", (tmp / "s").string()}).code, 2);
}

TEST(Cli, ExportDatasetValidationAndRun) {
    TempDir tmp;
    const auto scene = make_scene(tmp);
    EXPECT_EQ(run_cli({"export-dataset", "--scene", scene, "--split", "0.5,0.5,0.5", "--out", (tmp / "d").string()}).code,
              2);
    EXPECT_EQ(run_cli({"export-dataset", "--scene", scene, "--split", "0.5,0.5", "--out", (tmp / "d").string()}).code, 2);
    EXPECT_EQ(run_cli({"export-dataset", "--scene", (tmp / "none.json").string(), "--out", (tmp / "d").string()}).code, 1);
    const auto o = run_cli({"export-dataset", "--scene", scene, "--split", "0.5,0.25,0.25", "--conditions", "0:1/4,inf:1",
                            "--users-per-side", "1", "--array", "2x2", "--subcarriers", "8", "--n-b", "4", "--out",
                            (tmp / "d").string()});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto m = read_json(tmp / "d" / "manifest.json");
    EXPECT_EQ(m.at("splits").at("train").at("n_records"), 4);
    EXPECT_TRUE(std::filesystem::exists(tmp / "d" / "eb" / "manifest.json"));
    EXPECT_TRUE(std::filesystem::exists(tmp / "d" / "run_manifest.json"));
}

TEST(Cli, OutputDirectoryFromEnvironment) {
    TempDir tmp;
    ::setenv("EBCSI_OUT_DIR", (tmp / "env").string().c_str(), 1);
    const auto o = run_cli({"gen-scene", "--extent", "10", "--seed", "1"});
    ::unsetenv("EBCSI_OUT_DIR");
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_TRUE(std::filesystem::exists(tmp / "env" / "scene.json"));
}

TEST(Cli, ConfigFileDefaultsYieldToFlags) {
    TempDir tmp;
    {
        std::ofstream cfg(tmp / "cfg.toml");
        cfg << "[gen-scene]\nextent = 20\nseed = 5\n";
    }
    const auto a = run_cli({"--config", (tmp / "cfg.toml").string(), "gen-scene", "--out", (tmp / "a").string()});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(read_json(tmp / "a" / "scene.json").at("cells").size(), 16u);
    EXPECT_EQ(load_scene(tmp / "a" / "scene.json").config().seed, 5u);
    const auto b = run_cli(
        {"--config", (tmp / "cfg.toml").string(), "gen-scene", "--extent", "40", "--out", (tmp / "b").string()});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(read_json(tmp / "b" / "scene.json").at("cells").size(), 64u);
    EXPECT_EQ(run_cli({"--config", (tmp / "missing.toml").string(), "gen-scene"}).code, 2);
}
