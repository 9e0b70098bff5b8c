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

#include "ebcsi/dataset.hpp"
#include "ebcsi/error.hpp"
#include "ebcsi/parallel.hpp"
#include "ebcsi/rng.hpp"
#include "ebcsi/tensor_io.hpp"

namespace ebcsi {

namespace {

constexpr const char *kDatasetFormat = "ebcsi.dataset";
constexpr int kDatasetVersion = 1;

struct CellBuffers {
    std::vector<std::uint8_t> h_true, h_obs, mask;
    nlohmann::json records = nlohmann::json::array();
};

CellBuffers render_cell(const SceneGrid &scene, const DatasetConfig &cfg, const CellId &cell) {
    CellBuffers out;
    const double g = scene.config().grid_size_m;
    const int u = cfg.users_per_side;
    for (int iy = 0; iy < u; ++iy) {
        for (int ix = 0; ix < u; ++ix) {
            const Coords user{(cell.col + (ix + 0.5) / u) * g, (cell.row + (iy + 0.5) / u) * g};
            const auto user_index = static_cast<std::uint64_t>(iy * u + ix);
            std::vector<CMatrix> frames;
            frames.reserve(static_cast<std::size_t>(cfg.sequence_length));
            for (int f = 0; f < cfg.sequence_length; ++f)
                frames.push_back(channel_at(scene, user, f * cfg.time_step_s, cfg.array, cfg.ofdm).data);
            for (std::size_t c = 0; c < cfg.conditions.size(); ++c) {
                const auto &cond = cfg.conditions[c];
                const auto base = derive_seed(cfg.seed, {0xDA7A, static_cast<std::uint64_t>(cell.row),
                                                         static_cast<std::uint64_t>(cell.col), user_index, c});
                const auto mask = make_mask(cfg.array.elements(), cfg.ofdm.n_subcarriers, cond.pilot_ratio,
                                            cfg.mask_pattern, derive_seed(base, {0x3A5C}));
                for (int f = 0; f < cfg.sequence_length; ++f) {
                    const auto &h = frames[static_cast<std::size_t>(f)];
                    const double var = noise_variance(h, cond.snr_db);
                    append_complex_matrix(out.h_true, h);
                    append_complex_matrix(out.h_obs,
                                          observe(add_noise(h, var, derive_seed(base, {0x0B5E, static_cast<std::uint64_t>(f)})), mask));
                }
                append_real_matrix(out.mask, mask.data);
                out.records.push_back({{"cell", {cell.row, cell.col}},
                                       {"user", {user.x, user.y}},
                                       {"user_index", user_index},
                                       {"condition", c}});
            }
        }
    }
    return out;
}

nlohmann::json condition_json(const DatasetCondition &c) {
    nlohmann::json snr = c.snr_db;
    if (std::isinf(c.snr_db))
        snr = "inf";
    return {{"snr_db", snr}, {"pilot_ratio", c.pilot_ratio.str()}};
}

nlohmann::json cells_json(const std::vector<CellId> &cells) {
    auto j = nlohmann::json::array();
    for (const auto &c : cells)
        j.push_back({c.row, c.col});
    return j;
}

Tensor read_tensor(const std::filesystem::path &dir, const nlohmann::json &spec) {
    const auto path = dir / spec.at("file").get<std::string>();
    if (!std::filesystem::exists(path))
        throw IoError("dataset tensor missing: " + path.string());
    const auto bytes = read_bytes(path);
    if (sha256_hex(bytes.data(), bytes.size()) != spec.at("sha256").get<std::string>())
        throw ChecksumError("checksum mismatch for " + path.string());
    Tensor t;
    t.shape = spec.at("shape").get<std::vector<std::int64_t>>();
    t.complex = spec.at("dtype").get<std::string>() == "complex128";
    t.values = decode_f64(bytes);
    if (t.values.size() != t.element_count() * (t.complex ? 2 : 1))
        throw IoError("tensor " + path.string() + " does not match its manifest shape");
    return t;
}

} // namespace

void SplitRatios::validate() const {
    if (!(train >= 0.0 && val >= 0.0 && test >= 0.0))
        throw ConfigError("split ratios must be nonnegative");
    if (std::abs(train + val + test - 1.0) > 1e-9)
        throw ConfigError("split ratios must sum to 1");
}

void DatasetConfig::validate() const {
    if (conditions.empty())
        throw ConfigError("dataset needs at least one condition");
    for (const auto &c : conditions) {
        if (std::isnan(c.snr_db) || c.snr_db == -std::numeric_limits<double>::infinity())
            throw ConfigError("condition SNR must be finite or +inf");
        pilot_count(ofdm.n_subcarriers, c.pilot_ratio);
    }
    if (users_per_side < 1)
        throw ConfigError("users per side must be at least 1");
    if (sequence_length < 1)
        throw ConfigError("sequence length must be at least 1");
    if (!(time_step_s >= 0.0) || !std::isfinite(time_step_s))
        throw ConfigError("time step must be finite and nonnegative");
    if (jobs < 1)
        throw ConfigError("jobs must be at least 1");
    split.validate();
    array.validate();
    ofdm.validate();
}

nlohmann::json to_json(const DatasetConfig &c) {
    auto conds = nlohmann::json::array();
    for (const auto &k : c.conditions)
        conds.push_back(condition_json(k));
    return {{"conditions", conds},
            {"users_per_side", c.users_per_side},
            {"sequence_length", c.sequence_length},
            {"time_step_s", c.time_step_s},
            {"split", {c.split.train, c.split.val, c.split.test}},
            {"seed", c.seed},
            {"array", to_json(c.array)},
            {"ofdm", to_json(c.ofdm)},
            {"mask_pattern", to_string(c.mask_pattern)},
            {"eb", to_json(c.eb)}};
}

CellSplit split_cells(std::vector<CellId> cells, const SplitRatios &ratios, Seed seed) {
    ratios.validate();
    auto rng = make_rng(seed, {0x5B11});
    std::shuffle(cells.begin(), cells.end(), rng);
    const auto n = static_cast<double>(cells.size());
    // The epsilon keeps exact products such as 0.7 * 1000 from flooring down.
    const auto n_train = static_cast<std::size_t>(std::floor(ratios.train * n + 1e-9));
    const auto n_val = std::min(cells.size() - n_train, static_cast<std::size_t>(std::floor(ratios.val * n + 1e-9)));
    CellSplit s;
    s.train.assign(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.val.assign(cells.begin() + static_cast<std::ptrdiff_t>(n_train),
                 cells.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    s.test.assign(cells.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), cells.end());
    return s;
}

std::size_t Tensor::element_count() const {
    std::size_t n = 1;
    for (auto d : shape)
        n *= static_cast<std::size_t>(d);
    return n;
}

DatasetSummary export_dataset(const SceneGrid &scene, const DatasetConfig &config, const std::filesystem::path &dir) {
    namespace fs = std::filesystem;
    config.validate();
    std::vector<CellId> ids;
    for (const auto &c : scene.cells())
        ids.push_back(c.id);
    const auto split = split_cells(ids, config.split, config.seed);

    fs::create_directories(dir);
    const auto m_t = static_cast<std::int64_t>(config.array.elements());
    const auto n_sc = static_cast<std::int64_t>(config.ofdm.n_subcarriers);
    const auto t_len = static_cast<std::int64_t>(config.sequence_length);
    const std::size_t per_cell = static_cast<std::size_t>(config.users_per_side * config.users_per_side) *
                                 config.conditions.size();

    nlohmann::json manifest;
    manifest["format"] = kDatasetFormat;
    manifest["version"] = kDatasetVersion;
    manifest["dtypes"] = {{"complex128", "little-endian float64 pairs (re, im)"},
                          {"float64", "little-endian float64"}};
    manifest["layout"] = "row-major";
    manifest["scene"] = to_json(scene.config());
    manifest["config"] = to_json(config);
    manifest["seeds"] = {{"master", config.seed},
                         {"eb_noise", config.eb.snapshots.noise ? nlohmann::json(config.eb.snapshots.noise->seed)
                                                                : nlohmann::json(nullptr)},
                         {"scene", scene.config().seed}};
    manifest["splits"] = nlohmann::json::object();
    manifest["records"] = nlohmann::json::object();

    DatasetSummary summary;
    const std::pair<const char *, const std::vector<CellId> *> parts[] = {
        {"train", &split.train}, {"val", &split.val}, {"test", &split.test}};
    for (const auto &[name, cells] : parts) {
        std::vector<CellBuffers> bufs(cells->size());
        parallel_for(cells->size(), config.jobs,
                     [&](std::size_t i) { bufs[i] = render_cell(scene, config, (*cells)[i]); });

        const std::string s = name;
        const auto n = static_cast<std::int64_t>(cells->size() * per_cell);
        auto records = nlohmann::json::array();
        std::vector<std::uint8_t> h_true, h_obs, mask;
        for (auto &b : bufs) {
            h_true.insert(h_true.end(), b.h_true.begin(), b.h_true.end());
            h_obs.insert(h_obs.end(), b.h_obs.begin(), b.h_obs.end());
            mask.insert(mask.end(), b.mask.begin(), b.mask.end());
            for (auto &r : b.records)
                records.push_back(std::move(r));
            b = CellBuffers{};
        }
        auto tensor_entry = [&](const std::string &key, const std::vector<std::uint8_t> &bytes,
                                std::vector<std::int64_t> shape, const char *dtype) {
            const std::string file = s + "_" + key + ".bin";
            write_bytes(dir / file, bytes);
            summary.files.emplace_back(file);
            return nlohmann::json{{"file", file},
                                  {"shape", shape},
                                  {"dtype", dtype},
                                  {"sha256", sha256_hex(bytes.data(), bytes.size())}};
        };
        nlohmann::json sj;
        sj["cells"] = cells_json(*cells);
        sj["n_records"] = n;
        sj["tensors"] = {{"h_true", tensor_entry("h_true", h_true, {n, t_len, m_t, n_sc}, "complex128")},
                         {"h_obs", tensor_entry("h_obs", h_obs, {n, t_len, m_t, n_sc}, "complex128")},
                         {"mask", tensor_entry("mask", mask, {n, m_t, n_sc}, "float64")}};
        manifest["splits"][s] = std::move(sj);
        manifest["records"][s] = std::move(records);
        if (s == "train")
            summary.train_records = static_cast<std::size_t>(n);
        else if (s == "val")
            summary.val_records = static_cast<std::size_t>(n);
        else
            summary.test_records = static_cast<std::size_t>(n);
    }

    const auto store = build_store(scene, config.array, config.ofdm, config.eb, config.jobs);
    save_store(store, dir / "eb");
    for (const auto &entry : fs::directory_iterator(dir / "eb"))
        summary.files.push_back(fs::path("eb") / entry.path().filename());
    manifest["eb"] = {{"dir", "eb"}, {"noisy", store.noisy()}};

    std::ofstream f(dir / "manifest.json", std::ios::binary);
    if (!f)
        throw IoError("cannot write " + (dir / "manifest.json").string());
    f << manifest.dump(2) << '\n';
    if (!f)
        throw IoError("failed writing " + (dir / "manifest.json").string());
    summary.files.emplace_back("manifest.json");
    std::sort(summary.files.begin(), summary.files.end());
    return summary;
}

Dataset load_dataset(const std::filesystem::path &dir) {
    const auto path = dir / "manifest.json";
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open " + path.string());
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(f);
        if (manifest.at("format").get<std::string>() != kDatasetFormat ||
            manifest.at("version").get<int>() != kDatasetVersion)
            throw IoError(path.string() + " is not a version " + std::to_string(kDatasetVersion) + " dataset manifest");
        std::map<std::string, Tensor> tensors;
        for (const auto &[split, sj] : manifest.at("splits").items())
            for (const auto &[key, spec] : sj.at("tensors").items())
                tensors.emplace(split + "/" + key, read_tensor(dir, spec));
        auto eb = load_store(dir / manifest.at("eb").at("dir").get<std::string>());
        return Dataset{std::move(manifest), std::move(tensors), std::move(eb)};
    } catch (const nlohmann::json::exception &e) {
        throw IoError("malformed dataset manifest " + path.string() + ": " + e.what());
    }
}

} // namespace ebcsi
