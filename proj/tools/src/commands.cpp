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

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "ebcsi/dataset.hpp"
#include "ebcsi/error.hpp"
#include "ebcsi/parallel.hpp"
#include "ebcsi/scene.hpp"
#include "ebcsi/subspace.hpp"
#include "ebcsi/sweep.hpp"
#include "ebcsi/tensor_io.hpp"

#ifndef EBCSI_VERSION
#define EBCSI_VERSION "0.0.0"
#endif

namespace ebcsi::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr const char *kOutDirEnv = "EBCSI_OUT_DIR";

// Raised while resolving flags into configs; maps to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (item.empty())
            throw UsageError("empty item in list '" + s + "'");
        out.push_back(item);
    }
    if (out.empty())
        throw UsageError("empty list");
    return out;
}

double parse_double(const std::string &s, const std::string &what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size() && !std::isnan(v))
            return v;
    } catch (const std::exception &) {
    }
    throw UsageError("invalid " + what + " '" + s + "'");
}

std::vector<double> parse_doubles(const std::string &s, const std::string &what) {
    std::vector<double> out;
    for (const auto &item : split_list(s))
        out.push_back(parse_double(item, what));
    return out;
}

PilotRatio parse_ratio(const std::string &s) {
    try {
        return PilotRatio::parse(s);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
}

fs::path default_out_dir() {
    if (const char *env = std::getenv(kOutDirEnv); env && *env)
        return env;
    return "ebcsi-out";
}

struct RadioFlags {
    std::string array = "8x4";
    double spacing = 0.5;
    int subcarriers = 32;
    double bandwidth = 25.0e6;
    double carrier = 6.5e9;
    CLI::Option *carrier_opt = nullptr;

    void add(CLI::App *app) {
        app->add_option("--array", array, "UPA shape ROWSxCOLS")->capture_default_str();
        app->add_option("--spacing", spacing, "element spacing in wavelengths")->capture_default_str();
        app->add_option("--subcarriers", subcarriers, "number of OFDM subcarriers")->capture_default_str();
        app->add_option("--bandwidth", bandwidth, "bandwidth in Hz")->capture_default_str();
        carrier_opt = app->add_option("--carrier", carrier, "carrier frequency in Hz (default: the scene's)");
    }

    ArrayConfig array_config() const {
        const auto x = array.find('x');
        ArrayConfig a;
        try {
            if (x == std::string::npos)
                throw std::invalid_argument("");
            std::size_t u1 = 0, u2 = 0;
            const auto rows = array.substr(0, x), cols = array.substr(x + 1);
            a.m_rows = std::stoi(rows, &u1);
            a.m_cols = std::stoi(cols, &u2);
            if (u1 != rows.size() || u2 != cols.size())
                throw std::invalid_argument("");
        } catch (const std::exception &) {
            throw UsageError("invalid --array '" + array + "', expected ROWSxCOLS");
        }
        a.spacing_wavelengths = spacing;
        a.validate();
        return a;
    }

    OfdmConfig ofdm_config(const SceneConfig &scene) const {
        OfdmConfig o{subcarriers, bandwidth, carrier_opt->count() ? carrier : scene.carrier_hz};
        o.validate();
        return o;
    }
};

struct ExtractionFlags {
    int n_b = 15;
    double energy = 0.0;
    double noisy_snr = 0.0;
    Seed noise_seed = 1;
    int n_times = 10;
    double time_step = 0.040;
    std::string doppler = "time-samples";
    bool zero_velocity = false;
    CLI::Option *energy_opt = nullptr;
    CLI::Option *noisy_opt = nullptr;

    void add(CLI::App *app, const std::string &noisy_flag) {
        app->add_option("--n-b", n_b, "basis vectors per cell")->check(CLI::PositiveNumber)->capture_default_str();
        energy_opt = app->add_option("--energy", energy, "select n_b per cell as the smallest count reaching this energy ratio")
                         ->check(CLI::Range(0.0, 1.0));
        if (!noisy_flag.empty()) {
            noisy_opt = app->add_option(noisy_flag, noisy_snr, "extract from snapshots corrupted at this SNR (dB)");
            app->add_option("--noise-seed", noise_seed, "seed of the snapshot noise")->capture_default_str();
        }
        app->add_option("--n-times", n_times, "time samples per vertex")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--time-step", time_step, "spacing of the vertex time samples in s")->capture_default_str();
        app->add_option("--doppler", doppler, "time-samples or independent")->capture_default_str();
        app->add_flag("--zero-velocity", zero_velocity, "disable Doppler rotation of the vertex snapshots");
    }

    ExtractionSettings settings() const {
        ExtractionSettings s;
        s.snapshots.n_times = n_times;
        s.snapshots.time_step_s = time_step;
        s.snapshots.zero_velocity = zero_velocity;
        s.snapshots.doppler = parse_doppler_mode(doppler);
        s.selection = energy_opt->count() ? BasisSelection::energy(energy) : BasisSelection::fixed(n_b);
        if (energy_opt->count() && !(energy > 0.0))
            throw UsageError("--energy must lie in (0, 1]");
        if (noisy_opt && noisy_opt->count())
            s.snapshots.noise = NoiseSpec{noisy_snr, noise_seed};
        return s;
    }
};

// Wall-clock timings per stage, kept out of the deterministic manifest.
class Stages {
  public:
    template <typename Fn>
    auto run(const std::string &name, Fn &&fn) {
        const auto t0 = std::chrono::steady_clock::now();
        struct Record {
            Stages *self;
            std::string name;
            std::chrono::steady_clock::time_point t0;
            ~Record() {
                self->t_[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            }
        } rec{this, name, t0};
        return fn();
    }
    const json &timings() const { return t_; }

  private:
    json t_ = json::object();
};

void write_json(const fs::path &p, const json &j) {
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw IoError("cannot write " + p.string());
    f << j.dump(2) << '\n';
    if (!f)
        throw IoError("failed writing " + p.string());
}

json input_entry(const fs::path &p) {
    return {{"path", p.generic_string()}, {"sha256", sha256_file(p)}};
}

// Writes run_manifest.json and run_timings.json and prints the digest of every
// deterministic artifact.
void finish(const fs::path &out_dir, const std::string &command, json config, json inputs,
            std::vector<fs::path> outputs, const Stages &stages, int jobs, std::ostream &out) {
    std::sort(outputs.begin(), outputs.end());
    json man;
    man["tool"] = "ebcsi";
    man["version"] = EBCSI_VERSION;
    man["command"] = command;
    man["config"] = std::move(config);
    man["inputs"] = std::move(inputs);
    man["output_dir"] = out_dir.generic_string();
    man["outputs"] = json::array();
    std::string listing;
    for (const auto &p : outputs) {
        const auto sha = sha256_file(out_dir / p);
        man["outputs"].push_back({{"path", p.generic_string()}, {"sha256", sha}});
        listing += p.generic_string() + '\t' + sha + '\n';
    }
    write_json(out_dir / "run_manifest.json", man);
    listing += "run_manifest.json\t" + sha256_file(out_dir / "run_manifest.json") + '\n';
    write_json(out_dir / "run_timings.json", {{"stages_s", stages.timings()}, {"jobs", jobs}});

    out << command << ": " << outputs.size() << " artifacts in " << out_dir.generic_string() << '\n';
    out << "output digest: " << sha256_hex(listing.data(), listing.size()) << '\n';
}

SceneGrid read_scene(const fs::path &p) {
    if (!fs::exists(p))
        throw IoError("scene file not found: " + p.string());
    return load_scene(p);
}

// A command resolves its flags (usage errors) and returns the work to run.
using Action = std::function<void(std::ostream &)>;

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"ebcsi: environment subspace basis toolkit for partial-to-whole CSI prediction", "ebcsi"};
    app.set_version_flag("--version", EBCSI_VERSION);
    app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags take precedence");
    app.require_subcommand(1);
    int jobs = default_jobs();
    app.add_option("--jobs", jobs, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
    std::string out_dir;

    // gen-scene
    auto *gen = app.add_subcommand("gen-scene", "generate a synthetic gridded scene");
    SceneConfig scfg;
    std::string paths = "3:8";
    gen->add_option("--extent", scfg.extent_m, "scene side length in m")->required();
    gen->add_option("--grid-size", scfg.grid_size_m, "grid cell side in m")->capture_default_str();
    gen->add_option("--seed", scfg.seed, "scene seed")->required();
    gen->add_option("--los-fraction", scfg.los_fraction, "fraction of LoS cells")->capture_default_str();
    gen->add_option("--paths", paths, "path count range MIN:MAX")->capture_default_str();
    gen->add_option("--jitter", scfg.intra_cell_jitter, "intra-cell parameter jitter (0 = frozen paths)")
        ->capture_default_str();
    gen->add_option("--carrier", scfg.carrier_hz, "carrier frequency in Hz")->capture_default_str();
    gen->add_option("--delay-span", scfg.delay_span_s, "delay domain width in s");
    gen->add_option("--out", out_dir, "output directory (default $EBCSI_OUT_DIR or ./ebcsi-out)");

    // extract-eb
    auto *ext = app.add_subcommand("extract-eb", "extract per-cell environment bases into an EB store");
    std::string scene_path;
    RadioFlags ext_radio;
    ExtractionFlags ext_flags;
    ext->add_option("--scene", scene_path, "scene file from gen-scene")->required();
    ext_radio.add(ext);
    ext_flags.add(ext, "--noisy-snr");
    ext->add_option("--out", out_dir, "store directory (default $EBCSI_OUT_DIR or ./ebcsi-out)");

    // sweep
    auto *swp = app.add_subcommand("sweep", "run a Monte-Carlo evaluation sweep");
    RadioFlags swp_radio;
    ExtractionFlags swp_flags;
    std::string snr = "0", ratios = "1/8", inter = "0", loc = "0", horizon = "0";
    std::string methods = "ieb-pr,eb-pr,lmmse,zero-fill", projection = "zero-fill", mask = "comb",
                training = "noisy";
    SweepConfig sc;
    swp->add_option("--scene", scene_path, "scene file from gen-scene")->required();
    swp->add_option("--snr", snr, "SNR grid in dB, comma separated (inf = noiseless)")->capture_default_str();
    swp->add_option("--pilot-ratios", ratios, "pilot ratio grid, e.g. 1/4,1/8")->capture_default_str();
    swp->add_option("--interference-a", inter, "interference weight grid in [0, 1]")->capture_default_str();
    swp->add_option("--loc-error", loc, "localization error grid in m")->capture_default_str();
    swp->add_option("--horizon-ms", horizon, "prediction horizon grid in ms")->capture_default_str();
    swp->add_option("--methods", methods, "comma separated methods")->capture_default_str();
    swp->add_option("--trials", sc.trials, "trials per condition")->check(CLI::PositiveNumber)->capture_default_str();
    swp->add_option("--seed", sc.seed, "master seed")->capture_default_str();
    swp->add_option("--projection", projection, "zero-fill or masked-ls")->capture_default_str();
    swp->add_option("--mask", mask, "comb or random")->capture_default_str();
    swp->add_option("--lmmse-training", training, "noisy or ideal")->capture_default_str();
    swp->add_option("--reference-snr", sc.reference_snr_db, "noise power for noiseless conditions (dB)")
        ->capture_default_str();
    swp->add_option("--time-span", sc.time_span_s, "user times are drawn from [0, span] s")->capture_default_str();
    swp_radio.add(swp);
    swp_flags.add(swp, "");
    swp->add_option("--out", out_dir, "report directory (default $EBCSI_OUT_DIR or ./ebcsi-out)");

    // export-dataset
    auto *exp = app.add_subcommand("export-dataset", "export a split training dataset");
    RadioFlags exp_radio;
    ExtractionFlags exp_flags;
    DatasetConfig dc;
    std::string split = "0.7,0.1,0.2", conditions = "0:1/8", exp_mask = "comb";
    exp->add_option("--scene", scene_path, "scene file from gen-scene")->required();
    exp->add_option("--split", split, "train,val,test ratios summing to 1")->capture_default_str();
    exp->add_option("--conditions", conditions, "comma separated SNR:RATIO pairs, e.g. 0:1/8,10:1/4")
        ->capture_default_str();
    exp->add_option("--users-per-side", dc.users_per_side, "users per cell = value^2")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    exp->add_option("--sequence-length", dc.sequence_length, "frames per record")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    exp->add_option("--frame-step", dc.time_step_s, "time between frames in s")->capture_default_str();
    exp->add_option("--seed", dc.seed, "dataset seed")->capture_default_str();
    exp->add_option("--mask", exp_mask, "comb or random")->capture_default_str();
    exp_radio.add(exp);
    exp_flags.add(exp, "--eb-noisy-snr");
    exp->add_option("--out", out_dir, "dataset directory (default $EBCSI_OUT_DIR or ./ebcsi-out)");

    std::vector<const char *> argv{"ebcsi"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    const fs::path out_path = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
    Action action;
    try {
        if (*gen) {
            const auto range = split_list(paths, ':');
            if (range.size() != 2)
                throw UsageError("invalid --paths '" + paths + "', expected MIN:MAX");
            scfg.path_min = static_cast<int>(parse_double(range[0], "--paths minimum"));
            scfg.path_max = static_cast<int>(parse_double(range[1], "--paths maximum"));
            scfg.validate();
            action = [&, scfg](std::ostream &o) {
                Stages st;
                const auto scene = st.run("generate", [&] { return generate_scene(scfg); });
                fs::create_directories(out_path);
                st.run("write", [&] { save_scene(scene, out_path / "scene.json"); return 0; });
                finish(out_path, "gen-scene", {{"scene", to_json(scfg)}}, json::array(), {"scene.json"}, st, jobs, o);
            };
        } else if (*ext) {
            const auto settings = ext_flags.settings();
            const auto array = ext_radio.array_config();
            action = [&, settings, array](std::ostream &o) {
                Stages st;
                const auto scene = st.run("load", [&] { return read_scene(scene_path); });
                const auto ofdm = ext_radio.ofdm_config(scene.config());
                const auto store = st.run("extract", [&] { return build_store(scene, array, ofdm, settings, jobs); });
                st.run("write", [&] { save_store(store, out_path); return 0; });
                std::vector<fs::path> outputs{"manifest.json"};
                for (const auto &[id, b] : store.bases())
                    outputs.emplace_back("cell_" + id.str() + ".bin");
                json cfg{{"array", to_json(array)}, {"ofdm", to_json(ofdm)}, {"extraction", to_json(settings)}};
                finish(out_path, "extract-eb", cfg, json::array({input_entry(scene_path)}), outputs, st, jobs, o);
            };
        } else if (*swp) {
            sc.snr_db = parse_doubles(snr, "SNR");
            sc.pilot_ratios.clear();
            for (const auto &r : split_list(ratios))
                sc.pilot_ratios.push_back(parse_ratio(r));
            sc.interference_a = parse_doubles(inter, "interference weight");
            sc.loc_error_m = parse_doubles(loc, "localization error");
            sc.horizon_ms = parse_doubles(horizon, "horizon");
            sc.methods.clear();
            for (const auto &m : split_list(methods))
                sc.methods.push_back(parse_method(m));
            sc.projection = parse_projection_mode(projection);
            sc.mask_pattern = parse_mask_pattern(mask);
            sc.lmmse_training = parse_lmmse_training(training);
            const auto ex = swp_flags.settings();
            sc.snapshots = ex.snapshots;
            sc.selection = ex.selection;
            sc.array = swp_radio.array_config();
            sc.jobs = jobs;
            // The carrier may still follow the scene, so OFDM validation waits for it.
            action = [&, sc](std::ostream &o) mutable {
                Stages st;
                const auto scene = st.run("load", [&] { return read_scene(scene_path); });
                sc.ofdm = swp_radio.ofdm_config(scene.config());
                sc.validate();
                const auto result = st.run("sweep", [&] { return run_sweep(scene, sc); });
                const auto outputs = st.run("write", [&] { return write_sweep_outputs(result, out_path); });
                auto cfg = to_json(sc);
                cfg.erase("jobs");
                finish(out_path, "sweep", {{"sweep", cfg}}, json::array({input_entry(scene_path)}), outputs, st, jobs,
                       o);
            };
            // Grid and method errors surface before any work.
            SweepConfig probe = sc;
            probe.ofdm.n_subcarriers = swp_radio.subcarriers;
            probe.ofdm.bandwidth_hz = swp_radio.bandwidth;
            probe.validate();
        } else if (*exp) {
            const auto r = parse_doubles(split, "split ratio");
            if (r.size() != 3)
                throw UsageError("--split needs three ratios (train,val,test)");
            dc.split = SplitRatios{r[0], r[1], r[2]};
            dc.split.validate();
            dc.conditions.clear();
            for (const auto &c : split_list(conditions)) {
                const auto parts = split_list(c, ':');
                if (parts.size() != 2)
                    throw UsageError("invalid condition '" + c + "', expected SNR:RATIO");
                dc.conditions.push_back(DatasetCondition{parse_double(parts[0], "SNR"), parse_ratio(parts[1])});
            }
            dc.mask_pattern = parse_mask_pattern(exp_mask);
            dc.eb = exp_flags.settings();
            dc.array = exp_radio.array_config();
            dc.jobs = jobs;
            action = [&, dc](std::ostream &o) mutable {
                Stages st;
                const auto scene = st.run("load", [&] { return read_scene(scene_path); });
                dc.ofdm = exp_radio.ofdm_config(scene.config());
                const auto summary = st.run("export", [&] { return export_dataset(scene, dc, out_path); });
                finish(out_path, "export-dataset", {{"dataset", to_json(dc)}}, json::array({input_entry(scene_path)}),
                       summary.files, st, jobs, o);
            };
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        action(out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kSuccess;
}

} // namespace ebcsi::cli
