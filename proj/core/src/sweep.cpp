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

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

#include "ebcsi/error.hpp"
#include "ebcsi/metrics.hpp"
#include "ebcsi/parallel.hpp"
#include "ebcsi/rng.hpp"
#include "ebcsi/sweep.hpp"

namespace ebcsi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Computes each value once per key; safe to call from worker threads. A value may
// be built twice under contention, which is harmless since builds are pure.
template <typename K, typename V>
class LazyCache {
  public:
    template <typename Make>
    std::shared_ptr<const V> get(const K &key, Make &&make) {
        {
            std::lock_guard lock(mutex_);
            const auto it = map_.find(key);
            if (it != map_.end())
                return it->second;
        }
        auto value = std::make_shared<const V>(make());
        std::lock_guard lock(mutex_);
        return map_.emplace(key, std::move(value)).first->second;
    }

  private:
    std::mutex mutex_;
    std::map<K, std::shared_ptr<const V>> map_;
};

std::uint64_t bits(double x) {
    return std::bit_cast<std::uint64_t>(x);
}

std::string fmt(double x) {
    if (std::isnan(x))
        return "";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json json_number(double x) {
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x;
}

double number_from_json(const nlohmann::json &j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return kInf;
        if (s == "-inf")
            return -kInf;
        throw ConfigError("expected a number, got \"" + s + "\"");
    }
    return j.get<double>();
}

struct CellTraining {
    VertexSnapshotSet snaps;
    EbBasis basis;
    double mean_power = 0.0; // of the noiseless snapshots
};

struct TrialDraw {
    Coords user;
    Coords interferer;
    double time = 0.0;
    Seed noise_seed = 0;
    Seed loc_seed = 0;
    Seed mask_seed = 0;
};

TrialDraw draw_trial(const SceneGrid &scene, const SweepConfig &cfg, int trial) {
    const auto &sc = scene.config();
    const auto t = static_cast<std::uint64_t>(trial);
    auto rng = make_rng(cfg.seed, {0x7121A1, t});
    std::uniform_real_distribution<double> pos(0.0, sc.extent_m);
    TrialDraw d;
    d.user = Coords{pos(rng), pos(rng)};
    d.time = std::uniform_real_distribution<double>(0.0, cfg.time_span_s)(rng);

    const CellId home = scene.cell_at(d.user);
    std::vector<CellId> neighbours;
    for (const auto &n : {CellId{home.row - 1, home.col}, CellId{home.row + 1, home.col},
                          CellId{home.row, home.col - 1}, CellId{home.row, home.col + 1}})
        if (scene.contains(n))
            neighbours.push_back(n);
    if (neighbours.empty()) {
        d.interferer = d.user;
    } else {
        const auto k = std::uniform_int_distribution<std::size_t>(0, neighbours.size() - 1)(rng);
        std::uniform_real_distribution<double> u(0.0, sc.grid_size_m);
        d.interferer = Coords{neighbours[k].col * sc.grid_size_m + u(rng), neighbours[k].row * sc.grid_size_m + u(rng)};
    }
    d.noise_seed = derive_seed(cfg.seed, {0x0B5E, t});
    d.loc_seed = derive_seed(cfg.seed, {0x10CE, t});
    d.mask_seed = derive_seed(cfg.seed, {0x3A5C, t});
    return d;
}

class SweepContext {
  public:
    SweepContext(const SceneGrid &scene, const SweepConfig &cfg) : scene_(scene), cfg_(cfg) {}

    // Noiseless training set and basis (IEB).
    std::shared_ptr<const CellTraining> ideal(const CellId &cell) { return training(cell, kInf); }

    // Training set and basis at the condition SNR (EB); equals ideal when noise is off.
    std::shared_ptr<const CellTraining> training(const CellId &cell, double snr_db) {
        return cells_.get({cell, bits(snr_db)}, [&] {
            SnapshotOptions opt = cfg_.snapshots;
            opt.noise.reset();
            if (snr_db != kInf)
                opt.noise = NoiseSpec{snr_db, derive_seed(cfg_.seed, {0xEB5A, bits(snr_db)})};
            CellTraining t;
            t.snaps = collect_vertex_snapshots(scene_, cell, cfg_.array, cfg_.ofdm, opt);
            t.basis = extract_eb(t.snaps, cfg_.selection);
            t.mean_power = snr_db == kInf ? t.snaps.snapshots.squaredNorm() / static_cast<double>(t.snaps.snapshots.size())
                                          : ideal(cell)->mean_power;
            return t;
        });
    }

    double regularization_snr(double snr_db) const { return snr_db == kInf ? cfg_.reference_snr_db : snr_db; }

    const CMatrix &training_matrix(const CellId &cell, double snr_db, std::shared_ptr<const CellTraining> &hold) {
        hold = cfg_.lmmse_training == LmmseTraining::noisy ? training(cell, snr_db) : ideal(cell);
        return hold->snaps.snapshots;
    }

    std::shared_ptr<const LmmseModel> per_cell_lmmse(const CellId &cell, double snr_db, const ObservationMask &mask) {
        const auto fp = mask.fingerprint();
        return per_cell_.get({cell, bits(snr_db), fp}, [&] {
            std::shared_ptr<const CellTraining> hold;
            const CMatrix &x = training_matrix(cell, snr_db, hold);
            const CMatrix x0 = mask.flat().asDiagonal() * x;
            const double sigma2 = ideal(cell)->mean_power / std::pow(10.0, regularization_snr(snr_db) / 10.0);
            return lmmse_fit(x, x0, sigma2, fp);
        });
    }

    std::shared_ptr<const LmmseModel> pooled_lmmse(double snr_db, const ObservationMask &mask) {
        const auto fp = mask.fingerprint();
        return pooled_.get({bits(snr_db), fp}, [&] {
            const auto m = pooled_moments(snr_db);
            const auto d = mask.flat().asDiagonal();
            const CMatrix cross = m->sum * d;
            const CMatrix autoc = d * m->sum * d;
            const double sigma2 = m->mean_power / std::pow(10.0, regularization_snr(snr_db) / 10.0);
            return LmmseModel::from_moments(cross, autoc, m->n, sigma2, fp);
        });
    }

  private:
    struct Moments {
        CMatrix sum; // sum over all scene snapshots of x x^H
        Eigen::Index n = 0;
        double mean_power = 0.0;
    };

    std::shared_ptr<const Moments> pooled_moments(double snr_db) {
        return moments_.get(bits(snr_db), [&] {
            Moments m;
            double power = 0.0;
            for (const auto &c : scene_.cells()) {
                std::shared_ptr<const CellTraining> hold;
                const CMatrix &x = training_matrix(c.id, snr_db, hold);
                if (m.sum.size() == 0)
                    m.sum = CMatrix::Zero(x.rows(), x.rows());
                m.sum.selfadjointView<Eigen::Lower>().rankUpdate(x);
                m.n += x.cols();
                power += ideal(c.id)->mean_power;
            }
            m.sum = m.sum.selfadjointView<Eigen::Lower>();
            m.mean_power = power / static_cast<double>(scene_.cell_count());
            return m;
        });
    }

    const SceneGrid &scene_;
    const SweepConfig &cfg_;
    LazyCache<std::pair<CellId, std::uint64_t>, CellTraining> cells_;
    LazyCache<std::tuple<CellId, std::uint64_t, std::string>, LmmseModel> per_cell_;
    LazyCache<std::pair<std::uint64_t, std::string>, LmmseModel> pooled_;
    LazyCache<std::uint64_t, Moments> moments_;
};

void score(MetricRecord &r, const CMatrix &truth, const CMatrix &estimate, double sigma2_aar) {
    r.nmse = nmse(truth, estimate);
    r.cs = cosine_similarity(truth, estimate);
    try {
        r.aar = aar(truth, estimate, sigma2_aar);
        r.aar_ratio = r.aar / aar_upper_bound(truth, sigma2_aar);
    } catch (const InvalidInput &) {
        r.aar = r.aar_ratio = std::numeric_limits<double>::quiet_NaN();
    }
    r.ok = true;
}

void run_trial(SweepContext &ctx, const SceneGrid &scene, const SweepConfig &cfg, const Condition &cond,
               const TrialDraw &draw, MetricRecord *out) {
    const auto &sc = scene.config();
    const ChannelMatrix current = channel_at(scene, draw.user, draw.time, cfg.array, cfg.ofdm);
    const ChannelMatrix truth = cond.horizon_ms == 0.0
                                    ? current
                                    : channel_at(scene, draw.user, draw.time + cond.horizon_ms / 1000.0, cfg.array,
                                                 cfg.ofdm);
    CMatrix mixed = current.data;
    if (cond.interference_a > 0.0)
        mixed += cond.interference_a * channel_at(scene, draw.interferer, draw.time, cfg.array, cfg.ofdm).data;
    const double sigma2 = noise_variance(current.data, cond.snr_db);
    const auto mask =
        make_mask(cfg.array.elements(), cfg.ofdm.n_subcarriers, cond.pilot_ratio, cfg.mask_pattern, draw.mask_seed);
    const ChannelMatrix h0{observe(add_noise(mixed, sigma2, draw.noise_seed), mask), current.meta};

    const Coords reported =
        cond.loc_error_m > 0.0 ? perturb_location(sc, draw.user, {cond.loc_error_m, draw.loc_seed}) : draw.user;
    const CellId home = scene.cell_at(draw.user);
    const CellId lookup = scene.cell_at(reported);
    const double sigma2_aar =
        cond.snr_db == kInf ? noise_variance(current.data, cfg.reference_snr_db) : sigma2;

    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
        MetricRecord &r = out[m];
        r.cell = home;
        r.lookup_cell = lookup;
        try {
            CMatrix est;
            switch (r.method) {
            case Method::ieb_pr:
                est = reconstruct_projection(h0, ctx.ideal(lookup)->basis, r.method, cfg.projection, &mask).h_hat.data;
                break;
            case Method::eb_pr:
                est = reconstruct_projection(h0, ctx.training(lookup, cond.snr_db)->basis, r.method, cfg.projection,
                                             &mask)
                          .h_hat.data;
                break;
            case Method::lmmse:
                est = unflatten(ctx.per_cell_lmmse(lookup, cond.snr_db, mask)->predict(flatten(h0)), h0.antennas(),
                                h0.subcarriers());
                break;
            case Method::lmmse_pooled:
                est = unflatten(ctx.pooled_lmmse(cond.snr_db, mask)->predict(flatten(h0)), h0.antennas(),
                                h0.subcarriers());
                break;
            case Method::zero_fill:
                est = h0.data;
                break;
            case Method::hold_last:
                est = hold_last(std::span<const ChannelMatrix>(&h0, 1), ctx.ideal(lookup)->basis).data;
                break;
            }
            score(r, truth.data, est, sigma2_aar);
        } catch (const Error &e) {
            r.ok = false;
            r.error = e.what();
        }
    }
}

double mean_of(const std::vector<double> &v) {
    if (v.empty())
        return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

std::string to_string(LmmseTraining t) {
    return t == LmmseTraining::noisy ? "noisy" : "ideal";
}

LmmseTraining parse_lmmse_training(const std::string &s) {
    if (s == "noisy")
        return LmmseTraining::noisy;
    if (s == "ideal")
        return LmmseTraining::ideal;
    throw ConfigError("unknown LMMSE training source \"" + s + "\" (valid: noisy, ideal)");
}

void SweepConfig::validate() const {
    if (snr_db.empty() || pilot_ratios.empty() || interference_a.empty() || loc_error_m.empty() ||
        horizon_ms.empty())
        throw ConfigError("sweep grids must be nonempty");
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
    if (methods.empty())
        throw ConfigError("at least one method is required");
    if (std::set<Method>(methods.begin(), methods.end()).size() != methods.size())
        throw ConfigError("methods must not repeat");
    array.validate();
    ofdm.validate();
    for (double s : snr_db)
        if (std::isnan(s) || s == -kInf)
            throw ConfigError("SNR values must be finite or +inf");
    for (const auto &p : pilot_ratios)
        pilot_count(ofdm.n_subcarriers, p);
    for (double a : interference_a)
        if (!(a >= 0.0 && a <= 1.0))
            throw ConfigError("interference weights must lie in [0, 1]");
    for (double e : loc_error_m)
        if (!(e >= 0.0) || !std::isfinite(e))
            throw ConfigError("localization errors must be finite and nonnegative");
    for (double h : horizon_ms)
        if (!(h >= 0.0) || !std::isfinite(h))
            throw ConfigError("horizons must be finite and nonnegative");
    if (selection.energy_threshold) {
        if (!(*selection.energy_threshold > 0.0 && *selection.energy_threshold <= 1.0))
            throw ConfigError("energy threshold must lie in (0, 1]");
    } else if (selection.n_b < 1) {
        throw ConfigError("n_b must be at least 1");
    }
    if (!std::isfinite(reference_snr_db))
        throw ConfigError("reference SNR must be finite");
    if (!(time_span_s >= 0.0) || !std::isfinite(time_span_s))
        throw ConfigError("time span must be finite and nonnegative");
    if (jobs < 1)
        throw ConfigError("jobs must be at least 1");
}

nlohmann::json to_json(const SweepConfig &c) {
    nlohmann::json j;
    j["snr_db"] = nlohmann::json::array();
    for (double s : c.snr_db)
        j["snr_db"].push_back(json_number(s));
    j["pilot_ratios"] = nlohmann::json::array();
    for (const auto &p : c.pilot_ratios)
        j["pilot_ratios"].push_back(p.str());
    j["interference_a"] = c.interference_a;
    j["loc_error_m"] = c.loc_error_m;
    j["horizon_ms"] = c.horizon_ms;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["methods"] = nlohmann::json::array();
    for (auto m : c.methods)
        j["methods"].push_back(to_string(m));
    j["array"] = to_json(c.array);
    j["ofdm"] = to_json(c.ofdm);
    SnapshotOptions snaps = c.snapshots;
    snaps.noise.reset();
    j["extraction"] = to_json(ExtractionSettings{snaps, c.selection});
    j["projection"] = to_string(c.projection);
    j["mask_pattern"] = to_string(c.mask_pattern);
    j["lmmse_training"] = to_string(c.lmmse_training);
    j["reference_snr_db"] = c.reference_snr_db;
    j["time_span_s"] = c.time_span_s;
    j["jobs"] = c.jobs;
    return j;
}

SweepConfig sweep_config_from_json(const nlohmann::json &j) {
    SweepConfig c;
    try {
        c.snr_db.clear();
        for (const auto &s : j.at("snr_db"))
            c.snr_db.push_back(number_from_json(s));
        c.pilot_ratios.clear();
        for (const auto &p : j.at("pilot_ratios"))
            c.pilot_ratios.push_back(PilotRatio::parse(p.get<std::string>()));
        c.interference_a = j.at("interference_a").get<std::vector<double>>();
        c.loc_error_m = j.at("loc_error_m").get<std::vector<double>>();
        c.horizon_ms = j.at("horizon_ms").get<std::vector<double>>();
        c.trials = j.at("trials").get<int>();
        c.seed = j.at("seed").get<Seed>();
        c.methods.clear();
        for (const auto &m : j.at("methods"))
            c.methods.push_back(parse_method(m.get<std::string>()));
        c.array = array_config_from_json(j.at("array"));
        c.ofdm = ofdm_config_from_json(j.at("ofdm"));
        const auto ex = extraction_settings_from_json(j.at("extraction"));
        c.snapshots = ex.snapshots;
        c.snapshots.noise.reset();
        c.selection = ex.selection;
        c.projection = parse_projection_mode(j.at("projection").get<std::string>());
        c.mask_pattern = parse_mask_pattern(j.at("mask_pattern").get<std::string>());
        c.lmmse_training = parse_lmmse_training(j.at("lmmse_training").get<std::string>());
        c.reference_snr_db = j.at("reference_snr_db").get<double>();
        c.time_span_s = j.at("time_span_s").get<double>();
        c.jobs = j.value("jobs", 1);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("malformed sweep config: ") + e.what());
    }
    return c;
}

std::vector<Condition> expand_conditions(const SweepConfig &c) {
    std::vector<Condition> out;
    for (double s : c.snr_db)
        for (const auto &p : c.pilot_ratios)
            for (double a : c.interference_a)
                for (double e : c.loc_error_m)
                    for (double h : c.horizon_ms)
                        out.push_back(Condition{s, p, a, e, h});
    return out;
}

const MethodSummary &SweepResult::at(std::size_t condition_index, Method m) const {
    if (condition_index >= summary.size())
        throw OutOfBounds("condition index " + std::to_string(condition_index) + " out of range");
    for (const auto &s : summary[condition_index].methods)
        if (s.method == m)
            return s;
    throw OutOfBounds("method " + to_string(m) + " was not part of the sweep");
}

SweepResult run_sweep(const SceneGrid &scene, const SweepConfig &config) {
    config.validate();
    SweepResult res;
    res.config = config;
    res.grid_size_m = scene.config().grid_size_m;
    res.conditions = expand_conditions(config);

    const std::size_t n_cond = res.conditions.size();
    const auto n_trials = static_cast<std::size_t>(config.trials);
    const std::size_t n_meth = config.methods.size();
    res.records.resize(n_cond * n_trials * n_meth);
    for (std::size_t c = 0; c < n_cond; ++c)
        for (std::size_t t = 0; t < n_trials; ++t)
            for (std::size_t m = 0; m < n_meth; ++m) {
                auto &r = res.records[(c * n_trials + t) * n_meth + m];
                r.condition_index = c;
                r.trial = static_cast<int>(t);
                r.method = config.methods[m];
                r.condition = res.conditions[c];
                r.grid_size_m = res.grid_size_m;
                r.seed = config.seed;
            }

    std::vector<TrialDraw> draws(n_trials);
    for (std::size_t t = 0; t < n_trials; ++t)
        draws[t] = draw_trial(scene, config, static_cast<int>(t));

    SweepContext ctx(scene, config);
    parallel_for(n_cond * n_trials, config.jobs, [&](std::size_t i) {
        const std::size_t c = i / n_trials;
        const std::size_t t = i % n_trials;
        run_trial(ctx, scene, config, res.conditions[c], draws[t], &res.records[i * n_meth]);
    });

    res.summary.resize(n_cond);
    for (std::size_t c = 0; c < n_cond; ++c) {
        res.summary[c].condition = res.conditions[c];
        for (std::size_t m = 0; m < n_meth; ++m) {
            MethodSummary s;
            s.method = config.methods[m];
            std::vector<double> nm, cs, aa, ar;
            for (std::size_t t = 0; t < n_trials; ++t) {
                const auto &r = res.records[(c * n_trials + t) * n_meth + m];
                if (!r.ok) {
                    ++s.n_failed;
                    continue;
                }
                ++s.n_ok;
                nm.push_back(r.nmse);
                cs.push_back(r.cs);
                if (!std::isnan(r.aar)) {
                    aa.push_back(r.aar);
                    ar.push_back(r.aar_ratio);
                }
            }
            s.n_aar = static_cast<int>(aa.size());
            s.nmse_mean = mean_of(nm);
            if (!nm.empty())
                s.nmse_db = s.nmse_mean > 0.0 ? to_db(s.nmse_mean) : -kInf;
            s.cs_mean = mean_of(cs);
            s.aar_mean = mean_of(aa);
            s.aar_ratio_mean = mean_of(ar);
            if (!cs.empty())
                s.cs_cdf = empirical_cdf(cs);
            res.summary[c].methods.push_back(std::move(s));
        }
    }
    return res;
}

const std::vector<std::string> &record_columns() {
    static const std::vector<std::string> cols{
        "condition_index", "trial",     "method",     "snr_db",   "pilot_ratio", "interference_a", "loc_error_m",
        "horizon_ms",      "grid_size_m", "seed",     "cell_row", "cell_col",    "lookup_row",     "lookup_col",
        "status",          "nmse",      "cs",         "aar",      "aar_ratio",   "error"};
    return cols;
}

namespace {

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch == '\n' ? ' ' : ch;
    }
    return out + "\"";
}

std::ofstream open_out(const std::filesystem::path &p) {
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw IoError("cannot write " + p.string());
    return f;
}

nlohmann::json condition_json(const Condition &c) {
    return {{"snr_db", json_number(c.snr_db)},
            {"pilot_ratio", c.pilot_ratio.str()},
            {"interference_a", c.interference_a},
            {"loc_error_m", c.loc_error_m},
            {"horizon_ms", c.horizon_ms}};
}

nlohmann::json maybe(double x) {
    if (std::isnan(x))
        return nullptr;
    return json_number(x);
}

} // namespace

std::vector<std::filesystem::path> write_sweep_outputs(const SweepResult &result, const std::filesystem::path &dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "curves");
    std::vector<fs::path> written;

    {
        auto f = open_out(dir / "records.csv");
        const auto &cols = record_columns();
        for (std::size_t i = 0; i < cols.size(); ++i)
            f << (i ? "," : "") << cols[i];
        f << '\n';
        for (const auto &r : result.records) {
            f << r.condition_index << ',' << r.trial << ',' << to_string(r.method) << ',' << fmt(r.condition.snr_db)
              << ',' << r.condition.pilot_ratio.str() << ',' << fmt(r.condition.interference_a) << ','
              << fmt(r.condition.loc_error_m) << ',' << fmt(r.condition.horizon_ms) << ',' << fmt(r.grid_size_m) << ','
              << r.seed << ',' << r.cell.row << ',' << r.cell.col << ',' << r.lookup_cell.row << ','
              << r.lookup_cell.col << ',' << (r.ok ? "ok" : "failed") << ',' << fmt(r.nmse) << ',' << fmt(r.cs)
              << ',' << fmt(r.aar) << ',' << fmt(r.aar_ratio) << ',' << csv_escape(r.error) << '\n';
        }
        written.emplace_back("records.csv");
    }

    {
        nlohmann::json j;
        j["format"] = "ebcsi.sweep_summary";
        j["version"] = 1;
        auto cfg = to_json(result.config);
        cfg.erase("jobs");
        j["config"] = cfg;
        j["grid_size_m"] = result.grid_size_m;
        j["conditions"] = nlohmann::json::array();
        for (std::size_t c = 0; c < result.summary.size(); ++c) {
            auto cj = condition_json(result.summary[c].condition);
            cj["index"] = c;
            cj["methods"] = nlohmann::json::array();
            for (const auto &s : result.summary[c].methods) {
                nlohmann::json q = nlohmann::json::object();
                if (!s.cs_cdf.empty())
                    for (double p : {0.05, 0.1, 0.5, 0.9})
                        q[fmt(p)] = cdf_quantile(s.cs_cdf, p);
                cj["methods"].push_back({{"method", to_string(s.method)},
                                         {"n_ok", s.n_ok},
                                         {"n_failed", s.n_failed},
                                         {"n_aar", s.n_aar},
                                         {"nmse", maybe(s.nmse_mean)},
                                         {"nmse_db", maybe(s.nmse_db)},
                                         {"cs", maybe(s.cs_mean)},
                                         {"aar", maybe(s.aar_mean)},
                                         {"aar_ratio", maybe(s.aar_ratio_mean)},
                                         {"cs_quantiles", q}});
            }
            j["conditions"].push_back(std::move(cj));
        }
        auto f = open_out(dir / "summary.json");
        f << j.dump(2) << '\n';
        written.emplace_back("summary.json");
    }

    for (std::size_t m = 0; m < result.config.methods.size(); ++m) {
        const auto name = to_string(result.config.methods[m]);
        {
            auto f = open_out(dir / "curves" / (name + ".tsv"));
            f << "condition_index\tsnr_db\tpilot_ratio\tpilot_value\tinterference_a\tloc_error_m\thorizon_ms\tn_ok\t"
                 "n_failed\tnmse\tnmse_db\tcs\taar\taar_ratio\n";
            for (std::size_t c = 0; c < result.summary.size(); ++c) {
                const auto &cond = result.summary[c].condition;
                const auto &s = result.summary[c].methods[m];
                f << c << '\t' << fmt(cond.snr_db) << '\t' << cond.pilot_ratio.str() << '\t'
                  << fmt(cond.pilot_ratio.value()) << '\t' << fmt(cond.interference_a) << '\t'
                  << fmt(cond.loc_error_m) << '\t' << fmt(cond.horizon_ms) << '\t' << s.n_ok << '\t' << s.n_failed
                  << '\t' << fmt(s.nmse_mean) << '\t' << fmt(s.nmse_db) << '\t' << fmt(s.cs_mean) << '\t'
                  << fmt(s.aar_mean) << '\t' << fmt(s.aar_ratio_mean) << '\n';
            }
            written.emplace_back(fs::path("curves") / (name + ".tsv"));
        }
        {
            auto f = open_out(dir / "curves" / (name + "_cs_cdf.tsv"));
            f << "condition_index\tcs\tprobability\n";
            for (std::size_t c = 0; c < result.summary.size(); ++c)
                for (const auto &p : result.summary[c].methods[m].cs_cdf)
                    f << c << '\t' << fmt(p.value) << '\t' << fmt(p.probability) << '\n';
            written.emplace_back(fs::path("curves") / (name + "_cs_cdf.tsv"));
        }
    }
    std::sort(written.begin(), written.end());
    return written;
}

} // namespace ebcsi
