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

#include "ebcsi/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "ebcsi/error.hpp"
#include "ebcsi/rng.hpp"

namespace ebcsi {

namespace {

constexpr std::uint64_t kSnapshotNoiseStream = 0x5A0BE;
constexpr std::uint64_t kDopplerProfileStream = 0xD099E;

void check_spectrum(const RVector &lambda) {
    if (lambda.size() == 0)
        throw InvalidInput("empty singular value spectrum");
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (!(lambda(i) >= 0.0) || !std::isfinite(lambda(i)))
            throw InvalidInput("singular values must be finite and nonnegative");
        if (i > 0 && lambda(i) > lambda(i - 1))
            throw InvalidInput("singular values must be in descending order");
    }
}

Eigen::Index numerical_rank(const RVector &sigma, Eigen::Index rows, Eigen::Index cols) {
    if (sigma.size() == 0 || !(sigma(0) > 0.0))
        return 0;
    const double tol = sigma(0) * static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
    Eigen::Index r = 0;
    while (r < sigma.size() && sigma(r) > tol)
        ++r;
    return r;
}

// Columns past the numerical rank are not determined by the data, and the SVD's own
// completion piles them onto the leading coordinates. Replace them with a seeded
// random orthonormal complement of the first `rank` columns.
void complete_basis(CMatrix &u, Eigen::Index rank, const CellId &cell) {
    const Eigen::Index extra = u.cols() - rank;
    auto rng = make_rng(0xC0B1E7E, {static_cast<std::uint64_t>(cell.row), static_cast<std::uint64_t>(cell.col)});
    CMatrix g(u.rows(), extra);
    fill_cscg(rng, 1.0, g.data(), static_cast<std::size_t>(g.size()));
    const auto kept = u.leftCols(rank);
    for (int pass = 0; pass < 2; ++pass)
        g -= kept * (kept.adjoint() * g);
    Eigen::HouseholderQR<CMatrix> qr(g);
    u.rightCols(extra) = qr.householderQ() * CMatrix::Identity(u.rows(), extra);
}

// Rotates each column so its largest-magnitude entry is real positive.
void normalize_column_phases(CMatrix &u) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            const double m = std::abs(u(r, c));
            if (m > best) {
                best = m;
                imax = r;
            }
        }
        if (best <= 0.0)
            continue;
        const Complex rot = std::conj(u(imax, c)) / best;
        u.col(c) *= rot;
        u(imax, c) = Complex(std::abs(u(imax, c)), 0.0);
    }
}

} // namespace

std::string to_string(DopplerMode m) {
    return m == DopplerMode::time_samples ? "time-samples" : "independent";
}

DopplerMode parse_doppler_mode(const std::string &s) {
    if (s == "time-samples")
        return DopplerMode::time_samples;
    if (s == "independent")
        return DopplerMode::independent;
    throw InvalidInput("unknown Doppler mode '" + s + "' (valid: time-samples, independent)");
}

VertexSnapshotSet collect_vertex_snapshots(const SceneGrid &scene, const CellId &cell, const ArrayConfig &array,
                                           const OfdmConfig &ofdm, const SnapshotOptions &options) {
    if (!scene.contains(cell))
        throw InvalidInput("invalid cell id " + cell.str());
    if (options.n_times < 1)
        throw InvalidInput("need at least one snapshot time");
    array.validate();
    ofdm.validate();

    const auto &desc = scene.cell(cell);
    const Eigen::Index n_h = static_cast<Eigen::Index>(array.elements()) * ofdm.n_subcarriers;
    VertexSnapshotSet set;
    set.cell = cell;
    set.n_times = options.n_times;
    set.noisy = options.noise.has_value() && options.noise->enabled();
    set.snapshots.resize(n_h, 4 * options.n_times);

    const auto row = static_cast<std::uint64_t>(cell.row);
    const auto col = static_cast<std::uint64_t>(cell.col);
    const double f_max = scene.config().max_doppler_hz;

    for (int v = 0; v < 4; ++v) {
        const PathSet at_vertex = cell_paths(scene, cell, desc.vertex_coords[static_cast<std::size_t>(v)]);
        for (int t = 0; t < options.n_times; ++t) {
            PathSet paths = at_vertex;
            if (options.zero_velocity) {
                for (auto &p : paths)
                    p.doppler_rate = 0.0;
            } else if (options.doppler == DopplerMode::independent) {
                auto rng = make_rng(scene.config().seed, {kDopplerProfileStream, row, col, static_cast<std::uint64_t>(t)});
                std::uniform_real_distribution<double> beta(0.0, kTwoPi);
                for (auto &p : paths)
                    p.doppler_rate = kTwoPi * f_max * std::cos(beta(rng));
            }
            advance_phases(paths, t * options.time_step_s);
            CMatrix h = channel_from_paths(paths, array, ofdm).data;
            const Eigen::Index idx = v * options.n_times + t;
            if (set.noisy) {
                NoiseSpec spec{options.noise->snr_db,
                               derive_seed(options.noise->seed, {kSnapshotNoiseStream, row, col, static_cast<std::uint64_t>(idx)})};
                h = add_noise(h, spec);
            }
            set.snapshots.col(idx) = flatten(h);
        }
    }
    return set;
}

double energy_ratio(const RVector &singular_values, int alpha) {
    check_spectrum(singular_values);
    if (alpha < 1 || alpha > singular_values.size())
        throw InvalidInput("alpha must lie in [1, number of singular values]");
    double total = 0.0;
    double partial = 0.0;
    for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
        total += singular_values(i);
        if (i < alpha)
            partial = total;
    }
    if (!(total > 0.0))
        throw InvalidInput("energy ratio undefined for an all-zero spectrum");
    return partial / total;
}

int basis_count_for_energy(const RVector &singular_values, double eta) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw InvalidInput("energy threshold must lie in (0, 1]");
    check_spectrum(singular_values);
    const auto n = static_cast<int>(singular_values.size());
    for (int alpha = 1; alpha <= n; ++alpha)
        if (energy_ratio(singular_values, alpha) >= eta)
            return alpha;
    return n;
}

EbBasis extract_eb(const VertexSnapshotSet &snaps, const BasisSelection &selection) {
    const CMatrix &x = snaps.snapshots;
    if (x.cols() < 1 || x.rows() < 1)
        throw InvalidInput("extract_eb needs at least one snapshot");
    if (!x.allFinite())
        throw InvalidInput("snapshots contain non-finite entries");
    const Eigen::Index rank_max = std::min(x.rows(), x.cols());

    Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeThinU);
    EbBasis basis;
    basis.cell = snaps.cell;
    basis.singular_values = svd.singularValues().head(rank_max).array().square().matrix();
    // Squaring can break ties into tiny inversions only if the SVD output was unsorted.
    for (Eigen::Index i = 1; i < rank_max; ++i)
        basis.singular_values(i) = std::min(basis.singular_values(i), basis.singular_values(i - 1));

    int n_b = selection.n_b;
    if (selection.energy_threshold) {
        n_b = basis_count_for_energy(basis.singular_values, *selection.energy_threshold);
        basis.energy_threshold = selection.energy_threshold;
    }
    if (n_b < 1 || n_b > rank_max)
        throw InvalidInput("basis count " + std::to_string(n_b) + " outside [1, " + std::to_string(rank_max) + "]");

    basis.n_b = n_b;
    const Eigen::Index rank = numerical_rank(svd.singularValues(), x.rows(), x.cols());
    if (rank == 0)
        throw InvalidInput("snapshots are all zero");
    basis.u = svd.matrixU().leftCols(n_b);
    if (n_b > rank)
        complete_basis(basis.u, rank, snaps.cell);
    normalize_column_phases(basis.u);
    return basis;
}

nlohmann::json to_json(const ExtractionSettings &s) {
    nlohmann::json j{
        {"n_times", s.snapshots.n_times},
        {"time_step_s", s.snapshots.time_step_s},
        {"doppler_mode", to_string(s.snapshots.doppler)},
        {"zero_velocity", s.snapshots.zero_velocity},
        {"n_b", s.selection.n_b},
        {"noise", nullptr},
        {"energy_threshold", nullptr},
    };
    if (s.snapshots.noise && s.snapshots.noise->enabled())
        j["noise"] = {{"snr_db", s.snapshots.noise->snr_db}, {"seed", s.snapshots.noise->seed}};
    if (s.selection.energy_threshold)
        j["energy_threshold"] = *s.selection.energy_threshold;
    return j;
}

ExtractionSettings extraction_settings_from_json(const nlohmann::json &j) {
    ExtractionSettings s;
    s.snapshots.n_times = j.at("n_times").get<int>();
    s.snapshots.time_step_s = j.at("time_step_s").get<double>();
    s.snapshots.doppler = parse_doppler_mode(j.at("doppler_mode").get<std::string>());
    s.snapshots.zero_velocity = j.at("zero_velocity").get<bool>();
    s.selection.n_b = j.at("n_b").get<int>();
    if (!j.at("noise").is_null())
        s.snapshots.noise = NoiseSpec{j["noise"].at("snr_db").get<double>(), j["noise"].at("seed").get<Seed>()};
    if (!j.at("energy_threshold").is_null())
        s.selection.energy_threshold = j["energy_threshold"].get<double>();
    return s;
}

} // namespace ebcsi
