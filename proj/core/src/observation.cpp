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

#include "ebcsi/observation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ebcsi/error.hpp"
#include "ebcsi/rng.hpp"
#include "ebcsi/tensor_io.hpp"

namespace ebcsi {

std::string to_string(MaskPattern p) {
    return p == MaskPattern::comb ? "comb" : "random";
}

MaskPattern parse_mask_pattern(const std::string &s) {
    if (s == "comb")
        return MaskPattern::comb;
    if (s == "random")
        return MaskPattern::random;
    throw InvalidInput("unknown mask pattern '" + s + "' (valid: comb, random)");
}

PilotRatio PilotRatio::parse(const std::string &s) {
    try {
        const auto slash = s.find('/');
        std::size_t used = 0;
        PilotRatio r;
        if (slash != std::string::npos) {
            r.num = std::stoi(s.substr(0, slash), &used);
            if (used != slash)
                throw InvalidInput("");
            const auto den = s.substr(slash + 1);
            r.den = std::stoi(den, &used);
            if (used != den.size())
                throw InvalidInput("");
        } else {
            const double v = std::stod(s, &used);
            if (used != s.size())
                throw InvalidInput("");
            if (v == std::floor(v)) {
                r.num = static_cast<int>(v);
                r.den = 1;
            } else {
                r.num = static_cast<int>(std::lround(v * 1e6));
                r.den = 1000000;
            }
        }
        if (r.num <= 0 || r.den <= 0 || r.num > r.den)
            throw InvalidInput("");
        const int g = std::gcd(r.num, r.den);
        r.num /= g;
        r.den /= g;
        return r;
    } catch (const std::exception &) {
        throw InvalidInput("invalid pilot ratio '" + s + "' (expected e.g. 1/8 in (0, 1])");
    }
}

int pilot_count(int n_sc, const PilotRatio &ratio) {
    const long n_p = std::lround(ratio.value() * n_sc);
    if (n_p < 1)
        throw InvalidInput("pilot ratio " + ratio.str() + " leaves no pilots on " + std::to_string(n_sc) + " subcarriers");
    if (n_p > n_sc)
        throw InvalidInput("pilot count exceeds subcarrier count");
    return static_cast<int>(n_p);
}

std::string ObservationMask::fingerprint() const {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(data.size()));
    for (Eigen::Index i = 0; i < data.size(); ++i)
        bits[static_cast<std::size_t>(i)] = data.data()[i] != 0.0 ? 1 : 0;
    std::string h = sha256_hex(bits.data(), bits.size());
    return std::to_string(data.rows()) + "x" + std::to_string(data.cols()) + ":" + h.substr(0, 16);
}

ObservationMask make_mask(int m_t, int n_sc, int n_pilot, MaskPattern pattern, Seed seed) {
    if (m_t < 1 || n_sc < 1)
        throw InvalidInput("mask dimensions must be positive");
    if (n_pilot < 1 || n_pilot > n_sc)
        throw InvalidInput("pilot count must lie in [1, n_sc]");

    ObservationMask m;
    m.n_pilot = n_pilot;
    m.pattern = pattern;
    m.data = RMatrix::Zero(m_t, n_sc);
    if (pattern == MaskPattern::comb) {
        for (int i = 0; i < n_pilot; ++i) {
            const auto col = static_cast<Eigen::Index>((static_cast<long>(i) * n_sc) / n_pilot);
            m.data.col(col).setOnes();
        }
    } else {
        auto rng = make_rng(seed, {0x3A5C});
        std::vector<int> cols(static_cast<std::size_t>(n_sc));
        for (int r = 0; r < m_t; ++r) {
            std::iota(cols.begin(), cols.end(), 0);
            for (int i = 0; i < n_pilot; ++i) {
                const int j = std::uniform_int_distribution<int>(i, n_sc - 1)(rng);
                std::swap(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
            }
            for (int i = 0; i < n_pilot; ++i)
                m.data(r, cols[static_cast<std::size_t>(i)]) = 1.0;
        }
    }
    return m;
}

ObservationMask make_mask(int m_t, int n_sc, const PilotRatio &ratio, MaskPattern pattern, Seed seed) {
    return make_mask(m_t, n_sc, pilot_count(n_sc, ratio), pattern, seed);
}

double noise_variance(const CMatrix &h, double snr_db) {
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
        throw InvalidInput("SNR must be finite or +inf (noise disabled)");
    if (snr_db == std::numeric_limits<double>::infinity())
        return 0.0;
    if (h.size() == 0)
        throw InvalidInput("cannot define SNR for an empty channel");
    const double power = h.squaredNorm() / static_cast<double>(h.size());
    if (!(power > 0.0))
        throw InvalidInput("cannot define SNR for an all-zero channel");
    return power / std::pow(10.0, snr_db / 10.0);
}

CMatrix observe(const CMatrix &h, const ObservationMask &mask) {
    if (h.rows() != mask.data.rows() || h.cols() != mask.data.cols())
        throw InvalidInput("observe: channel and mask shapes differ");
    return h.cwiseProduct(mask.data.cast<Complex>());
}

ChannelMatrix observe(const ChannelMatrix &h, const ObservationMask &mask) {
    return ChannelMatrix{observe(h.data, mask), h.meta};
}

CMatrix add_noise(const CMatrix &h, const NoiseSpec &spec) {
    const double var = noise_variance(h, spec.snr_db);
    if (!spec.enabled())
        return h;
    return add_noise(h, var, spec.seed);
}

CMatrix add_noise(const CMatrix &h, double variance, Seed seed) {
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw InvalidInput("noise variance must be finite and nonnegative");
    if (variance == 0.0)
        return h;
    CMatrix out(h.rows(), h.cols());
    auto rng = make_rng(seed, {0x2015E});
    fill_cscg(rng, variance, out.data(), static_cast<std::size_t>(out.size()));
    out += h;
    return out;
}

ChannelMatrix add_noise(const ChannelMatrix &h, const NoiseSpec &spec) {
    return ChannelMatrix{add_noise(h.data, spec), h.meta};
}

ChannelMatrix mix_interference(const ChannelMatrix &h_x, const ChannelMatrix &h_y, double a) {
    if (!(a >= 0.0 && a <= 1.0))
        throw InvalidInput("interference weight must lie in [0, 1]");
    if (h_x.data.rows() != h_y.data.rows() || h_x.data.cols() != h_y.data.cols())
        throw InvalidInput("mix_interference: shapes differ");
    return ChannelMatrix{h_x.data + a * h_y.data, h_x.meta};
}

} // namespace ebcsi
