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

#include "ebcsi/reconstruct.hpp"

#include <cmath>
#include <limits>

#include <Eigen/QR>

#include "ebcsi/error.hpp"

namespace ebcsi {

namespace {

constexpr double kMinRcond = std::numeric_limits<double>::epsilon();

struct MethodName {
    Method method;
    const char *name;
};

constexpr MethodName kMethodNames[] = {
    {Method::ieb_pr, "ieb-pr"},       {Method::eb_pr, "eb-pr"},         {Method::lmmse, "lmmse"},
    {Method::lmmse_pooled, "lmmse-pooled"}, {Method::zero_fill, "zero-fill"}, {Method::hold_last, "hold-last"},
};

} // namespace

std::string to_string(Method m) {
    for (const auto &e : kMethodNames)
        if (e.method == m)
            return e.name;
    return "unknown";
}

std::vector<std::string> method_names() {
    std::vector<std::string> out;
    for (const auto &e : kMethodNames)
        out.emplace_back(e.name);
    return out;
}

Method parse_method(const std::string &s) {
    for (const auto &e : kMethodNames)
        if (s == e.name)
            return e.method;
    std::string valid;
    for (const auto &n : method_names())
        valid += (valid.empty() ? "" : ", ") + n;
    throw InvalidInput("unknown method '" + s + "' (valid: " + valid + ")");
}

std::string to_string(ProjectionMode m) {
    return m == ProjectionMode::zero_fill ? "zero-fill" : "masked-ls";
}

ProjectionMode parse_projection_mode(const std::string &s) {
    if (s == "zero-fill")
        return ProjectionMode::zero_fill;
    if (s == "masked-ls")
        return ProjectionMode::masked_ls;
    throw InvalidInput("unknown projection mode '" + s + "' (valid: zero-fill, masked-ls)");
}

CVector project(const CVector &h0_flat, const EbBasis &basis, ProjectionMode mode, const ObservationMask *mask) {
    const CMatrix &u = basis.u;
    if (h0_flat.size() != u.rows())
        throw InvalidInput("project: vector length does not match the basis dimension");
    if (mode == ProjectionMode::zero_fill)
        return u.adjoint() * h0_flat;

    if (mask == nullptr)
        throw InvalidInput("masked least squares needs an observation mask");
    const RVector sel = mask->flat();
    if (sel.size() != u.rows())
        throw InvalidInput("project: mask shape does not match the basis dimension");
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < sel.size(); ++i)
        if (sel(i) != 0.0)
            rows.push_back(i);
    const auto n_obs = static_cast<Eigen::Index>(rows.size());
    if (n_obs < u.cols())
        throw RankDeficiency("masked least squares is under-determined: " + std::to_string(n_obs) +
                                 " observations for " + std::to_string(u.cols()) + " coefficients",
                             n_obs, u.cols());
    CMatrix a(n_obs, u.cols());
    CVector b(n_obs);
    for (Eigen::Index i = 0; i < n_obs; ++i) {
        a.row(i) = u.row(rows[static_cast<std::size_t>(i)]);
        b(i) = h0_flat(rows[static_cast<std::size_t>(i)]);
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(a);
    if (qr.rank() < u.cols())
        throw RankDeficiency("observed rows of the basis are rank deficient (rank " + std::to_string(qr.rank()) + " < " +
                                 std::to_string(u.cols()) + ")",
                             qr.rank(), u.cols());
    return qr.solve(b);
}

CVector reconstruct_from_coeff(const CVector &c, const EbBasis &basis) {
    if (c.size() != basis.u.cols())
        throw InvalidInput("coefficient count does not match the basis");
    return basis.u * c;
}

ReconstructionResult reconstruct_projection(const ChannelMatrix &h0, const EbBasis &basis, Method tag,
                                            ProjectionMode mode, const ObservationMask *mask) {
    CVector c = project(flatten(h0), basis, mode, mask);
    ReconstructionResult r;
    r.method = tag;
    r.h_hat = ChannelMatrix{unflatten(reconstruct_from_coeff(c, basis), h0.data.rows(), h0.data.cols()), h0.meta};
    r.coefficients = std::move(c);
    return r;
}

LmmseModel::LmmseModel(CMatrix h, CMatrix h0, double sigma2, std::string mask_fingerprint, LmmseSolver solver)
    : dim_(h.rows()), n_(h.cols()), sigma2_(sigma2), fingerprint_(std::move(mask_fingerprint)) {
    if (h.cols() < 1)
        throw InvalidInput("LMMSE needs at least one training pair");
    if (h.rows() != h0.rows() || h.cols() != h0.cols())
        throw InvalidInput("LMMSE training channels and observations differ in shape");
    woodbury_ = solver == LmmseSolver::woodbury || (solver == LmmseSolver::automatic && h.cols() < h.rows());
    if (woodbury_) {
        h_ = std::move(h);
        h0_ = std::move(h0);
    } else {
        const auto n = static_cast<double>(n_);
        cross_ = h * h0.adjoint() / n;
        auto_ = h0 * h0.adjoint() / n;
    }
    factorize();
}

LmmseModel LmmseModel::from_moments(const CMatrix &cross_sum, const CMatrix &auto_sum, Eigen::Index n_samples,
                                    double sigma2, std::string mask_fingerprint) {
    if (n_samples < 1)
        throw InvalidInput("LMMSE needs at least one training pair");
    if (cross_sum.rows() != cross_sum.cols() || auto_sum.rows() != auto_sum.cols() ||
        cross_sum.rows() != auto_sum.rows())
        throw InvalidInput("LMMSE moment matrices must be square and of equal size");
    LmmseModel m;
    m.dim_ = cross_sum.rows();
    m.n_ = n_samples;
    m.sigma2_ = sigma2;
    m.fingerprint_ = std::move(mask_fingerprint);
    m.woodbury_ = false;
    m.cross_ = cross_sum / static_cast<double>(n_samples);
    m.auto_ = auto_sum / static_cast<double>(n_samples);
    m.factorize();
    return m;
}

void LmmseModel::factorize() {
    if (!(sigma2_ > 0.0) || !std::isfinite(sigma2_))
        throw InvalidInput("LMMSE regularization sigma^2 must be positive and finite");
    if (woodbury_) {
        CMatrix cap = h0_.adjoint() * h0_;
        cap.diagonal().array() += static_cast<double>(n_) * sigma2_;
        llt_.compute(cap);
    } else {
        llt_.compute(auto_corr_reg());
    }
    rcond_ = llt_.info() == Eigen::Success ? llt_.rcond() : 0.0;
    if (llt_.info() != Eigen::Success || !(rcond_ >= kMinRcond))
        throw ConditioningError("LMMSE correlation matrix is not numerically positive definite", rcond_);
}

CMatrix LmmseModel::cross_corr() const {
    if (!woodbury_)
        return cross_;
    return h_ * h0_.adjoint() / static_cast<double>(n_);
}

CMatrix LmmseModel::auto_corr_reg() const {
    CMatrix r = woodbury_ ? CMatrix(h0_ * h0_.adjoint() / static_cast<double>(n_)) : auto_;
    r.diagonal().array() += sigma2_;
    return r;
}

CVector LmmseModel::predict(const CVector &h0_flat) const {
    if (h0_flat.size() != dim_)
        throw InvalidInput("LMMSE input length does not match the model dimension");
    if (!woodbury_)
        return cross_ * llt_.solve(h0_flat);
    // R^-1 h0 = (h0 - X0 C^-1 X0^H h0) / sigma^2
    const CVector proj = h0_.adjoint() * h0_flat;
    const CVector r_inv_h0 = (h0_flat - h0_ * llt_.solve(proj)) / sigma2_;
    return h_ * (h0_.adjoint() * r_inv_h0) / static_cast<double>(n_);
}

LmmseModel lmmse_fit(const CMatrix &h, const CMatrix &h0, double sigma2, std::string mask_fingerprint,
                     LmmseSolver solver) {
    return LmmseModel(h, h0, sigma2, std::move(mask_fingerprint), solver);
}

LmmseModel lmmse_fit(std::span<const TrainingPair> pairs, double sigma2, std::string mask_fingerprint,
                     LmmseSolver solver) {
    if (pairs.empty())
        throw InvalidInput("LMMSE needs at least one training pair");
    const Eigen::Index n_h = pairs.front().h.size();
    CMatrix h(n_h, static_cast<Eigen::Index>(pairs.size()));
    CMatrix h0(n_h, static_cast<Eigen::Index>(pairs.size()));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].h.size() != n_h || pairs[i].h0.size() != n_h)
            throw InvalidInput("LMMSE training pairs differ in length");
        h.col(static_cast<Eigen::Index>(i)) = pairs[i].h;
        h0.col(static_cast<Eigen::Index>(i)) = pairs[i].h0;
    }
    return LmmseModel(std::move(h), std::move(h0), sigma2, std::move(mask_fingerprint), solver);
}

CVector lmmse_predict(const CVector &h0_flat, const LmmseModel &model) {
    return model.predict(h0_flat);
}

ChannelMatrix hold_last(std::span<const ChannelMatrix> history) {
    if (history.empty())
        throw InvalidInput("hold_last needs a nonempty history");
    return history.back();
}

ChannelMatrix hold_last(std::span<const ChannelMatrix> history, const EbBasis &basis) {
    if (history.empty())
        throw InvalidInput("hold_last needs a nonempty history");
    return reconstruct_projection(history.back(), basis, Method::hold_last).h_hat;
}

} // namespace ebcsi
