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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "ebcsi/channel.hpp"
#include "ebcsi/observation.hpp"
#include "ebcsi/subspace.hpp"
#include "ebcsi/types.hpp"

namespace ebcsi {

enum class Method { ieb_pr, eb_pr, lmmse, lmmse_pooled, zero_fill, hold_last };

std::string to_string(Method m);
// Accepts the CLI spellings (ieb-pr, eb-pr, lmmse, lmmse-pooled, zero-fill, hold-last).
Method parse_method(const std::string &s);
std::vector<std::string> method_names();

enum class ProjectionMode {
    zero_fill, // c = U^H h0, unobserved entries of h0 are zero
    masked_ls, // argmin_c || S (U c - h0) ||_2 over the observed selector S
};

std::string to_string(ProjectionMode m);
ProjectionMode parse_projection_mode(const std::string &s);

// Projection coefficients of a flattened (partial) channel on the basis columns.
// masked_ls requires `mask`.
CVector project(const CVector &h0_flat, const EbBasis &basis, ProjectionMode mode = ProjectionMode::zero_fill,
                const ObservationMask *mask = nullptr);

CVector reconstruct_from_coeff(const CVector &c, const EbBasis &basis);

struct ReconstructionResult {
    ChannelMatrix h_hat;
    Method method = Method::zero_fill;
    std::optional<CVector> coefficients;
};

ReconstructionResult reconstruct_projection(const ChannelMatrix &h0, const EbBasis &basis, Method tag,
                                            ProjectionMode mode = ProjectionMode::zero_fill,
                                            const ObservationMask *mask = nullptr);

enum class LmmseSolver { automatic, woodbury, dense };

// Linear MMSE predictor h_hat = R_hh0 (R_h0h0 + sigma^2 I)^-1 h0 built from sample
// correlations of training pairs (conjugate transpose throughout).
//
// The training matrices are kept rather than the N_H x N_H correlations. With
// fewer training pairs than dimensions the regularized inverse is applied via the
// Woodbury identity and a Cholesky factorization of the N x N capacitance matrix
// N sigma^2 I + X0^H X0; otherwise the dense N_H x N_H matrix is factorized.
class LmmseModel {
  public:
    LmmseModel(CMatrix h, CMatrix h0, double sigma2, std::string mask_fingerprint = {},
               LmmseSolver solver = LmmseSolver::automatic);

    // Dense model from accumulated sums: cross_sum = sum h h0^H, auto_sum = sum h0 h0^H.
    static LmmseModel from_moments(const CMatrix &cross_sum, const CMatrix &auto_sum, Eigen::Index n_samples,
                                   double sigma2, std::string mask_fingerprint = {});

    CMatrix cross_corr() const;    // (1/N) sum h h0^H
    CMatrix auto_corr_reg() const; // (1/N) sum h0 h0^H + sigma^2 I

    double sigma2() const noexcept { return sigma2_; }
    const std::string &mask_fingerprint() const noexcept { return fingerprint_; }
    Eigen::Index dimension() const noexcept { return dim_; }
    Eigen::Index sample_count() const noexcept { return n_; }
    bool uses_woodbury() const noexcept { return woodbury_; }
    double rcond() const noexcept { return rcond_; }

    CVector predict(const CVector &h0_flat) const;

  private:
    LmmseModel() = default;
    void factorize();

    Eigen::Index dim_ = 0;
    Eigen::Index n_ = 0;
    double sigma2_ = 0.0;
    std::string fingerprint_;
    bool woodbury_ = false;
    double rcond_ = 0.0;
    CMatrix h_;     // woodbury route: training channels
    CMatrix h0_;    // woodbury route: training observations
    CMatrix cross_; // dense route: R_hh0
    CMatrix auto_;  // dense route: sample R_h0h0 without regularization
    Eigen::LLT<CMatrix> llt_;
};

struct TrainingPair {
    CVector h;
    CVector h0;
};

LmmseModel lmmse_fit(std::span<const TrainingPair> pairs, double sigma2, std::string mask_fingerprint = {},
                     LmmseSolver solver = LmmseSolver::automatic);
// Columns of `h` are training channels, columns of `h0` their observations.
LmmseModel lmmse_fit(const CMatrix &h, const CMatrix &h0, double sigma2, std::string mask_fingerprint = {},
                     LmmseSolver solver = LmmseSolver::automatic);

CVector lmmse_predict(const CVector &h0_flat, const LmmseModel &model);

// Most recent element; InvalidInput for an empty history.
ChannelMatrix hold_last(std::span<const ChannelMatrix> history);
// Most recent element after zero-fill projection reconstruction on `basis`.
ChannelMatrix hold_last(std::span<const ChannelMatrix> history, const EbBasis &basis);

} // namespace ebcsi
