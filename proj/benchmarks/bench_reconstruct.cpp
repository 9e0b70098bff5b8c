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

#include <benchmark/benchmark.h>

#include "ebcsi/observation.hpp"
#include "ebcsi/reconstruct.hpp"
#include "ebcsi/rng.hpp"
#include "ebcsi/scene.hpp"

namespace {

using namespace ebcsi;

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Seed seed) {
    auto rng = make_rng(seed, {});
    CMatrix m(rows, cols);
    fill_cscg(rng, 1.0, m.data(), static_cast<std::size_t>(m.size()));
    return m;
}

void BM_LmmseFit(benchmark::State &state) {
    const CMatrix h = random_matrix(1024, state.range(0), 1);
    const CMatrix h0 = random_matrix(1024, state.range(0), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(lmmse_fit(h, h0, 0.1).rcond());
}
BENCHMARK(BM_LmmseFit)->Arg(40)->Arg(400);

void BM_LmmsePredict(benchmark::State &state) {
    const CMatrix h = random_matrix(1024, state.range(0), 1);
    const CMatrix h0 = random_matrix(1024, state.range(0), 2);
    const auto model = lmmse_fit(h, h0, 0.1);
    const CVector x = random_matrix(1024, 1, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(model.predict(x).data());
}
BENCHMARK(BM_LmmsePredict)->Arg(40)->Arg(400);

void BM_ProjectZeroFill(benchmark::State &state) {
    const auto scene = generate_scene(SceneConfig{});
    const auto basis =
        extract_eb(collect_vertex_snapshots(scene, CellId{1, 1}, ArrayConfig{}, OfdmConfig{}), BasisSelection::fixed(15));
    const CVector x = random_matrix(1024, 1, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(reconstruct_from_coeff(project(x, basis), basis).data());
}
BENCHMARK(BM_ProjectZeroFill);

void BM_ProjectMaskedLs(benchmark::State &state) {
    const auto scene = generate_scene(SceneConfig{});
    const auto basis =
        extract_eb(collect_vertex_snapshots(scene, CellId{1, 1}, ArrayConfig{}, OfdmConfig{}), BasisSelection::fixed(15));
    const auto mask = make_mask(32, 32, PilotRatio{1, 8});
    const CVector x = random_matrix(1024, 1, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(project(x, basis, ProjectionMode::masked_ls, &mask).data());
}
BENCHMARK(BM_ProjectMaskedLs);

} // namespace
