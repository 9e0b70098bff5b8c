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

#include "ebcsi/scene.hpp"
#include "ebcsi/subspace.hpp"

namespace {

using namespace ebcsi;

const SceneGrid &scene() {
    static const SceneGrid s = generate_scene(SceneConfig{});
    return s;
}

void BM_CollectVertexSnapshots(benchmark::State &state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            collect_vertex_snapshots(scene(), CellId{2, 4}, ArrayConfig{}, OfdmConfig{}).snapshots.data());
}
BENCHMARK(BM_CollectVertexSnapshots);

void BM_ExtractEb(benchmark::State &state) {
    const auto snaps = collect_vertex_snapshots(scene(), CellId{2, 4}, ArrayConfig{}, OfdmConfig{});
    const auto sel = BasisSelection::fixed(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(extract_eb(snaps, sel).u.data());
}
BENCHMARK(BM_ExtractEb)->Arg(5)->Arg(15)->Arg(40);

void BM_BuildStore(benchmark::State &state) {
    const ExtractionSettings settings;
    for (auto _ : state)
        benchmark::DoNotOptimize(build_store(scene(), ArrayConfig{}, OfdmConfig{}, settings, 1).bases().size());
}
BENCHMARK(BM_BuildStore)->Unit(benchmark::kMillisecond);

} // namespace
