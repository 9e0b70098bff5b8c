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

#include "ebcsi/channel.hpp"
#include "ebcsi/scene.hpp"

namespace {

using namespace ebcsi;

const SceneGrid &scene() {
    static const SceneGrid s = generate_scene(SceneConfig{});
    return s;
}

void BM_ChannelFromPaths(benchmark::State &state) {
    const ArrayConfig array{static_cast<int>(state.range(0)), 4, 0.5};
    const OfdmConfig ofdm{static_cast<int>(state.range(1))};
    const auto paths = scene().cell(CellId{3, 3}).base_paths;
    for (auto _ : state)
        benchmark::DoNotOptimize(channel_from_paths(paths, array, ofdm).data.data());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ChannelFromPaths)->Args({8, 32})->Args({32, 208});

void BM_ChannelAt(benchmark::State &state) {
    const ArrayConfig array;
    const OfdmConfig ofdm;
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(channel_at(scene(), Coords{13.3, 27.1}, t, array, ofdm).data.data());
        t += 1e-3;
    }
}
BENCHMARK(BM_ChannelAt);

} // namespace
