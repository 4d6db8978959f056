// Copyright 2026 The Segfuse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "segfuse/binary_mask.hpp"
#include "segfuse/catalog.hpp"
#include "segfuse/corruption.hpp"
#include "segfuse/eval.hpp"
#include "segfuse/fusion.hpp"
#include "segfuse/rng.hpp"
#include "segfuse/scene.hpp"

namespace {

using namespace segfuse;

const ClassCatalog& cs() {
  static const ClassCatalog catalog = ClassCatalog::cityscapes19();
  return catalog;
}

Scene make_scene(int width, int height, std::uint64_t seed) {
  SceneSpec spec = default_scene_spec();
  spec.width = width;
  spec.height = height;
  spec.seed = seed;
  return generate_scene(spec, cs());
}

void BM_RleRoundTrip(benchmark::State& state) {
  Rng rng(1);
  const int side = static_cast<int>(state.range(0));
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(side) * side);
  for (auto& b : bits) b = rng.bernoulli(0.35) ? 1 : 0;
  for (auto _ : state) {
    const BinaryMask mask = rle_encode(bits, side, side);
    benchmark::DoNotOptimize(rle_decode(mask));
  }
  state.SetItemsProcessed(state.iterations() * bits.size());
}
BENCHMARK(BM_RleRoundTrip)->Arg(64)->Arg(256)->Arg(1024);

void BM_ResolveInstances(benchmark::State& state) {
  const Scene scene = make_scene(static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(0)) / 2, 7);
  std::vector<InstanceSegment> segments;
  for (const SceneInstance& inst : scene.instances) {
    segments.push_back(inst.segment);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(resolve_instances(
        segments, scene.gt.width(), scene.gt.height(), cs(), {}));
  }
  state.SetItemsProcessed(state.iterations() * scene.gt.pixel_count());
}
BENCHMARK(BM_ResolveInstances)->Arg(256)->Arg(512)->Arg(1024);

void BM_FuseScene(benchmark::State& state) {
  const Scene scene = make_scene(static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(0)) / 2, 11);
  CorruptionSpec corruption;
  corruption.semantic.fg_confusion = 0.4;
  corruption.instance.miss_rate = 0.1;
  corruption.instance.mask_jitter = 1;
  const ProbVolume probs =
      simulate_semantic(scene.gt, scene.instances, corruption, cs(), 3);
  const std::vector<InstanceSegment> detections =
      simulate_instances(scene.instances, corruption, cs(), 4);
  const LabelMap semantic = argmax_labels(probs, cs());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fuse(detections, semantic, cs(), {}));
  }
  state.SetItemsProcessed(state.iterations() * scene.gt.pixel_count());
}
BENCHMARK(BM_FuseScene)->Arg(256)->Arg(512)->Arg(1024);

void BM_ConfusionAndReport(benchmark::State& state) {
  const Scene scene = make_scene(static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(0)) / 2, 13);
  for (auto _ : state) {
    const ConfusionMatrix cm = confusion(scene.gt, scene.gt, cs());
    benchmark::DoNotOptimize(iou_report(cm, cs()));
  }
  state.SetItemsProcessed(state.iterations() * scene.gt.pixel_count());
}
BENCHMARK(BM_ConfusionAndReport)->Arg(512)->Arg(1024);

void BM_GenerateScene(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        make_scene(static_cast<int>(state.range(0)),
                   static_cast<int>(state.range(0)) / 2, seed++));
  }
}
BENCHMARK(BM_GenerateScene)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
