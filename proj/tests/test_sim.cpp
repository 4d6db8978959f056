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

#include <cstdint>
#include <vector>

#include "doctest.h"
#include "segfuse/catalog.hpp"
#include "segfuse/corruption.hpp"
#include "segfuse/errors.hpp"
#include "segfuse/prob_volume.hpp"
#include "segfuse/rng.hpp"
#include "segfuse/scene.hpp"

using namespace segfuse;

namespace {

const ClassCatalog& cs() {
  static const ClassCatalog catalog = ClassCatalog::cityscapes19();
  return catalog;
}

SceneSpec single_car_spec(std::uint64_t seed) {
  SceneSpec spec;
  spec.width = 48;
  spec.height = 32;
  spec.bands = {{"sky", 0.3}, {"road", 0.7}};
  spec.instance_counts = {{"car", 1}};
  spec.shapes = {{"car", {{"vehicle"}, 0.25, 0.40, 1.6, 2.4, "road"}}};
  spec.seed = seed;
  return spec;
}

std::uint64_t fnv1a(std::span<const ClassId> bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const ClassId b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

TEST_CASE("zero instance counts give a pure band layout") {
  SceneSpec spec = default_scene_spec();
  for (auto& [name, count] : spec.instance_counts) count = 0;
  const Scene scene = generate_scene(spec, cs());
  CHECK(scene.instances.empty());

  // Band boundaries at the configured fractions of the 128-row image.
  CHECK(scene.gt.at(0, 0) == *cs().id_of_name("sky"));
  CHECK(scene.gt.at(0, 31) == *cs().id_of_name("sky"));
  CHECK(scene.gt.at(0, 32) == *cs().id_of_name("building"));
  CHECK(scene.gt.at(0, 76) == *cs().id_of_name("building"));
  CHECK(scene.gt.at(0, 77) == *cs().id_of_name("road"));
  CHECK(scene.gt.at(0, 114) == *cs().id_of_name("road"));
  CHECK(scene.gt.at(0, 115) == *cs().id_of_name("sidewalk"));
  CHECK(scene.gt.at(0, 127) == *cs().id_of_name("sidewalk"));
}

TEST_CASE("instance counts force ids 1..N") {
  SceneSpec spec = default_scene_spec();
  spec.instance_counts = {{"car", 2}, {"person", 1}};
  const Scene scene = generate_scene(spec, cs());
  REQUIRE(scene.instances.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(scene.instances[i].id == static_cast<int>(i) + 1);
  }
  // Person id 11 sorts before car id 13 in placement order.
  CHECK(scene.instances[0].segment.class_id == 11);
  CHECK(scene.instances[1].segment.class_id == 13);
  CHECK(scene.instances[2].segment.class_id == 13);
  for (const SceneInstance& inst : scene.instances) {
    CHECK(inst.segment.score == 1.0);
  }
}

TEST_CASE("identical spec and seed give bit-identical scenes") {
  SceneSpec spec = default_scene_spec();
  spec.seed = 42;
  const Scene a = generate_scene(spec, cs());
  const Scene b = generate_scene(spec, cs());
  CHECK(a.gt == b.gt);
  REQUIRE(a.instances.size() == b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    CHECK(a.instances[i].segment.mask == b.instances[i].segment.mask);
  }

  SceneSpec other = spec;
  other.seed = 43;
  CHECK_FALSE(generate_scene(other, cs()).gt == a.gt);
}

TEST_CASE("visible instance masks partition the foreground pixels") {
  SceneSpec spec = default_scene_spec();
  spec.seed = 7;
  const Scene scene = generate_scene(spec, cs());

  std::vector<int> owner(scene.gt.pixel_count(), 0);
  for (const SceneInstance& inst : scene.instances) {
    inst.segment.mask.for_each_set([&](int x, int y) {
      const std::size_t p =
          static_cast<std::size_t>(y) * scene.gt.width() + x;
      CHECK(owner[p] == 0);  // no overlaps after occlusion resolution
      owner[p] = inst.id;
      CHECK(scene.gt[p] == inst.segment.class_id);
    });
  }
  for (std::size_t p = 0; p < scene.gt.pixel_count(); ++p) {
    CHECK((owner[p] != 0) == cs().is_foreground(scene.gt[p]));
  }
}

TEST_CASE("scene spec validation reports field paths") {
  SceneSpec spec = default_scene_spec();
  spec.bands[0].fraction = 0.0;
  CHECK_THROWS_AS(generate_scene(spec, cs()), SpecError);

  spec = default_scene_spec();
  spec.bands = {{"sky", 0.5}, {"road", 0.6}};
  CHECK_THROWS_AS(generate_scene(spec, cs()), SpecError);

  spec = default_scene_spec();
  spec.bands = {{"car", 1.0}};  // foreground band
  CHECK_THROWS_AS(generate_scene(spec, cs()), SpecError);

  spec = default_scene_spec();
  spec.instance_counts["road"] = 1;  // background instances
  CHECK_THROWS_AS(generate_scene(spec, cs()), SpecError);

  // Tiny images where a band rounds to zero rows are spec errors.
  spec = default_scene_spec();
  spec.height = 4;
  CHECK_THROWS_AS(generate_scene(spec, cs()), SpecError);
}

TEST_CASE("frozen digest guards the generator against drift") {
  SceneSpec spec = default_scene_spec();
  spec.seed = 42;
  const Scene scene = generate_scene(spec, cs());
  CHECK(fnv1a(scene.gt.data()) == 0x1bbbe74fb87917a0ULL);
}

TEST_CASE("zero corruption reproduces the ground truth exactly") {
  SceneSpec spec = default_scene_spec();
  spec.seed = 3;
  const Scene scene = generate_scene(spec, cs());
  const CorruptionSpec identity;

  const ProbVolume probs =
      simulate_semantic(scene.gt, scene.instances, identity, cs(), 77);
  CHECK(argmax_labels(probs, cs()) == scene.gt);

  const std::vector<InstanceSegment> detections =
      simulate_instances(scene.instances, identity, cs(), 78);
  REQUIRE(detections.size() == scene.instances.size());
  for (std::size_t i = 0; i < detections.size(); ++i) {
    CHECK(detections[i].mask == scene.instances[i].segment.mask);
    CHECK(detections[i].class_id == scene.instances[i].segment.class_id);
    CHECK(detections[i].score == 1.0);
  }
}

TEST_CASE("forced confusion flips every car region to truck") {
  SceneSpec spec = single_car_spec(11);
  const Scene scene = generate_scene(spec, cs());
  REQUIRE(scene.instances.size() == 1);
  REQUIRE(scene.instances[0].segment.mask.area() > 0);

  CorruptionSpec corruption;
  corruption.semantic.fg_confusion = 1.0;
  corruption.semantic.confusions = {{"car", {"truck"}}};
  const ProbVolume probs =
      simulate_semantic(scene.gt, scene.instances, corruption, cs(), 5);
  const LabelMap labels = argmax_labels(probs, cs());
  scene.instances[0].segment.mask.for_each_set([&](int x, int y) {
    CHECK(labels.at(x, y) == *cs().id_of_name("truck"));
  });
}

TEST_CASE("confusion probability is honored over 1000 seeded scenes") {
  CorruptionSpec corruption;
  corruption.semantic.fg_confusion = 0.5;

  int flipped = 0;
  const ClassId car = *cs().id_of_name("car");
  for (int i = 0; i < 1000; ++i) {
    const Scene scene = generate_scene(single_car_spec(i), cs());
    REQUIRE(scene.instances.size() == 1);
    REQUIRE(scene.instances[0].segment.mask.area() > 0);
    const ProbVolume probs = simulate_semantic(
        scene.gt, scene.instances, corruption, cs(), 10000 + i);
    const LabelMap labels = argmax_labels(probs, cs());
    bool saw_flip = false;
    scene.instances[0].segment.mask.for_each_set([&](int x, int y) {
      saw_flip |= labels.at(x, y) != car;
    });
    flipped += saw_flip ? 1 : 0;
  }
  // Binomial(1000, 0.5): 0.5 +- 0.05 is a > 3-sigma band.
  const double fraction = flipped / 1000.0;
  CHECK(fraction > 0.45);
  CHECK(fraction < 0.55);
}

TEST_CASE("background noise flips only background pixels") {
  SceneSpec spec = single_car_spec(19);
  const Scene scene = generate_scene(spec, cs());
  CorruptionSpec corruption;
  corruption.semantic.bg_noise = 0.5;
  const ProbVolume probs =
      simulate_semantic(scene.gt, scene.instances, corruption, cs(), 6);
  const LabelMap labels = argmax_labels(probs, cs());
  std::size_t changed = 0;
  for (std::size_t i = 0; i < labels.pixel_count(); ++i) {
    if (cs().is_foreground(scene.gt[i])) {
      CHECK(labels[i] == scene.gt[i]);
    } else {
      CHECK_FALSE(cs().is_foreground(labels[i]));
      changed += labels[i] != scene.gt[i] ? 1 : 0;
    }
  }
  CHECK(changed > 0);
}

TEST_CASE("miss rate one yields no detections") {
  const Scene scene = generate_scene(single_car_spec(23), cs());
  CorruptionSpec corruption;
  corruption.instance.miss_rate = 1.0;
  CHECK(simulate_instances(scene.instances, corruption, cs(), 9).empty());
}

TEST_CASE("surviving detections keep their class under heavy jitter") {
  SceneSpec spec = default_scene_spec();
  spec.seed = 31;
  const Scene scene = generate_scene(spec, cs());
  CorruptionSpec corruption;
  corruption.instance.mask_jitter = 3;
  corruption.instance.score_sigma = 0.2;
  const std::vector<InstanceSegment> detections =
      simulate_instances(scene.instances, corruption, cs(), 12);
  REQUIRE(detections.size() == scene.instances.size());
  for (std::size_t i = 0; i < detections.size(); ++i) {
    CHECK(detections[i].class_id == scene.instances[i].segment.class_id);
    CHECK(detections[i].score >= 0.0);
    CHECK(detections[i].score <= 1.0);
  }
}

TEST_CASE("spurious detections follow the configured rate") {
  const Scene scene = generate_scene(single_car_spec(37), cs());
  CorruptionSpec corruption;
  corruption.instance.spurious_rate = 2.0;
  std::size_t total = 0;
  for (int i = 0; i < 500; ++i) {
    total += simulate_instances(scene.instances, corruption, cs(), 100 + i)
                 .size() -
             1;  // one real instance always survives (miss_rate 0)
  }
  const double mean = static_cast<double>(total) / 500.0;
  CHECK(mean > 1.7);  // Poisson(2), 500 samples: ~2 +- 0.19 at 3 sigma
  CHECK(mean < 2.3);
}

TEST_CASE("mask jitter IoU matches the shift-enumeration oracle") {
  // A 6x6 disc, jittered by at most one pixel in each axis.
  const BinaryMask disc = BinaryMask::from_predicate(6, 6, [](int x, int y) {
    const double dx = x + 0.5 - 3.0;
    const double dy = y + 0.5 - 3.0;
    return dx * dx + dy * dy <= 9.0;
  });
  REQUIRE(disc.area() > 0);
  std::vector<SceneInstance> instances;
  instances.push_back({1, InstanceSegment{disc, 13, 1.0}});

  // Enumeration oracle: mean IoU over the nine equally-likely offsets,
  // computed by direct set arithmetic on the decoded grid.
  const std::vector<std::uint8_t> base = disc.to_pixels();
  auto shifted_iou = [&](int dx, int dy) {
    std::size_t inter = 0, uni = 0;
    for (int x = 0; x < 6; ++x) {
      for (int y = 0; y < 6; ++y) {
        const bool orig = base[static_cast<std::size_t>(x) * 6 + y] != 0;
        const int sx = x - dx, sy = y - dy;
        const bool moved = sx >= 0 && sx < 6 && sy >= 0 && sy < 6 &&
                           base[static_cast<std::size_t>(sx) * 6 + sy] != 0;
        inter += (orig && moved) ? 1 : 0;
        uni += (orig || moved) ? 1 : 0;
      }
    }
    return static_cast<double>(inter) / static_cast<double>(uni);
  };
  double expected = 0.0;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) expected += shifted_iou(dx, dy);
  }
  expected /= 9.0;

  CorruptionSpec corruption;
  corruption.instance.mask_jitter = 1;
  double total = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto out = simulate_instances(instances, corruption, cs(), 555 + i);
    REQUIRE(out.size() == 1);
    // score_sigma is zero, so the score IS the IoU against the GT mask.
    total += out[0].score;
  }
  const double mean = total / 1000.0;
  CHECK(mean == doctest::Approx(expected).epsilon(0.03));
  CHECK(mean >= 0.5);
  CHECK(mean <= 0.95);
}

TEST_CASE("corruption spec validation flags bad fields") {
  CorruptionSpec corruption;
  corruption.semantic.fg_confusion = 1.5;
  CHECK_THROWS_AS(validate_corruption_spec(corruption, cs()), SpecError);

  corruption = {};
  corruption.instance.mask_jitter = -1;
  CHECK_THROWS_AS(validate_corruption_spec(corruption, cs()), SpecError);

  corruption = {};
  corruption.semantic.confusions = {{"road", {"car"}}};  // background source
  CHECK_THROWS_AS(validate_corruption_spec(corruption, cs()), SpecError);
}
