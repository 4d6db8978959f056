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

#include <set>
#include <vector>

#include "doctest.h"
#include "segfuse/catalog.hpp"
#include "segfuse/errors.hpp"
#include "segfuse/fusion.hpp"
#include "segfuse/rng.hpp"
#include "test_support.hpp"

using namespace segfuse;
using segfuse::testing::brute_force_resolve;
using segfuse::testing::mask_from_rowmajor;

namespace {

const ClassCatalog& cs() {
  static const ClassCatalog catalog = ClassCatalog::cityscapes19();
  return catalog;
}

// The two example segments of the worked 4x4 case: A = car 0.9 on
// row-major pixels {5,6,9,10}, B = person 0.7 on {6,7,10,11}.
std::vector<InstanceSegment> ab_segments() {
  std::vector<InstanceSegment> segments;
  segments.push_back({mask_from_rowmajor(4, 4, {5, 6, 9, 10}), 13, 0.9});
  segments.push_back({mask_from_rowmajor(4, 4, {6, 7, 10, 11}), 11, 0.7});
  return segments;
}

std::set<int> claimed_pixels(const ForegroundMap& fg, ClassId cls) {
  std::set<int> pixels;
  for (std::size_t i = 0; i < fg.labels().pixel_count(); ++i) {
    if (!fg.is_hole(i) && fg.labels()[i] == cls) {
      pixels.insert(static_cast<int>(i));
    }
  }
  return pixels;
}

void check_matches_oracle(const std::vector<InstanceSegment>& segments,
                          int width, int height, const FusionPolicy& policy) {
  const ForegroundMap fg =
      resolve_instances(segments, width, height, cs(), policy);
  const auto oracle = brute_force_resolve(segments, width, height, policy);
  for (std::size_t p = 0; p < oracle.winner.size(); ++p) {
    REQUIRE(fg.provenance()[p] == oracle.winner[p]);
    if (oracle.winner[p] >= 0) {
      REQUIRE(fg.labels()[p] ==
              segments[static_cast<std::size_t>(oracle.winner[p])].class_id);
    } else {
      REQUIRE(fg.labels()[p] == cs().ignore_id());
    }
  }
}

}  // namespace

TEST_CASE("empty segment list leaves every pixel a hole") {
  const ForegroundMap fg = resolve_instances({}, 4, 4, cs(), {});
  CHECK(fg.hole_count() == 16);
  CHECK(fg.hole_fraction() == 1.0);
  for (std::size_t i = 0; i < 16; ++i) CHECK(fg.labels()[i] == 255);
}

TEST_CASE("overlap goes to the higher-scoring segment") {
  const auto segments = ab_segments();
  const ForegroundMap fg = resolve_instances(segments, 4, 4, cs(), {});
  CHECK(claimed_pixels(fg, 13) == std::set<int>{5, 6, 9, 10});
  CHECK(claimed_pixels(fg, 11) == std::set<int>{7, 11});
  CHECK(fg.hole_count() == 16 - 6);
  check_matches_oracle(segments, 4, 4, {});
}

TEST_CASE("min remaining fraction drops mostly-occluded segments") {
  FusionPolicy policy;
  policy.min_remaining_fraction = 0.6;  // B keeps 2/4 = 0.5 < 0.6
  const auto segments = ab_segments();
  const ForegroundMap fg = resolve_instances(segments, 4, 4, cs(), policy);
  CHECK(claimed_pixels(fg, 13) == std::set<int>{5, 6, 9, 10});
  CHECK(claimed_pixels(fg, 11).empty());
  check_matches_oracle(segments, 4, 4, policy);
}

TEST_CASE("score threshold skips low-scoring segments") {
  FusionPolicy policy;
  policy.score_threshold = 0.8;
  const auto segments = ab_segments();
  const ForegroundMap fg = resolve_instances(segments, 4, 4, cs(), policy);
  CHECK(claimed_pixels(fg, 13) == std::set<int>{5, 6, 9, 10});
  CHECK(claimed_pixels(fg, 11).empty());
}

TEST_CASE("equal scores resolve in input order") {
  std::vector<InstanceSegment> segments;
  segments.push_back({mask_from_rowmajor(2, 2, {0, 1}), 13, 0.5});
  segments.push_back({mask_from_rowmajor(2, 2, {1, 2}), 11, 0.5});
  const ForegroundMap fg = resolve_instances(segments, 2, 2, cs(), {});
  CHECK(fg.labels()[1] == 13);  // first in input order wins the tie
  CHECK(fg.labels()[2] == 11);
}

TEST_CASE("background-class segments are rejected, zero-area skipped") {
  std::vector<InstanceSegment> bad;
  bad.push_back({mask_from_rowmajor(2, 2, {0}), 0, 0.9});  // road = background
  CHECK_THROWS_AS(resolve_instances(bad, 2, 2, cs(), {}), ClassRoleError);

  std::vector<InstanceSegment> wrong_dims;
  wrong_dims.push_back({mask_from_rowmajor(3, 3, {0}), 13, 0.9});
  CHECK_THROWS_AS(resolve_instances(wrong_dims, 2, 2, cs(), {}), SizeError);

  std::vector<InstanceSegment> with_empty;
  with_empty.push_back({mask_from_rowmajor(2, 2, {}), 13, 0.9});
  const ForegroundMap fg = resolve_instances(with_empty, 2, 2, cs(), {});
  CHECK(fg.hole_count() == 4);
}

TEST_CASE("fill_holes copies claims verbatim and fills the rest") {
  // fg = [car, hole, hole, hole] over 2x2, semantic = [road, road, sky, person].
  std::vector<InstanceSegment> segments;
  segments.push_back({mask_from_rowmajor(2, 2, {0}), 13, 0.9});
  const ForegroundMap fg = resolve_instances(segments, 2, 2, cs(), {});
  const LabelMap semantic(2, 2, std::vector<ClassId>{0, 0, 10, 11});
  const LabelMap fused = fill_holes(fg, semantic);
  CHECK(fused.data()[0] == 13);
  CHECK(fused.data()[1] == 0);
  CHECK(fused.data()[2] == 10);
  CHECK(fused.data()[3] == 11);

  // All-holes foreground map: fill is the identity on the semantic input.
  const ForegroundMap empty_fg = resolve_instances({}, 2, 2, cs(), {});
  CHECK(fill_holes(empty_fg, semantic) == semantic);

  // Ignore pixels in the semantic source violate the contract.
  const LabelMap dirty(2, 2, std::vector<ClassId>{0, 255, 0, 0});
  CHECK_THROWS_AS(fill_holes(empty_fg, dirty), CatalogError);

  const LabelMap small(1, 1, std::vector<ClassId>{0});
  CHECK_THROWS_AS(fill_holes(empty_fg, small), SizeError);
}

TEST_CASE("fuse composes resolve and fill") {
  // No segments + uniform road semantic: all road.
  const LabelMap all_road(4, 4, ClassId{0});
  const FusionResult none = fuse({}, all_road, cs(), {});
  CHECK(none.fused == all_road);

  // The A/B example over all-building semantic.
  const LabelMap all_building(4, 4, ClassId{2});
  const FusionResult ab = fuse(ab_segments(), all_building, cs(), {});
  for (int i = 0; i < 16; ++i) {
    const ClassId expected = (i == 5 || i == 6 || i == 9 || i == 10) ? 13
                             : (i == 7 || i == 11)                   ? 11
                                                                     : 2;
    CHECK(ab.fused.data()[i] == expected);
  }

  // A full-image segment leaves no holes: semantic is irrelevant.
  std::vector<InstanceSegment> full;
  full.push_back({BinaryMask(4, 4, {0, 16}), 13, 0.4});
  const FusionResult covered = fuse(full, all_building, cs(), {});
  CHECK(covered.fused == LabelMap(4, 4, ClassId{13}));
  CHECK(covered.foreground.hole_count() == 0);
}

TEST_CASE("fused output partitions pixels with no ignore values") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<InstanceSegment> segments;
    const int n = rng.uniform_int(0, 5);
    for (int s = 0; s < n; ++s) {
      std::vector<std::uint8_t> bits(64);
      for (auto& b : bits) b = rng.bernoulli(0.3) ? 1 : 0;
      segments.push_back({rle_encode(bits, 8, 8),
                          ClassId{13},
                          rng.uniform()});
    }
    const LabelMap semantic(8, 8, ClassId{0});
    const FusionResult result = fuse(segments, semantic, cs(), {});
    CHECK_FALSE(result.fused.contains_value(cs().ignore_id()));

    // Priority: claimed pixels are never altered by the fill.
    for (std::size_t i = 0; i < 64; ++i) {
      if (!result.foreground.is_hole(i)) {
        CHECK(result.fused[i] == result.foreground.labels()[i]);
      }
    }

    // Disjointness bookkeeping: surviving pixel counts add up.
    std::size_t claimed = 0;
    for (std::size_t i = 0; i < 64; ++i) {
      claimed += result.foreground.is_hole(i) ? 0 : 1;
    }
    CHECK(claimed == result.foreground.claimed_count());
  }
}

TEST_CASE("resolve matches the brute-force oracle on random cases with ties") {
  Rng rng(99);
  const double scores[] = {0.3, 0.6, 0.9};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<InstanceSegment> segments;
    const int n = rng.uniform_int(0, 4);
    for (int s = 0; s < n; ++s) {
      std::vector<std::uint8_t> bits(36);
      for (auto& b : bits) b = rng.bernoulli(0.4) ? 1 : 0;
      segments.push_back({rle_encode(bits, 6, 6),
                          ClassId{rng.bernoulli(0.5) ? ClassId{13} : ClassId{11}},
                          scores[rng.uniform_below(3)]});
    }
    FusionPolicy policy;
    if (rng.bernoulli(0.3)) policy.score_threshold = 0.5;
    if (rng.bernoulli(0.3)) policy.min_remaining_fraction = rng.uniform();
    check_matches_oracle(segments, 6, 6, policy);
  }
}

TEST_CASE("enabling a score threshold can only grow the hole set") {
  Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<InstanceSegment> segments;
    const int n = rng.uniform_int(1, 4);
    for (int s = 0; s < n; ++s) {
      std::vector<std::uint8_t> bits(16);
      for (auto& b : bits) b = rng.bernoulli(0.5) ? 1 : 0;
      segments.push_back({rle_encode(bits, 4, 4), ClassId{13}, rng.uniform()});
    }
    const ForegroundMap open = resolve_instances(segments, 4, 4, cs(), {});
    FusionPolicy thresholded;
    thresholded.score_threshold = rng.uniform();
    const ForegroundMap closed =
        resolve_instances(segments, 4, 4, cs(), thresholded);
    for (std::size_t i = 0; i < 16; ++i) {
      if (open.is_hole(i)) CHECK(closed.is_hole(i));
    }
  }
}
