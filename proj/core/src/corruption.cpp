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

#include "segfuse/corruption.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "segfuse/errors.hpp"
#include "segfuse/rng.hpp"

namespace segfuse {

namespace {

const std::map<std::string, std::vector<std::string>>& default_confusions() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"car", {"truck", "bus"}},
      {"truck", {"car", "bus"}},
      {"bus", {"car", "truck", "train"}},
      {"train", {"bus"}},
      {"person", {"rider"}},
      {"rider", {"person"}},
      {"motorcycle", {"bicycle"}},
      {"bicycle", {"motorcycle"}},
      {"traffic light", {"traffic sign"}},
      {"traffic sign", {"traffic light"}},
  };
  return table;
}

void check_probability(double v, const std::string& path) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw SpecError(path + ": probability " + std::to_string(v) +
                    " outside [0, 1]");
  }
}

double mask_iou(const BinaryMask& a, const BinaryMask& b) {
  const std::vector<std::uint8_t> pa = a.to_pixels();
  const std::vector<std::uint8_t> pb = b.to_pixels();
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    inter += (pa[i] & pb[i]);
    uni += (pa[i] | pb[i]);
  }
  return uni == 0 ? 0.0
                  : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

void validate_corruption_spec(const CorruptionSpec& spec,
                              const ClassCatalog& catalog) {
  check_probability(spec.semantic.fg_confusion, "semantic.fg_confusion");
  check_probability(spec.semantic.bg_noise, "semantic.bg_noise");
  if (spec.semantic.boundary_jitter < 0) {
    throw SpecError("semantic.boundary_jitter: must be >= 0");
  }
  check_probability(spec.instance.miss_rate, "instance.miss_rate");
  if (spec.instance.spurious_rate < 0.0) {
    throw SpecError("instance.spurious_rate: must be >= 0");
  }
  if (spec.instance.mask_jitter < 0) {
    throw SpecError("instance.mask_jitter: must be >= 0");
  }
  if (spec.instance.score_sigma < 0.0) {
    throw SpecError("instance.score_sigma: must be >= 0");
  }
  for (const auto& [from, targets] : spec.semantic.confusions) {
    const std::string path = "semantic.confusions." + from;
    const auto from_id = catalog.id_of_name(from);
    if (!from_id || !catalog.is_foreground(*from_id)) {
      throw SpecError(path + ": not a foreground class of catalog '" +
                      catalog.name() + "'");
    }
    if (targets.empty()) throw SpecError(path + ": empty target list");
    for (const std::string& target : targets) {
      const auto to_id = catalog.id_of_name(target);
      if (!to_id || !catalog.is_foreground(*to_id)) {
        throw SpecError(path + ": target '" + target +
                        "' is not a foreground class of catalog '" +
                        catalog.name() + "'");
      }
    }
  }
}

std::map<ClassId, std::vector<ClassId>> resolve_confusion_table(
    const SemanticCorruption& spec, const ClassCatalog& catalog) {
  const auto& source =
      spec.confusions.empty() ? default_confusions() : spec.confusions;
  std::map<ClassId, std::vector<ClassId>> table;
  for (const auto& [from, targets] : source) {
    const auto from_id = catalog.id_of_name(from);
    if (!from_id) continue;  // default table entries absent from catalog
    std::vector<ClassId> ids;
    for (const std::string& target : targets) {
      if (const auto to_id = catalog.id_of_name(target)) ids.push_back(*to_id);
    }
    if (!ids.empty()) table[*from_id] = std::move(ids);
  }
  return table;
}

ProbVolume simulate_semantic(const LabelMap& gt,
                             std::span<const SceneInstance> instances,
                             const CorruptionSpec& spec,
                             const ClassCatalog& catalog, std::uint64_t seed) {
  validate_corruption_spec(spec, catalog);
  const SemanticCorruption& sem = spec.semantic;
  Rng rng(seed);

  const int width = gt.width();
  const int height = gt.height();
  std::vector<ClassId> labels(gt.data().begin(), gt.data().end());

  // Whole-object texture confusion on the foreground channel.
  const auto confusions = resolve_confusion_table(sem, catalog);
  for (const SceneInstance& inst : instances) {
    if (inst.segment.mask.empty()) continue;
    if (!rng.bernoulli(sem.fg_confusion)) continue;
    const auto it = confusions.find(inst.segment.class_id);
    if (it == confusions.end()) continue;
    const ClassId target =
        it->second[rng.uniform_below(it->second.size())];
    inst.segment.mask.for_each_set([&](int x, int y) {
      labels[static_cast<std::size_t>(y) * width + x] = target;
    });
  }

  // Boundary wobble: boundary pixels adopt a random 4-neighbour's label.
  for (int pass = 0; pass < sem.boundary_jitter; ++pass) {
    const std::vector<ClassId> snapshot = labels;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * width + x;
        const ClassId own = snapshot[i];
        bool boundary = false;
        if (x > 0) boundary |= snapshot[i - 1] != own;
        if (x + 1 < width) boundary |= snapshot[i + 1] != own;
        if (y > 0) boundary |= snapshot[i - width] != own;
        if (y + 1 < height) boundary |= snapshot[i + width] != own;
        if (!boundary || !rng.bernoulli(0.5)) continue;
        const int pick = rng.uniform_int(0, 3);
        const int nx = x + (pick == 0 ? -1 : pick == 1 ? 1 : 0);
        const int ny = y + (pick == 2 ? -1 : pick == 3 ? 1 : 0);
        if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
        labels[i] = snapshot[static_cast<std::size_t>(ny) * width + nx];
      }
    }
  }

  // Per-pixel background flips, judged against the GT role.
  const std::vector<ClassId> bg_ids =
      catalog.ids_with_role(ClassRole::kBackground);
  if (sem.bg_noise > 0.0 && bg_ids.size() > 1) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (catalog.is_foreground(gt[i])) continue;
      if (!rng.bernoulli(sem.bg_noise)) continue;
      ClassId target = bg_ids[rng.uniform_below(bg_ids.size())];
      while (target == gt[i]) {
        target = bg_ids[rng.uniform_below(bg_ids.size())];
      }
      labels[i] = target;
    }
  }

  // Near-one-hot volume over catalog channels.
  const int channels = static_cast<int>(catalog.size());
  const float off = 0.02f / static_cast<float>(channels - 1 > 0 ? channels - 1
                                                                : 1);
  const float on = channels > 1 ? 1.0f - 0.02f : 1.0f;
  std::vector<float> data(labels.size() * channels, off);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t c = catalog.index_of(labels[i]);
    data[i * channels + c] = on;
  }
  return ProbVolume(width, height, channels, std::move(data));
}

std::vector<InstanceSegment> simulate_instances(
    std::span<const SceneInstance> instances, const CorruptionSpec& spec,
    const ClassCatalog& catalog, std::uint64_t seed) {
  validate_corruption_spec(spec, catalog);
  const InstanceCorruption& ins = spec.instance;
  Rng rng(seed);

  std::vector<InstanceSegment> out;
  int width = 0, height = 0;
  for (const SceneInstance& inst : instances) {
    width = inst.segment.mask.width();
    height = inst.segment.mask.height();
    if (rng.bernoulli(ins.miss_rate)) continue;
    BinaryMask mask = inst.segment.mask;
    if (ins.mask_jitter > 0) {
      const int dx = rng.uniform_int(-ins.mask_jitter, ins.mask_jitter);
      const int dy = rng.uniform_int(-ins.mask_jitter, ins.mask_jitter);
      mask = mask.translated(dx, dy);
    }
    const double iou = mask_iou(mask, inst.segment.mask);
    const double score =
        std::clamp(iou + rng.normal(0.0, ins.score_sigma), 0.0, 1.0);
    out.push_back(InstanceSegment{std::move(mask), inst.segment.class_id,
                                  score});
  }

  // Hallucinated low-score boxes with a random foreground class.
  if (ins.spurious_rate > 0.0 && width > 0 && height > 0) {
    const std::vector<ClassId> fg_ids =
        catalog.ids_with_role(ClassRole::kForeground);
    const int count = rng.poisson(ins.spurious_rate);
    for (int k = 0; k < count; ++k) {
      const ClassId cls = fg_ids[rng.uniform_below(fg_ids.size())];
      const int w = rng.uniform_int(2, std::max(3, width / 8));
      const int h = rng.uniform_int(2, std::max(3, height / 6));
      const int x0 = rng.uniform_int(0, std::max(0, width - w));
      const int y0 = rng.uniform_int(0, std::max(0, height - h));
      BinaryMask mask =
          BinaryMask::from_predicate(width, height, [&](int x, int y) {
            return x >= x0 && x < x0 + w && y >= y0 && y < y0 + h;
          });
      const double score = rng.uniform(0.02, 0.30);
      out.push_back(InstanceSegment{std::move(mask), cls, score});
    }
  }
  return out;
}

}  // namespace segfuse
