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

#include "segfuse/scene.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "segfuse/errors.hpp"
#include "segfuse/rng.hpp"

namespace segfuse {

namespace {

constexpr double kFractionTolerance = 1e-9;

std::vector<ShapeTemplate> build_template_library() {
  using K = ShapePart::Kind;
  std::vector<ShapeTemplate> lib;
  lib.push_back({"rect", {{K::kRect, 0.5, 0.5, 1.0, 1.0}}});
  lib.push_back({"disc", {{K::kDisc, 0.5, 0.5, 1.0, 1.0}}});
  // Vehicle: long body with a shorter cabin on top.
  lib.push_back({"vehicle",
                 {{K::kRect, 0.5, 0.7, 1.0, 0.6},
                  {K::kRect, 0.5, 0.25, 0.55, 0.5}}});
  // Standing figure: disc head over a narrow body.
  lib.push_back({"figure",
                 {{K::kDisc, 0.5, 0.14, 0.56, 0.28},
                  {K::kRect, 0.5, 0.64, 0.62, 0.72}}});
  // Disc on a thin pole (traffic-light style).
  lib.push_back({"lollipop",
                 {{K::kDisc, 0.5, 0.22, 0.9, 0.44},
                  {K::kRect, 0.5, 0.72, 0.16, 0.56}}});
  // Plate on a thin pole (signage style).
  lib.push_back({"board",
                 {{K::kRect, 0.5, 0.25, 1.0, 0.5},
                  {K::kRect, 0.5, 0.75, 0.14, 0.5}}});
  // Two wheels joined by a bar (cycle style).
  lib.push_back({"wheels",
                 {{K::kDisc, 0.22, 0.62, 0.44, 0.72},
                  {K::kDisc, 0.78, 0.62, 0.44, 0.72},
                  {K::kRect, 0.5, 0.42, 0.72, 0.24}}});
  return lib;
}

const ShapeTemplate* find_template(const std::string& name) {
  for (const ShapeTemplate& t : shape_template_library()) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

struct BandRange {
  ClassId class_id;
  int y0;  // inclusive
  int y1;  // exclusive
};

std::vector<BandRange> resolve_bands(const SceneSpec& spec,
                                     const ClassCatalog& catalog) {
  std::vector<BandRange> ranges;
  double cumulative = 0.0;
  int prev = 0;
  for (std::size_t b = 0; b < spec.bands.size(); ++b) {
    cumulative += spec.bands[b].fraction;
    int next = (b + 1 == spec.bands.size())
                   ? spec.height
                   : static_cast<int>(std::lround(cumulative * spec.height));
    next = std::clamp(next, prev, spec.height);
    const ClassId id = *catalog.id_of_name(spec.bands[b].class_name);
    ranges.push_back({id, prev, next});
    prev = next;
  }
  return ranges;
}

void rasterize_part(const ShapePart& part, double box_x0, double box_y0,
                    double box_w, double box_h, int width, int height,
                    int instance_id, std::vector<std::int32_t>& canvas) {
  const double cx = box_x0 + part.cx * box_w;
  const double cy = box_y0 + part.cy * box_h;
  const double half_w = 0.5 * part.w * box_w;
  const double half_h = 0.5 * part.h * box_h;
  const int x_lo = std::max(0, static_cast<int>(std::floor(cx - half_w)));
  const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(cx + half_w)));
  const int y_lo = std::max(0, static_cast<int>(std::floor(cy - half_h)));
  const int y_hi = std::min(height - 1, static_cast<int>(std::ceil(cy + half_h)));
  for (int y = y_lo; y <= y_hi; ++y) {
    for (int x = x_lo; x <= x_hi; ++x) {
      const double px = x + 0.5 - cx;
      const double py = y + 0.5 - cy;
      bool inside = false;
      if (part.kind == ShapePart::Kind::kRect) {
        inside = std::abs(px) <= half_w && std::abs(py) <= half_h;
      } else {
        const double nx = px / half_w;
        const double ny = py / half_h;
        inside = nx * nx + ny * ny <= 1.0;
      }
      if (inside) {
        canvas[static_cast<std::size_t>(y) * width + x] = instance_id;
      }
    }
  }
}

}  // namespace

const std::vector<ShapeTemplate>& shape_template_library() {
  static const std::vector<ShapeTemplate> lib = build_template_library();
  return lib;
}

SceneSpec default_scene_spec() {
  SceneSpec spec;
  spec.width = 256;
  spec.height = 128;
  spec.bands = {{"sky", 0.25}, {"building", 0.35}, {"road", 0.30},
                {"sidewalk", 0.10}};
  spec.instance_counts = {
      {"car", 3},         {"truck", 1},    {"bus", 1},
      {"train", 1},       {"person", 2},   {"rider", 1},
      {"bicycle", 1},     {"motorcycle", 1},
      {"traffic light", 1}, {"traffic sign", 2},
  };
  spec.shapes = {
      {"car", {{"vehicle"}, 0.10, 0.20, 1.6, 2.6, "road"}},
      {"truck", {{"vehicle"}, 0.16, 0.24, 1.8, 2.8, "road"}},
      {"bus", {{"vehicle"}, 0.16, 0.26, 2.0, 3.0, "road"}},
      {"train", {{"rect"}, 0.14, 0.20, 3.0, 4.5, "road"}},
      {"person", {{"figure"}, 0.12, 0.20, 0.30, 0.45, "sidewalk"}},
      {"rider", {{"figure"}, 0.12, 0.18, 0.35, 0.50, "road"}},
      {"bicycle", {{"wheels"}, 0.08, 0.14, 1.4, 2.0, "road"}},
      {"motorcycle", {{"wheels"}, 0.08, 0.14, 1.2, 1.8, "road"}},
      {"traffic light", {{"lollipop"}, 0.15, 0.22, 0.25, 0.40, "building"}},
      {"traffic sign", {{"board"}, 0.10, 0.16, 0.50, 0.80, "building"}},
  };
  spec.seed = 0;
  return spec;
}

void validate_scene_spec(const SceneSpec& spec, const ClassCatalog& catalog) {
  catalog.require_fusion_capable();
  if (spec.width <= 0 || spec.height <= 0) {
    throw SpecError("width/height: must be positive");
  }
  if (spec.bands.empty()) {
    throw SpecError("bands: at least one background band is required");
  }
  double sum = 0.0;
  for (std::size_t b = 0; b < spec.bands.size(); ++b) {
    const std::string path = "bands[" + std::to_string(b) + "]";
    const SceneBand& band = spec.bands[b];
    if (band.fraction <= 0.0) {
      throw SpecError(path + ".fraction: must be positive");
    }
    const auto id = catalog.id_of_name(band.class_name);
    if (!id) {
      throw SpecError(path + ".class: '" + band.class_name +
                      "' is not part of catalog '" + catalog.name() + "'");
    }
    if (catalog.is_foreground(*id)) {
      throw SpecError(path + ".class: '" + band.class_name +
                      "' is a foreground class; bands are background");
    }
    sum += band.fraction;
  }
  if (std::abs(sum - 1.0) > kFractionTolerance) {
    throw SpecError("bands: fractions sum to " + std::to_string(sum) +
                    ", expected 1");
  }
  for (const BandRange& r : resolve_bands(spec, catalog)) {
    if (r.y1 <= r.y0) {
      throw SpecError("bands: band '" +
                      catalog.entry_of(r.class_id).name +
                      "' maps to zero pixel rows at height " +
                      std::to_string(spec.height));
    }
  }

  for (const auto& [class_name, count] : spec.instance_counts) {
    const std::string path = "instances." + class_name;
    if (count < 0) throw SpecError(path + ": count must be >= 0");
    const auto id = catalog.id_of_name(class_name);
    if (!id) {
      throw SpecError(path + ": not part of catalog '" + catalog.name() + "'");
    }
    if (!catalog.is_foreground(*id)) {
      throw SpecError(path + ": background classes cannot occur as instances");
    }
    if (count > 0 && spec.shapes.find(class_name) == spec.shapes.end()) {
      throw SpecError(path + ": no shape configuration");
    }
  }

  for (const auto& [class_name, shape] : spec.shapes) {
    const std::string path = "shapes." + class_name;
    if (!catalog.id_of_name(class_name)) {
      throw SpecError(path + ": not part of catalog '" + catalog.name() + "'");
    }
    if (shape.templates.empty()) {
      throw SpecError(path + ".templates: empty");
    }
    for (const std::string& t : shape.templates) {
      if (find_template(t) == nullptr) {
        throw SpecError(path + ".templates: unknown template '" + t + "'");
      }
    }
    if (!(shape.scale_min > 0.0 && shape.scale_min <= shape.scale_max &&
          shape.scale_max <= 1.0)) {
      throw SpecError(path + ".scale: need 0 < min <= max <= 1");
    }
    if (!(shape.aspect_min > 0.0 && shape.aspect_min <= shape.aspect_max)) {
      throw SpecError(path + ".aspect: need 0 < min <= max");
    }
    bool band_found = false;
    for (const SceneBand& band : spec.bands) {
      band_found |= band.class_name == shape.band;
    }
    if (!band_found) {
      throw SpecError(path + ".band: '" + shape.band +
                      "' is not one of the scene bands");
    }
  }
}

Scene generate_scene(const SceneSpec& spec, const ClassCatalog& catalog) {
  validate_scene_spec(spec, catalog);
  Rng rng(spec.seed);

  const int width = spec.width;
  const int height = spec.height;
  const std::vector<BandRange> bands = resolve_bands(spec, catalog);

  // Background layout.
  std::vector<ClassId> gt(static_cast<std::size_t>(width) * height);
  for (const BandRange& band : bands) {
    for (int y = band.y0; y < band.y1; ++y) {
      for (int x = 0; x < width; ++x) {
        gt[static_cast<std::size_t>(y) * width + x] = band.class_id;
      }
    }
  }

  // Placement order: catalog id order, then per-class count. Later ids
  // paint over earlier ones, which resolves occlusion by ordering.
  std::vector<std::int32_t> canvas(gt.size(), 0);
  struct Placed {
    int id;
    ClassId class_id;
  };
  std::vector<Placed> placed;
  for (const ClassEntry& entry : catalog.entries()) {
    const auto count_it = spec.instance_counts.find(entry.name);
    if (count_it == spec.instance_counts.end() || count_it->second == 0) {
      continue;
    }
    const ShapeSpec& shape = spec.shapes.at(entry.name);
    const BandRange* band = nullptr;
    for (const BandRange& r : bands) {
      if (catalog.entry_of(r.class_id).name == shape.band) band = &r;
    }
    for (int k = 0; k < count_it->second; ++k) {
      const int instance_id = static_cast<int>(placed.size()) + 1;
      const std::size_t which =
          rng.uniform_below(shape.templates.size());
      const ShapeTemplate& tmpl = *find_template(shape.templates[which]);
      const double scale = rng.uniform(shape.scale_min, shape.scale_max);
      const double aspect = rng.uniform(shape.aspect_min, shape.aspect_max);
      const double box_h = std::max(1.0, scale * height);
      const double box_w = std::max(1.0, aspect * box_h);
      // The silhouette stands on its band: bottom edge inside the band.
      const double bottom =
          band->y0 + rng.uniform() * (band->y1 - band->y0);
      const double box_y0 = bottom - box_h;
      const double box_x0 = rng.uniform() * width - 0.5 * box_w;
      for (const ShapePart& part : tmpl.parts) {
        rasterize_part(part, box_x0, box_y0, box_w, box_h, width, height,
                       instance_id, canvas);
      }
      placed.push_back({instance_id, entry.id});
    }
  }

  // Visible regions and final labels.
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (canvas[i] > 0) gt[i] = placed[canvas[i] - 1].class_id;
  }

  Scene scene{LabelMap(width, height, std::move(gt)), {}};
  scene.instances.reserve(placed.size());
  for (const Placed& p : placed) {
    BinaryMask mask = BinaryMask::from_predicate(width, height, [&](int x,
                                                                    int y) {
      return canvas[static_cast<std::size_t>(y) * width + x] == p.id;
    });
    scene.instances.push_back(
        {p.id, InstanceSegment{std::move(mask), p.class_id, 1.0}});
  }
  return scene;
}

}  // namespace segfuse
