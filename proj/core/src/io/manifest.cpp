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

#include "segfuse/io/manifest.hpp"

#include <fstream>
#include <set>
#include <utility>

#include "json.hpp"
#include "segfuse/errors.hpp"
#include "segfuse/eval.hpp"

namespace segfuse {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw SpecError("'" + path.string() + "': " + e.what());
  }
  return doc;
}

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) throw SpecError(path + ": expected an object");
}

/// Strict schema guard: every present key must be in `allowed`, every key
/// in `required` must be present.
void check_keys(const json& node, const std::string& path,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  require_object(node, path);
  for (const auto& item : node.items()) {
    bool known = false;
    for (const char* k : required) known |= item.key() == k;
    for (const char* k : optional) known |= item.key() == k;
    if (!known) throw SpecError(path + ": unknown key '" + item.key() + "'");
  }
  for (const char* k : required) {
    if (!node.contains(k)) {
      throw SpecError(path + ": missing key '" + std::string(k) + "'");
    }
  }
}

template <typename T>
T get_as(const json& node, const std::string& path) {
  try {
    return node.get<T>();
  } catch (const json::exception&) {
    throw SpecError(path + ": wrong type");
  }
}

int get_positive_int(const json& node, const std::string& path) {
  const int v = get_as<int>(node, path);
  if (v <= 0) throw SpecError(path + ": must be positive");
  return v;
}

ClassId get_class_id(const json& node, const std::string& path) {
  const int v = get_as<int>(node, path);
  if (v < 0 || v > 255) throw SpecError(path + ": class id outside [0, 255]");
  return static_cast<ClassId>(v);
}

}  // namespace

SegmentManifest load_segment_manifest(const std::filesystem::path& path,
                                      const ClassCatalog& catalog) {
  const json doc = load_json(path);
  const std::string ctx = path.string();
  check_keys(doc, ctx, {"image_id", "width", "height", "segments"});

  SegmentManifest manifest;
  manifest.image_id = get_as<std::string>(doc["image_id"], ctx + ".image_id");
  manifest.width = get_positive_int(doc["width"], ctx + ".width");
  manifest.height = get_positive_int(doc["height"], ctx + ".height");

  if (!doc["segments"].is_array()) {
    throw SpecError(ctx + ".segments: expected an array");
  }
  std::size_t i = 0;
  for (const json& seg : doc["segments"]) {
    const std::string seg_path = ctx + ".segments[" + std::to_string(i++) + "]";
    check_keys(seg, seg_path, {"class_id", "score", "rle"});
    const ClassId class_id = get_class_id(seg["class_id"], seg_path + ".class_id");
    const double score = get_as<double>(seg["score"], seg_path + ".score");
    std::vector<std::uint32_t> runs;
    try {
      runs = seg["rle"].get<std::vector<std::uint32_t>>();
    } catch (const json::exception&) {
      throw SpecError(seg_path + ".rle: expected non-negative run lengths");
    }
    try {
      InstanceSegment segment{
          BinaryMask(manifest.width, manifest.height, std::move(runs)),
          class_id, score};
      validate_segment(segment, catalog, manifest.width, manifest.height);
      manifest.segments.push_back(std::move(segment));
    } catch (const Error& e) {
      throw SpecError(seg_path + ": " + e.what());
    }
  }
  return manifest;
}

void save_segment_manifest(const std::filesystem::path& path,
                           const SegmentManifest& manifest) {
  json segments = json::array();
  for (const InstanceSegment& seg : manifest.segments) {
    segments.push_back({{"class_id", int{seg.class_id}},
                        {"score", seg.score},
                        {"rle", seg.mask.runs()}});
  }
  const json doc = {{"image_id", manifest.image_id},
                    {"width", manifest.width},
                    {"height", manifest.height},
                    {"segments", segments}};
  atomic_write_text(path, doc.dump(2) + "\n");
}

DatasetManifest load_dataset_manifest(const std::filesystem::path& path) {
  const json doc = load_json(path);
  const std::string ctx = path.string();
  check_keys(doc, ctx, {"catalog", "entries"}, {"root", "instances"});

  DatasetManifest manifest;
  if (doc.contains("root")) {
    // An explicit root is taken relative to the manifest's directory.
    manifest.root = path.parent_path() /
                    get_as<std::string>(doc["root"], ctx + ".root");
  } else {
    manifest.root = path.parent_path();
  }
  manifest.catalog_name = get_as<std::string>(doc["catalog"], ctx + ".catalog");

  if (!doc["entries"].is_array()) {
    throw SpecError(ctx + ".entries: expected an array");
  }
  std::set<std::string> seen_ids;
  std::size_t i = 0;
  for (const json& entry : doc["entries"]) {
    const std::string entry_path = ctx + ".entries[" + std::to_string(i++) + "]";
    check_keys(entry, entry_path, {"image_id", "semantic"}, {"gt", "segments"});
    ManifestEntry e;
    e.image_id = get_as<std::string>(entry["image_id"], entry_path + ".image_id");
    if (!seen_ids.insert(e.image_id).second) {
      throw SpecError(entry_path + ".image_id: duplicate '" + e.image_id + "'");
    }
    e.semantic = get_as<std::string>(entry["semantic"], entry_path + ".semantic");
    if (entry.contains("gt")) {
      e.gt = std::filesystem::path(
          get_as<std::string>(entry["gt"], entry_path + ".gt"));
    }
    if (entry.contains("segments")) {
      e.segments = std::filesystem::path(
          get_as<std::string>(entry["segments"], entry_path + ".segments"));
    }

    for (const auto& [key, p] :
         std::initializer_list<std::pair<const char*, const std::filesystem::path*>>{
             {"semantic", &e.semantic},
             {"gt", e.gt ? &*e.gt : nullptr},
             {"segments", e.segments ? &*e.segments : nullptr}}) {
      if (p != nullptr && !std::filesystem::exists(manifest.root / *p)) {
        throw SpecError(entry_path + "." + key + ": file '" +
                        (manifest.root / *p).string() + "' does not exist");
      }
    }
    manifest.entries.push_back(std::move(e));
  }
  if (doc.contains("instances")) {
    require_object(doc["instances"], ctx + ".instances");
    for (const auto& item : doc["instances"].items()) {
      manifest.instance_totals[item.key()] = get_as<std::uint64_t>(
          item.value(), ctx + ".instances." + item.key());
    }
  }
  return manifest;
}

void save_dataset_manifest(const std::filesystem::path& path,
                           const DatasetManifest& manifest) {
  json entries = json::array();
  for (const ManifestEntry& e : manifest.entries) {
    json entry = {{"image_id", e.image_id},
                  {"semantic", e.semantic.generic_string()}};
    if (e.gt) entry["gt"] = e.gt->generic_string();
    if (e.segments) entry["segments"] = e.segments->generic_string();
    entries.push_back(std::move(entry));
  }
  json doc = {{"catalog", manifest.catalog_name}, {"entries", entries}};
  if (!manifest.instance_totals.empty()) {
    doc["instances"] = manifest.instance_totals;
  }
  atomic_write_text(path, doc.dump(2) + "\n");
}

ClassCatalog load_catalog_file(const std::filesystem::path& path) {
  const json doc = load_json(path);
  const std::string ctx = path.string();
  check_keys(doc, ctx, {"name", "ignore_id", "classes"});

  const std::string name = get_as<std::string>(doc["name"], ctx + ".name");
  const ClassId ignore_id = get_class_id(doc["ignore_id"], ctx + ".ignore_id");
  if (!doc["classes"].is_array()) {
    throw SpecError(ctx + ".classes: expected an array");
  }
  std::vector<ClassEntry> entries;
  std::size_t i = 0;
  for (const json& cls : doc["classes"]) {
    const std::string cls_path = ctx + ".classes[" + std::to_string(i++) + "]";
    check_keys(cls, cls_path, {"id", "name", "role"});
    const std::string role = get_as<std::string>(cls["role"], cls_path + ".role");
    if (role != "foreground" && role != "background") {
      throw SpecError(cls_path + ".role: expected foreground or background");
    }
    entries.push_back({get_class_id(cls["id"], cls_path + ".id"),
                       get_as<std::string>(cls["name"], cls_path + ".name"),
                       role == "foreground" ? ClassRole::kForeground
                                            : ClassRole::kBackground});
  }
  try {
    return ClassCatalog(name, std::move(entries), ignore_id);
  } catch (const CatalogError& e) {
    throw SpecError(ctx + ": " + e.what());
  }
}

ClassCatalog resolve_catalog(const std::string& selector) {
  if (selector == "cityscapes19") return ClassCatalog::cityscapes19();
  if (selector == "camvid11") return ClassCatalog::camvid11();
  if (selector.rfind("custom:", 0) == 0) {
    return load_catalog_file(selector.substr(7));
  }
  throw SpecError("unknown catalog '" + selector +
                  "'; expected cityscapes19, camvid11, or custom:<path>");
}

SceneSpec load_scene_spec_file(const std::filesystem::path& path,
                               const ClassCatalog& catalog) {
  const json doc = load_json(path);
  const std::string ctx = path.string();
  check_keys(doc, ctx, {"width", "height", "bands", "instances", "shapes"},
             {"seed"});

  SceneSpec spec;
  spec.width = get_positive_int(doc["width"], ctx + ".width");
  spec.height = get_positive_int(doc["height"], ctx + ".height");
  spec.seed = doc.contains("seed")
                  ? get_as<std::uint64_t>(doc["seed"], ctx + ".seed")
                  : 0;

  if (!doc["bands"].is_array()) {
    throw SpecError(ctx + ".bands: expected an array");
  }
  std::size_t i = 0;
  for (const json& band : doc["bands"]) {
    const std::string band_path = ctx + ".bands[" + std::to_string(i++) + "]";
    check_keys(band, band_path, {"class", "fraction"});
    spec.bands.push_back(
        {get_as<std::string>(band["class"], band_path + ".class"),
         get_as<double>(band["fraction"], band_path + ".fraction")});
  }

  require_object(doc["instances"], ctx + ".instances");
  for (const auto& item : doc["instances"].items()) {
    spec.instance_counts[item.key()] =
        get_as<int>(item.value(), ctx + ".instances." + item.key());
  }

  require_object(doc["shapes"], ctx + ".shapes");
  for (const auto& item : doc["shapes"].items()) {
    const std::string shape_path = ctx + ".shapes." + item.key();
    check_keys(item.value(), shape_path, {"templates", "scale", "aspect", "band"});
    ShapeSpec shape;
    try {
      shape.templates = item.value()["templates"].get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw SpecError(shape_path + ".templates: expected an array of names");
    }
    const auto range = [&](const char* key, double& lo, double& hi) {
      const json& node = item.value()[key];
      if (!node.is_array() || node.size() != 2) {
        throw SpecError(shape_path + "." + key + ": expected [min, max]");
      }
      lo = get_as<double>(node[0], shape_path + "." + key + "[0]");
      hi = get_as<double>(node[1], shape_path + "." + key + "[1]");
    };
    range("scale", shape.scale_min, shape.scale_max);
    range("aspect", shape.aspect_min, shape.aspect_max);
    shape.band = get_as<std::string>(item.value()["band"], shape_path + ".band");
    spec.shapes[item.key()] = std::move(shape);
  }

  validate_scene_spec(spec, catalog);
  return spec;
}

CorruptionSpec load_corruption_spec_file(const std::filesystem::path& path,
                                         const ClassCatalog& catalog) {
  const json doc = load_json(path);
  const std::string ctx = path.string();
  check_keys(doc, ctx, {}, {"semantic", "instance"});

  CorruptionSpec spec;
  if (doc.contains("semantic")) {
    const json& sem = doc["semantic"];
    const std::string sem_path = ctx + ".semantic";
    check_keys(sem, sem_path, {},
               {"fg_confusion", "boundary_jitter", "bg_noise", "confusions"});
    if (sem.contains("fg_confusion")) {
      spec.semantic.fg_confusion =
          get_as<double>(sem["fg_confusion"], sem_path + ".fg_confusion");
    }
    if (sem.contains("boundary_jitter")) {
      spec.semantic.boundary_jitter =
          get_as<int>(sem["boundary_jitter"], sem_path + ".boundary_jitter");
    }
    if (sem.contains("bg_noise")) {
      spec.semantic.bg_noise =
          get_as<double>(sem["bg_noise"], sem_path + ".bg_noise");
    }
    if (sem.contains("confusions")) {
      require_object(sem["confusions"], sem_path + ".confusions");
      for (const auto& item : sem["confusions"].items()) {
        try {
          spec.semantic.confusions[item.key()] =
              item.value().get<std::vector<std::string>>();
        } catch (const json::exception&) {
          throw SpecError(sem_path + ".confusions." + item.key() +
                          ": expected an array of class names");
        }
      }
    }
  }
  if (doc.contains("instance")) {
    const json& ins = doc["instance"];
    const std::string ins_path = ctx + ".instance";
    check_keys(ins, ins_path, {},
               {"miss_rate", "spurious_rate", "mask_jitter", "score_sigma"});
    if (ins.contains("miss_rate")) {
      spec.instance.miss_rate =
          get_as<double>(ins["miss_rate"], ins_path + ".miss_rate");
    }
    if (ins.contains("spurious_rate")) {
      spec.instance.spurious_rate =
          get_as<double>(ins["spurious_rate"], ins_path + ".spurious_rate");
    }
    if (ins.contains("mask_jitter")) {
      spec.instance.mask_jitter =
          get_as<int>(ins["mask_jitter"], ins_path + ".mask_jitter");
    }
    if (ins.contains("score_sigma")) {
      spec.instance.score_sigma =
          get_as<double>(ins["score_sigma"], ins_path + ".score_sigma");
    }
  }
  validate_corruption_spec(spec, catalog);
  return spec;
}

std::map<ClassId, ClassId> load_remap_file(const std::filesystem::path& path,
                                           const ClassCatalog& catalog) {
  const json doc = load_json(path);
  const std::string ctx = path.string();
  check_keys(doc, ctx, {"map"});
  require_object(doc["map"], ctx + ".map");

  std::map<ClassId, ClassId> mapping;
  for (const auto& item : doc["map"].items()) {
    const std::string entry_path = ctx + ".map." + item.key();
    int from;
    try {
      from = std::stoi(item.key());
    } catch (const std::exception&) {
      throw SpecError(entry_path + ": source key is not an integer id");
    }
    if (from < 0 || from > 255) {
      throw SpecError(entry_path + ": source id outside [0, 255]");
    }
    mapping[static_cast<ClassId>(from)] =
        get_class_id(item.value(), entry_path);
  }
  try {
    validate_remap(mapping, catalog, catalog);
  } catch (const CatalogError& e) {
    throw SpecError(ctx + ": " + e.what());
  }
  return mapping;
}

void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace segfuse
