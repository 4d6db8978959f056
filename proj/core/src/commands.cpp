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

#include "segfuse/commands.hpp"

#include <chrono>
#include <cstdio>
#include <optional>
#include <utility>

#include "json.hpp"
#include "segfuse/errors.hpp"
#include "segfuse/io/png_io.hpp"
#include "segfuse/io/pvol_io.hpp"
#include "segfuse/parallel.hpp"
#include "segfuse/pseudo.hpp"
#include "segfuse/rng.hpp"

namespace segfuse {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since)
      .count();
}

void log_entry(const BatchOptions& options, const char* command,
               const std::string& image_id, Clock::time_point started) {
  if (!options.log_timing) return;
  std::fprintf(stderr, "[segfuse] %s %s: %.2f ms\n", command, image_id.c_str(),
               elapsed_ms(started));
}

/// Loads the dense prediction as labels: .pvol volumes are argmax-reduced,
/// .png label maps are taken as-is (and checked against the catalog).
LabelMap load_semantic_labels(const std::filesystem::path& path,
                              const ClassCatalog& catalog) {
  if (path.extension() == ".pvol") {
    return argmax_labels(read_prob_volume(path), catalog);
  }
  LabelMap labels = read_label_png(path);
  labels.validate_against(catalog);
  return labels;
}

std::vector<InstanceSegment> load_entry_segments(
    const DatasetManifest& manifest, const ManifestEntry& entry,
    const ClassCatalog& catalog, int width, int height,
    const BatchOptions& options) {
  if (!entry.segments) return {};
  SegmentManifest seg =
      load_segment_manifest(manifest.resolve(*entry.segments), catalog);
  if (seg.width != width || seg.height != height) {
    throw SizeError("segment manifest is " + std::to_string(seg.width) + "x" +
                    std::to_string(seg.height) + " but the semantic map is " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  std::size_t empty = 0;
  for (const InstanceSegment& s : seg.segments) empty += s.mask.empty() ? 1 : 0;
  if (empty > 0 && options.log_timing) {
    std::fprintf(stderr,
                 "[segfuse] warning: %s: %zu zero-area segment(s) skipped\n",
                 entry.image_id.c_str(), empty);
  }
  return std::move(seg.segments);
}

std::string entry_png_name(const std::string& image_id) {
  return image_id + ".png";
}

}  // namespace

FuseRun run_fuse(const DatasetManifest& manifest, const ClassCatalog& catalog,
                 const FusionPolicy& policy,
                 const std::filesystem::path& out_dir,
                 const BatchOptions& options) {
  std::filesystem::create_directories(out_dir);
  const std::size_t n = manifest.entries.size();
  std::vector<std::optional<double>> hole_fraction(n);
  std::vector<std::optional<std::string>> error(n);

  parallel_for(n, options.jobs, [&](std::size_t i) {
    const ManifestEntry& entry = manifest.entries[i];
    const auto started = Clock::now();
    try {
      const LabelMap semantic =
          load_semantic_labels(manifest.resolve(entry.semantic), catalog);
      const std::vector<InstanceSegment> segments = load_entry_segments(
          manifest, entry, catalog, semantic.width(), semantic.height(), options);
      FusionResult result = fuse(segments, semantic, catalog, policy);
      write_label_png(out_dir / entry_png_name(entry.image_id), result.fused);
      hole_fraction[i] = result.foreground.hole_fraction();
    } catch (const std::exception& e) {
      error[i] = e.what();
    }
    log_entry(options, "fuse", entry.image_id, started);
  });

  FuseRun run;
  json entries = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = manifest.entries[i].image_id;
    if (error[i]) {
      run.failures.push_back({id, *error[i]});
    } else {
      ++run.processed;
      run.hole_fractions.emplace_back(id, *hole_fraction[i]);
      entries.push_back({{"image_id", id}, {"hole_fraction", *hole_fraction[i]}});
    }
  }
  json failures = json::array();
  for (const EntryFailure& f : run.failures) {
    failures.push_back({{"image_id", f.image_id}, {"error", f.message}});
  }
  const json summary = {{"command", "fuse"},
                        {"processed", run.processed},
                        {"failed", run.failures.size()},
                        {"entries", entries},
                        {"failures", failures}};
  run.summary_path = out_dir / "summary.json";
  atomic_write_text(run.summary_path, summary.dump(2) + "\n");
  return run;
}

PseudoRun run_pseudo(const DatasetManifest& manifest,
                     const ClassCatalog& catalog, const FusionPolicy& policy,
                     const std::filesystem::path& out_dir,
                     const BatchOptions& options) {
  std::filesystem::create_directories(out_dir);
  const std::size_t n = manifest.entries.size();
  struct EntryStats {
    double ignore_fraction;
    double fg_fraction;
    std::uint64_t ignored;
    std::uint64_t pixels;
  };
  std::vector<std::optional<EntryStats>> stats(n);
  std::vector<std::optional<std::string>> error(n);

  parallel_for(n, options.jobs, [&](std::size_t i) {
    const ManifestEntry& entry = manifest.entries[i];
    const auto started = Clock::now();
    try {
      const LabelMap semantic =
          load_semantic_labels(manifest.resolve(entry.semantic), catalog);
      const std::vector<InstanceSegment> segments = load_entry_segments(
          manifest, entry, catalog, semantic.width(), semantic.height(), options);
      const ForegroundMap fg = resolve_instances(
          segments, semantic.width(), semantic.height(), catalog, policy);
      const LabelMap pseudo = make_pseudo_gt(fg, semantic, catalog);
      const PseudoStats ps = pseudo_stats(fg, pseudo, catalog);

      write_label_png(out_dir / entry_png_name(entry.image_id), pseudo);
      const json sidecar = {{"image_id", entry.image_id},
                            {"ignore_fraction", ps.ignore_fraction()},
                            {"fg_fraction", ps.fg_fraction()}};
      atomic_write_text(out_dir / (entry.image_id + ".json"),
                        sidecar.dump(2) + "\n");
      stats[i] = EntryStats{ps.ignore_fraction(), ps.fg_fraction(),
                            ps.ignored, ps.total()};
    } catch (const std::exception& e) {
      error[i] = e.what();
    }
    log_entry(options, "pseudo-gt", entry.image_id, started);
  });

  PseudoRun run;
  std::uint64_t total_ignored = 0, total_pixels = 0;
  json entries = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = manifest.entries[i].image_id;
    if (error[i]) {
      run.failures.push_back({id, *error[i]});
      continue;
    }
    ++run.processed;
    run.ignore_fractions.emplace_back(id, stats[i]->ignore_fraction);
    total_ignored += stats[i]->ignored;
    total_pixels += stats[i]->pixels;
    entries.push_back({{"image_id", id},
                       {"ignore_fraction", stats[i]->ignore_fraction},
                       {"fg_fraction", stats[i]->fg_fraction}});
  }
  run.global_ignore_fraction =
      total_pixels == 0 ? 0.0
                        : static_cast<double>(total_ignored) /
                              static_cast<double>(total_pixels);
  json failures = json::array();
  for (const EntryFailure& f : run.failures) {
    failures.push_back({{"image_id", f.image_id}, {"error", f.message}});
  }
  const json summary = {{"command", "pseudo-gt"},
                        {"processed", run.processed},
                        {"failed", run.failures.size()},
                        {"global_ignore_fraction", run.global_ignore_fraction},
                        {"entries", entries},
                        {"failures", failures}};
  run.summary_path = out_dir / "summary.json";
  atomic_write_text(run.summary_path, summary.dump(2) + "\n");
  return run;
}

EvalRun run_eval(const DatasetManifest& manifest, const ClassCatalog& catalog,
                 const std::filesystem::path& pred_dir,
                 const std::filesystem::path& out_dir,
                 const std::optional<std::map<ClassId, ClassId>>& remap,
                 const BatchOptions& options) {
  std::filesystem::create_directories(out_dir);
  if (remap) validate_remap(*remap, catalog, catalog);

  const std::size_t n = manifest.entries.size();
  std::vector<std::optional<ConfusionMatrix>> matrices(n);
  std::vector<std::optional<std::string>> error(n);
  std::vector<bool> missing(n, false);

  parallel_for(n, options.jobs, [&](std::size_t i) {
    const ManifestEntry& entry = manifest.entries[i];
    const auto started = Clock::now();
    try {
      if (!entry.gt) {
        throw SpecError("entry has no ground-truth path");
      }
      const std::filesystem::path pred_path =
          pred_dir / entry_png_name(entry.image_id);
      if (!std::filesystem::exists(pred_path)) {
        missing[i] = true;
        return;
      }
      LabelMap pred = read_label_png(pred_path);
      if (remap) pred = remap_labels(pred, *remap);
      const LabelMap gt = read_label_png(manifest.resolve(*entry.gt));
      matrices[i] = confusion(pred, gt, catalog);
    } catch (const std::exception& e) {
      error[i] = e.what();
    }
    log_entry(options, "eval", entry.image_id, started);
  });

  EvalRun run;
  std::optional<ConfusionMatrix> aggregate;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = manifest.entries[i].image_id;
    if (missing[i]) {
      run.missing_predictions.push_back(id);
    } else if (error[i]) {
      run.failures.push_back({id, *error[i]});
    } else {
      ++run.evaluated;
      if (aggregate) {
        *aggregate += *matrices[i];
      } else {
        aggregate = std::move(matrices[i]);
      }
    }
  }
  if (!aggregate) {
    throw EvalError("no image pairs evaluated");
  }

  run.report = iou_report(*aggregate, catalog);
  run.undefined_classes = run.report.undefined_class_names(catalog);

  json doc = json::parse(render_report_json(run.report, catalog));
  doc["evaluated"] = run.evaluated;
  doc["missing_predictions"] = run.missing_predictions;
  json failures = json::array();
  for (const EntryFailure& f : run.failures) {
    failures.push_back({{"image_id", f.image_id}, {"error", f.message}});
  }
  doc["failures"] = failures;

  run.report_json_path = out_dir / "report.json";
  run.report_text_path = out_dir / "report.txt";
  atomic_write_text(run.report_json_path, doc.dump(2) + "\n");
  atomic_write_text(run.report_text_path,
                    render_report_text(run.report, catalog));
  return run;
}

SimulateRun run_simulate(const SceneSpec& scene_spec,
                         const CorruptionSpec& corruption_spec,
                         std::size_t n_scenes, std::uint64_t seed,
                         const ClassCatalog& catalog,
                         const std::filesystem::path& out_dir,
                         const BatchOptions& options) {
  validate_scene_spec(scene_spec, catalog);
  validate_corruption_spec(corruption_spec, catalog);
  std::filesystem::create_directories(out_dir / "gt");
  std::filesystem::create_directories(out_dir / "segments");
  std::filesystem::create_directories(out_dir / "probs");

  std::vector<std::string> ids(n_scenes);
  std::vector<std::optional<std::string>> error(n_scenes);
  parallel_for(n_scenes, options.jobs, [&](std::size_t i) {
    const auto started = Clock::now();
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%05zu", i);
    ids[i] = name;
    try {
      SceneSpec spec = scene_spec;
      spec.seed = Rng::mix(seed, 3 * i);
      const Scene scene = generate_scene(spec, catalog);
      const ProbVolume probs = simulate_semantic(
          scene.gt, scene.instances, corruption_spec, catalog,
          Rng::mix(seed, 3 * i + 1));
      const std::vector<InstanceSegment> detections =
          simulate_instances(scene.instances, corruption_spec, catalog,
                             Rng::mix(seed, 3 * i + 2));

      write_label_png(out_dir / "gt" / (ids[i] + ".png"), scene.gt);
      write_prob_volume(out_dir / "probs" / (ids[i] + ".pvol"), probs);
      save_segment_manifest(
          out_dir / "segments" / (ids[i] + ".json"),
          SegmentManifest{ids[i], spec.width, spec.height, detections});
    } catch (const std::exception& e) {
      error[i] = e.what();
    }
    log_entry(options, "simulate", ids[i], started);
  });
  for (std::size_t i = 0; i < n_scenes; ++i) {
    if (error[i]) {
      throw IoError("simulate failed at " + ids[i] + ": " + *error[i]);
    }
  }

  DatasetManifest manifest;
  manifest.root = out_dir;
  manifest.catalog_name = catalog.name();
  for (std::size_t i = 0; i < n_scenes; ++i) {
    ManifestEntry entry;
    entry.image_id = ids[i];
    entry.gt = std::filesystem::path("gt") / (ids[i] + ".png");
    entry.semantic = std::filesystem::path("probs") / (ids[i] + ".pvol");
    entry.segments = std::filesystem::path("segments") / (ids[i] + ".json");
    manifest.entries.push_back(std::move(entry));
  }
  for (const auto& [class_name, count] : scene_spec.instance_counts) {
    if (count > 0) {
      manifest.instance_totals[class_name] =
          static_cast<std::uint64_t>(count) * n_scenes;
    }
  }

  SimulateRun run;
  run.scenes = n_scenes;
  run.manifest_path = out_dir / "manifest.json";
  save_dataset_manifest(run.manifest_path, manifest);
  return run;
}

}  // namespace segfuse
