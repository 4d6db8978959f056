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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segfuse/catalog.hpp"
#include "segfuse/corruption.hpp"
#include "segfuse/eval.hpp"
#include "segfuse/fusion.hpp"
#include "segfuse/io/manifest.hpp"
#include "segfuse/scene.hpp"

namespace segfuse {

// Manifest-driven batch drivers behind the four CLI commands. Entries are
// processed by a worker pool (`jobs`), outputs are written atomically per
// image, per-entry failures are recorded instead of aborting the batch,
// and all aggregation happens single-threaded in input order so reruns are
// byte-identical.

struct BatchOptions {
  int jobs = 1;
  /// Per-image timing lines to stderr.
  bool log_timing = true;
};

struct EntryFailure {
  std::string image_id;
  std::string message;
};

struct FuseRun {
  std::size_t processed = 0;
  std::vector<EntryFailure> failures;
  /// image_id -> hole fraction before filling, input order.
  std::vector<std::pair<std::string, double>> hole_fractions;
  std::filesystem::path summary_path;

  bool ok() const { return failures.empty(); }
};

/// One fused PNG per entry under out_dir plus summary.json.
FuseRun run_fuse(const DatasetManifest& manifest, const ClassCatalog& catalog,
                 const FusionPolicy& policy,
                 const std::filesystem::path& out_dir,
                 const BatchOptions& options = {});

struct PseudoRun {
  std::size_t processed = 0;
  std::vector<EntryFailure> failures;
  std::vector<std::pair<std::string, double>> ignore_fractions;
  double global_ignore_fraction = 0.0;
  std::filesystem::path summary_path;

  bool ok() const { return failures.empty(); }
};

/// One pseudo-GT PNG + JSON sidecar per entry, plus summary.json.
PseudoRun run_pseudo(const DatasetManifest& manifest,
                     const ClassCatalog& catalog, const FusionPolicy& policy,
                     const std::filesystem::path& out_dir,
                     const BatchOptions& options = {});

struct EvalRun {
  EvalReport report{};
  std::size_t evaluated = 0;
  /// Entries whose prediction file was missing; excluded from the report.
  std::vector<std::string> missing_predictions;
  std::vector<EntryFailure> failures;
  std::vector<std::string> undefined_classes;
  std::filesystem::path report_json_path;
  std::filesystem::path report_text_path;

  /// Success requires every entry evaluated and every class defined.
  bool ok() const {
    return failures.empty() && missing_predictions.empty() &&
           undefined_classes.empty();
  }
};

/// Aggregates confusion over <pred_dir>/<image_id>.png against manifest
/// GT, optionally remapping predictions first; writes report.json and
/// report.txt under out_dir.
EvalRun run_eval(const DatasetManifest& manifest, const ClassCatalog& catalog,
                 const std::filesystem::path& pred_dir,
                 const std::filesystem::path& out_dir,
                 const std::optional<std::map<ClassId, ClassId>>& remap = {},
                 const BatchOptions& options = {});

struct SimulateRun {
  std::size_t scenes = 0;
  std::filesystem::path manifest_path;
};

/// Emits gt/*.png, segments/*.json, probs/*.pvol and manifest.json under
/// out_dir. Scene i derives its streams from mix(seed, i), so outputs are
/// independent of n_scenes and of worker scheduling.
SimulateRun run_simulate(const SceneSpec& scene_spec,
                         const CorruptionSpec& corruption_spec,
                         std::size_t n_scenes, std::uint64_t seed,
                         const ClassCatalog& catalog,
                         const std::filesystem::path& out_dir,
                         const BatchOptions& options = {});

}  // namespace segfuse
