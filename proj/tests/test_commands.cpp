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

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "segfuse/commands.hpp"
#include "segfuse/errors.hpp"
#include "segfuse/io/png_io.hpp"
#include "test_support.hpp"

using namespace segfuse;
using segfuse::testing::TempDir;

namespace {

const ClassCatalog& cs() {
  static const ClassCatalog catalog = ClassCatalog::cityscapes19();
  return catalog;
}

BatchOptions quiet(int jobs = 1) { return BatchOptions{jobs, false}; }

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

SceneSpec small_scene_spec() {
  SceneSpec spec = default_scene_spec();
  spec.width = 96;
  spec.height = 64;
  return spec;
}

}  // namespace

TEST_CASE("simulate writes a loadable dataset with GT instance totals") {
  TempDir dir("sim_cmd");
  const SimulateRun run = run_simulate(small_scene_spec(), {}, 4, 123, cs(),
                                       dir.path() / "data", quiet(2));
  CHECK(run.scenes == 4);

  const DatasetManifest manifest = load_dataset_manifest(run.manifest_path);
  CHECK(manifest.catalog_name == "cityscapes19");
  REQUIRE(manifest.entries.size() == 4);
  for (const ManifestEntry& entry : manifest.entries) {
    CHECK(entry.gt.has_value());
    CHECK(entry.segments.has_value());
  }
  // Per-class GT instance totals are forced by the spec counts.
  CHECK(manifest.instance_totals.at("car") == 3 * 4);
  CHECK(manifest.instance_totals.at("person") == 2 * 4);

  // Identity corruption: emitted segment counts equal the spec counts too.
  std::size_t car_segments = 0;
  for (const ManifestEntry& entry : manifest.entries) {
    const SegmentManifest segs =
        load_segment_manifest(manifest.resolve(*entry.segments), cs());
    for (const InstanceSegment& s : segs.segments) {
      car_segments += s.class_id == *cs().id_of_name("car") ? 1 : 0;
    }
  }
  CHECK(car_segments == 3 * 4);
}

TEST_CASE("simulate is deterministic and independent of scene count") {
  TempDir dir("sim_det");
  run_simulate(small_scene_spec(), {}, 3, 7, cs(), dir.path() / "a", quiet(2));
  run_simulate(small_scene_spec(), {}, 3, 7, cs(), dir.path() / "b", quiet(1));
  run_simulate(small_scene_spec(), {}, 2, 7, cs(), dir.path() / "c", quiet(1));

  for (const char* name :
       {"gt/scene_00000.png", "gt/scene_00001.png", "probs/scene_00000.pvol",
        "segments/scene_00001.json"}) {
    CHECK(slurp(dir.path() / "a" / name) == slurp(dir.path() / "b" / name));
    CHECK(slurp(dir.path() / "a" / name) == slurp(dir.path() / "c" / name));
  }
}

TEST_CASE("identity pipeline: fuse reproduces GT and eval scores 1.0") {
  TempDir dir("identity");
  const SimulateRun sim = run_simulate(small_scene_spec(), {}, 3, 11, cs(),
                                       dir.path() / "data", quiet());
  const DatasetManifest manifest = load_dataset_manifest(sim.manifest_path);

  const FuseRun fused =
      run_fuse(manifest, cs(), {}, dir.path() / "fused", quiet(2));
  CHECK(fused.ok());
  CHECK(fused.processed == 3);
  for (const auto& [id, fraction] : fused.hole_fractions) {
    CHECK(fraction > 0.0);  // background stays unclaimed
    CHECK(fraction < 1.0);  // instances claim something
  }
  for (const ManifestEntry& entry : manifest.entries) {
    const LabelMap gt = read_label_png(manifest.resolve(*entry.gt));
    const LabelMap out =
        read_label_png(dir.path() / "fused" / (entry.image_id + ".png"));
    CHECK(out == gt);
  }

  const EvalRun eval = run_eval(manifest, cs(), dir.path() / "fused",
                                dir.path() / "report", {}, quiet(2));
  CHECK(eval.evaluated == 3);
  CHECK(eval.report.miou == doctest::Approx(1.0));
  CHECK(eval.report.pixel_accuracy == doctest::Approx(1.0));
  CHECK(eval.missing_predictions.empty());
  CHECK(std::filesystem::exists(eval.report_json_path));
  CHECK(std::filesystem::exists(eval.report_text_path));

  // The default preset never paints five of the background classes.
  CHECK(eval.undefined_classes.size() == 5);
  CHECK_FALSE(eval.ok());
}

TEST_CASE("simulate with zero scenes writes an empty manifest") {
  TempDir dir("sim_zero");
  const SimulateRun run =
      run_simulate(small_scene_spec(), {}, 0, 1, cs(), dir.path() / "d", quiet());
  CHECK(run.scenes == 0);
  const DatasetManifest manifest = load_dataset_manifest(run.manifest_path);
  CHECK(manifest.entries.empty());

  // Nothing to evaluate is an empty-evaluation error.
  CHECK_THROWS_AS(
      run_eval(manifest, cs(), dir.path() / "d", dir.path() / "r", {}, quiet()),
      EvalError);
}

TEST_CASE("fuse on an empty manifest writes an empty summary") {
  TempDir dir("empty");
  DatasetManifest manifest;
  manifest.root = dir.path();
  manifest.catalog_name = "cityscapes19";
  const FuseRun run = run_fuse(manifest, cs(), {}, dir.path() / "out", quiet());
  CHECK(run.ok());
  CHECK(run.processed == 0);
  const auto summary = nlohmann::json::parse(slurp(run.summary_path));
  CHECK(summary["entries"].empty());
  CHECK(summary["processed"] == 0);
}

TEST_CASE("fuse and pseudo-gt record per-entry failures") {
  TempDir dir("failures");
  const SimulateRun sim = run_simulate(small_scene_spec(), {}, 2, 5, cs(),
                                       dir.path() / "data", quiet());
  DatasetManifest manifest = load_dataset_manifest(sim.manifest_path);
  // Corrupt one semantic volume after manifest validation.
  std::ofstream(manifest.resolve(manifest.entries[0].semantic),
                std::ios::binary)
      << "garbage";

  const FuseRun run =
      run_fuse(manifest, cs(), {}, dir.path() / "fused", quiet());
  CHECK_FALSE(run.ok());
  CHECK(run.processed == 1);
  REQUIRE(run.failures.size() == 1);
  CHECK(run.failures[0].image_id == "scene_00000");
  CHECK_FALSE(std::filesystem::exists(dir.path() / "fused" /
                                      "scene_00000.png"));
  CHECK(std::filesystem::exists(dir.path() / "fused" / "scene_00001.png"));
}

TEST_CASE("pseudo-gt over the identity pipeline produces zero ignore") {
  TempDir dir("pseudo_zero");
  const SimulateRun sim = run_simulate(small_scene_spec(), {}, 2, 13, cs(),
                                       dir.path() / "data", quiet());
  const DatasetManifest manifest = load_dataset_manifest(sim.manifest_path);
  const PseudoRun run =
      run_pseudo(manifest, cs(), {}, dir.path() / "pseudo", quiet(2));
  CHECK(run.ok());
  CHECK(run.global_ignore_fraction == 0.0);
  // Sidecars exist and carry the two fractions.
  const auto sidecar = nlohmann::json::parse(
      slurp(dir.path() / "pseudo" / "scene_00000.json"));
  CHECK(sidecar["ignore_fraction"] == 0.0);
  CHECK(sidecar["fg_fraction"].get<double>() > 0.0);
}

TEST_CASE("pseudo-gt on a segment-free all-foreground map ignores everything") {
  TempDir dir("pseudo_one");
  write_label_png(dir.path() / "car.png",
                  LabelMap(8, 8, *cs().id_of_name("car")));
  {
    std::ofstream manifest(dir.path() / "manifest.json");
    manifest << R"({"catalog": "cityscapes19",
                    "entries": [{"image_id": "car", "semantic": "car.png"}]})";
  }
  const DatasetManifest manifest =
      load_dataset_manifest(dir.path() / "manifest.json");
  const PseudoRun run =
      run_pseudo(manifest, cs(), {}, dir.path() / "pseudo", quiet());
  CHECK(run.ok());
  CHECK(run.global_ignore_fraction == doctest::Approx(1.0));
  const LabelMap out = read_label_png(dir.path() / "pseudo" / "car.png");
  CHECK(out == LabelMap(8, 8, cs().ignore_id()));
}

TEST_CASE("pseudo-gt global ignore fraction matches a direct pixel scan") {
  TempDir dir("pseudo_mixed");
  CorruptionSpec corruption;
  corruption.semantic.fg_confusion = 0.5;
  corruption.instance.miss_rate = 0.4;
  corruption.instance.mask_jitter = 1;
  const SimulateRun sim = run_simulate(small_scene_spec(), corruption, 5, 21,
                                       cs(), dir.path() / "data", quiet());
  const DatasetManifest manifest = load_dataset_manifest(sim.manifest_path);
  const PseudoRun run =
      run_pseudo(manifest, cs(), {}, dir.path() / "pseudo", quiet());
  CHECK(run.ok());
  CHECK(run.global_ignore_fraction > 0.0);

  std::size_t ignored = 0, total = 0;
  for (const ManifestEntry& entry : manifest.entries) {
    const LabelMap out =
        read_label_png(dir.path() / "pseudo" / (entry.image_id + ".png"));
    total += out.pixel_count();
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
      ignored += out[i] == cs().ignore_id() ? 1 : 0;
    }
  }
  CHECK(run.global_ignore_fraction ==
        doctest::Approx(static_cast<double>(ignored) /
                        static_cast<double>(total))
            .epsilon(1e-12));
}

TEST_CASE("eval lists missing predictions and excludes them") {
  TempDir dir("missing_pred");
  const SimulateRun sim = run_simulate(small_scene_spec(), {}, 3, 17, cs(),
                                       dir.path() / "data", quiet());
  const DatasetManifest manifest = load_dataset_manifest(sim.manifest_path);
  run_fuse(manifest, cs(), {}, dir.path() / "fused", quiet());
  std::filesystem::remove(dir.path() / "fused" / "scene_00001.png");

  const EvalRun run = run_eval(manifest, cs(), dir.path() / "fused",
                               dir.path() / "report", {}, quiet());
  CHECK(run.evaluated == 2);
  REQUIRE(run.missing_predictions.size() == 1);
  CHECK(run.missing_predictions[0] == "scene_00001");
  CHECK_FALSE(run.ok());
  CHECK(run.report.miou == doctest::Approx(1.0));

  // Removing every prediction leaves nothing to evaluate.
  std::filesystem::remove_all(dir.path() / "fused");
  std::filesystem::create_directories(dir.path() / "fused");
  CHECK_THROWS_AS(run_eval(manifest, cs(), dir.path() / "fused",
                           dir.path() / "report2", {}, quiet()),
                  EvalError);
}

TEST_CASE("eval applies a remap to predictions first") {
  TempDir dir("remap_eval");
  // GT says pole, prediction says wall; remapping wall->pole fixes it.
  write_label_png(dir.path() / "gt.png", LabelMap(4, 4, ClassId{5}));
  std::filesystem::create_directories(dir.path() / "pred");
  write_label_png(dir.path() / "pred" / "img.png", LabelMap(4, 4, ClassId{3}));
  {
    std::ofstream manifest(dir.path() / "manifest.json");
    manifest << R"({"catalog": "cityscapes19",
                    "entries": [{"image_id": "img", "semantic": "gt.png",
                                 "gt": "gt.png"}]})";
  }
  const DatasetManifest manifest =
      load_dataset_manifest(dir.path() / "manifest.json");

  const EvalRun plain = run_eval(manifest, cs(), dir.path() / "pred",
                                 dir.path() / "r1", {}, quiet());
  CHECK(plain.report.miou == doctest::Approx(0.0));

  const std::map<ClassId, ClassId> remap{{3, 5}};
  const EvalRun mapped = run_eval(manifest, cs(), dir.path() / "pred",
                                  dir.path() / "r2", remap, quiet());
  CHECK(mapped.report.miou == doctest::Approx(1.0));
}

TEST_CASE("batch outputs are byte-identical across reruns and job counts") {
  TempDir dir("idempotent");
  const SimulateRun sim = run_simulate(small_scene_spec(), {}, 3, 29, cs(),
                                       dir.path() / "data", quiet());
  const DatasetManifest manifest = load_dataset_manifest(sim.manifest_path);

  run_fuse(manifest, cs(), {}, dir.path() / "f1", quiet(1));
  run_fuse(manifest, cs(), {}, dir.path() / "f2", quiet(3));
  for (const char* name :
       {"scene_00000.png", "scene_00001.png", "scene_00002.png",
        "summary.json"}) {
    CHECK(slurp(dir.path() / "f1" / name) == slurp(dir.path() / "f2" / name));
  }
}
