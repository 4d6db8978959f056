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

// segfuse: fuses ranked instance segments with dense semantic predictions,
// manufactures pseudo ground truth, evaluates per-class IoU, and generates
// simulated datasets for exercising the pipeline end to end.
//
// Exit codes: 0 success, 1 partial failure (some entries failed, missing
// prediction files, or undefined classes in an evaluation), 2 invalid
// invocation (bad flags, unreadable manifests, malformed spec files).

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "segfuse/commands.hpp"
#include "segfuse/errors.hpp"

namespace {

using namespace segfuse;

constexpr int kExitSuccess = 0;
constexpr int kExitPartialFailure = 1;
constexpr int kExitInvalidInvocation = 2;

struct CommonFlags {
  std::string catalog_selector;  // empty = take the manifest's catalog
  int jobs = 1;
  std::optional<double> score_threshold;
  std::optional<double> min_fraction;
};

void add_policy_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--policy-score-threshold", flags.score_threshold,
                  "Skip segments scoring below this value (default: keep all)");
  cmd->add_option("--policy-min-fraction", flags.min_fraction,
                  "Drop segments whose surviving fraction falls below this "
                  "value (default: keep all)");
}

void add_catalog_flag(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--catalog", flags.catalog_selector,
                  "cityscapes19, camvid11, or custom:<path> "
                  "(default: the manifest's catalog)");
}

void add_jobs_flag(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--jobs", flags.jobs, "Worker threads over manifest entries")
      ->check(CLI::PositiveNumber);
}

FusionPolicy policy_from(const CommonFlags& flags) {
  FusionPolicy policy;
  policy.score_threshold = flags.score_threshold;
  policy.min_remaining_fraction = flags.min_fraction;
  return policy;
}

ClassCatalog pick_catalog(const CommonFlags& flags,
                          const DatasetManifest& manifest) {
  return resolve_catalog(flags.catalog_selector.empty()
                             ? manifest.catalog_name
                             : flags.catalog_selector);
}

void report_failures(const char* command,
                     const std::vector<EntryFailure>& failures) {
  for (const EntryFailure& f : failures) {
    std::fprintf(stderr, "[segfuse] %s failed for %s: %s\n", command,
                 f.image_id.c_str(), f.message.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detection-priority semantic fusion engine"};
  app.require_subcommand(1);

  // fuse
  CommonFlags fuse_flags;
  std::string fuse_manifest_path, fuse_out;
  CLI::App* fuse_cmd = app.add_subcommand(
      "fuse", "Fuse instance segments with dense predictions");
  fuse_cmd->add_option("--manifest", fuse_manifest_path, "Dataset manifest")
      ->required();
  fuse_cmd->add_option("--out", fuse_out, "Output directory")->required();
  add_policy_flags(fuse_cmd, fuse_flags);
  add_catalog_flag(fuse_cmd, fuse_flags);
  add_jobs_flag(fuse_cmd, fuse_flags);

  // pseudo-gt
  CommonFlags pseudo_flags;
  std::string pseudo_manifest_path, pseudo_out;
  CLI::App* pseudo_cmd = app.add_subcommand(
      "pseudo-gt", "Manufacture pseudo ground truth with ignore regions");
  pseudo_cmd->add_option("--manifest", pseudo_manifest_path, "Dataset manifest")
      ->required();
  pseudo_cmd->add_option("--out", pseudo_out, "Output directory")->required();
  add_policy_flags(pseudo_cmd, pseudo_flags);
  add_catalog_flag(pseudo_cmd, pseudo_flags);
  add_jobs_flag(pseudo_cmd, pseudo_flags);

  // eval
  CommonFlags eval_flags;
  std::string eval_manifest_path, eval_pred, eval_out, eval_remap;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Per-class IoU / mIoU evaluation");
  eval_cmd->add_option("--manifest", eval_manifest_path, "Dataset manifest")
      ->required();
  eval_cmd->add_option("--pred", eval_pred, "Directory of <image_id>.png predictions")
      ->required();
  eval_cmd->add_option("--out", eval_out,
                       "Report directory (default: the prediction directory)");
  eval_cmd->add_option("--remap", eval_remap,
                       "JSON remap table applied to predictions first");
  add_catalog_flag(eval_cmd, eval_flags);
  add_jobs_flag(eval_cmd, eval_flags);

  // simulate
  CommonFlags sim_flags;
  std::string sim_out, sim_scene_spec, sim_corruption_spec;
  std::size_t sim_n_scenes = 1;
  std::uint64_t sim_seed = 0;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Generate a simulated dataset (gt / segments / probs)");
  sim_cmd->add_option("--out", sim_out, "Dataset directory")->required();
  sim_cmd->add_option("--n-scenes", sim_n_scenes, "Number of scenes")
      ->required();
  sim_cmd->add_option("--seed", sim_seed, "Base seed (default 0)");
  sim_cmd->add_option("--scene-spec", sim_scene_spec,
                      "Scene spec JSON (default: built-in urban preset)");
  sim_cmd->add_option("--corruption-spec", sim_corruption_spec,
                      "Corruption spec JSON (default: no corruption)");
  add_catalog_flag(sim_cmd, sim_flags);
  add_jobs_flag(sim_cmd, sim_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInvocation;
  }

  try {
    if (*fuse_cmd) {
      const DatasetManifest manifest =
          load_dataset_manifest(fuse_manifest_path);
      const ClassCatalog catalog = pick_catalog(fuse_flags, manifest);
      const FuseRun run = run_fuse(manifest, catalog, policy_from(fuse_flags),
                                   fuse_out, {fuse_flags.jobs, true});
      report_failures("fuse", run.failures);
      std::fprintf(stderr, "[segfuse] fuse: %zu fused, %zu failed\n",
                   run.processed, run.failures.size());
      return run.ok() ? kExitSuccess : kExitPartialFailure;
    }

    if (*pseudo_cmd) {
      const DatasetManifest manifest =
          load_dataset_manifest(pseudo_manifest_path);
      const ClassCatalog catalog = pick_catalog(pseudo_flags, manifest);
      const PseudoRun run =
          run_pseudo(manifest, catalog, policy_from(pseudo_flags), pseudo_out,
                     {pseudo_flags.jobs, true});
      report_failures("pseudo-gt", run.failures);
      std::fprintf(stderr,
                   "[segfuse] pseudo-gt: %zu written, %zu failed, global "
                   "ignore fraction %.4f\n",
                   run.processed, run.failures.size(),
                   run.global_ignore_fraction);
      return run.ok() ? kExitSuccess : kExitPartialFailure;
    }

    if (*eval_cmd) {
      const DatasetManifest manifest =
          load_dataset_manifest(eval_manifest_path);
      const ClassCatalog catalog = pick_catalog(eval_flags, manifest);
      std::optional<std::map<ClassId, ClassId>> remap;
      if (!eval_remap.empty()) remap = load_remap_file(eval_remap, catalog);
      const std::filesystem::path out(eval_out.empty() ? eval_pred : eval_out);
      const EvalRun run = run_eval(manifest, catalog, eval_pred, out, remap,
                                   {eval_flags.jobs, true});
      report_failures("eval", run.failures);
      for (const std::string& id : run.missing_predictions) {
        std::fprintf(stderr, "[segfuse] eval: missing prediction for %s\n",
                     id.c_str());
      }
      for (const std::string& name : run.undefined_classes) {
        std::fprintf(stderr, "[segfuse] eval: class '%s' undefined "
                             "(zero union)\n",
                     name.c_str());
      }
      std::fprintf(stderr, "[segfuse] eval: %zu pairs, mIoU %.4f\n",
                   run.evaluated, run.report.miou);
      return run.ok() ? kExitSuccess : kExitPartialFailure;
    }

    if (*sim_cmd) {
      const ClassCatalog catalog =
          resolve_catalog(sim_flags.catalog_selector.empty()
                              ? "cityscapes19"
                              : sim_flags.catalog_selector);
      const SceneSpec scene_spec =
          sim_scene_spec.empty() ? default_scene_spec()
                                 : load_scene_spec_file(sim_scene_spec, catalog);
      const CorruptionSpec corruption_spec =
          sim_corruption_spec.empty()
              ? CorruptionSpec{}
              : load_corruption_spec_file(sim_corruption_spec, catalog);
      const SimulateRun run =
          run_simulate(scene_spec, corruption_spec, sim_n_scenes, sim_seed,
                       catalog, sim_out, {sim_flags.jobs, true});
      std::fprintf(stderr, "[segfuse] simulate: %zu scenes -> %s\n",
                   run.scenes, run.manifest_path.c_str());
      return kExitSuccess;
    }
  } catch (const SpecError& e) {
    std::fprintf(stderr, "[segfuse] invalid input: %s\n", e.what());
    return kExitInvalidInvocation;
  } catch (const IoError& e) {
    std::fprintf(stderr, "[segfuse] I/O error: %s\n", e.what());
    return kExitInvalidInvocation;
  } catch (const Error& e) {
    std::fprintf(stderr, "[segfuse] error: %s\n", e.what());
    return kExitPartialFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "[segfuse] unexpected error: %s\n", e.what());
    return kExitPartialFailure;
  }

  return kExitInvalidInvocation;
}
