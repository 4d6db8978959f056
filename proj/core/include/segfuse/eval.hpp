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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segfuse/catalog.hpp"
#include "segfuse/label_map.hpp"

namespace segfuse {

/// C x C pixel counts, rows = ground-truth class, columns = predicted
/// class, both in catalog (dense index) order. Ignore-labeled GT pixels
/// are excluded. Matrices add element-wise across images.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes);

  std::size_t num_classes() const { return num_classes_; }

  std::uint64_t at(std::size_t gt_index, std::size_t pred_index) const {
    return counts_[gt_index * num_classes_ + pred_index];
  }
  void add(std::size_t gt_index, std::size_t pred_index,
           std::uint64_t count = 1) {
    counts_[gt_index * num_classes_ + pred_index] += count;
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& other);

  std::uint64_t total() const;
  std::uint64_t trace() const;

 private:
  std::size_t num_classes_;
  std::vector<std::uint64_t> counts_;
};

/// Tallies one image pair into a fresh matrix. Predictions must be
/// ignore-free and both maps catalog-valid; dimensions must match.
ConfusionMatrix confusion(const LabelMap& pred, const LabelMap& gt,
                          const ClassCatalog& catalog);

/// Per-class IoU = TP / (TP + FP + FN). Classes with zero union are
/// undefined and excluded from every mean.
struct EvalReport {
  /// Catalog order; nullopt where the class has zero union.
  std::vector<std::optional<double>> per_class_iou;
  double miou = 0.0;
  std::optional<double> fg_miou;
  std::optional<double> bg_miou;
  double pixel_accuracy = 0.0;

  std::vector<std::string> undefined_class_names(
      const ClassCatalog& catalog) const;
};

/// Throws EvalError when every class is undefined (empty evaluation).
EvalReport iou_report(const ConfusionMatrix& cm, const ClassCatalog& catalog);

/// Single-pass label substitution: mapped pixels are replaced, unmapped
/// pixels pass through; no transitive chaining. The mapping is validated
/// elsewhere against the governing catalogs.
LabelMap remap_labels(const LabelMap& pred,
                      const std::map<ClassId, ClassId>& mapping);

/// Checks a remap table: sources must belong to `source`, targets to
/// `target` or its ignore id. Throws CatalogError.
void validate_remap(const std::map<ClassId, ClassId>& mapping,
                    const ClassCatalog& source, const ClassCatalog& target);

/// Published full-scale mIoU scores from the original experiments behind
/// this fusion scheme (trained DeepLab + Mask R-CNN over licensed urban
/// datasets). They are NOT reproducible by this engine — no networks are
/// trained here — and ship purely as documented reference points, printed
/// in the report footer for context.
struct ReferenceScore {
  const char* dataset;
  const char* method;
  double miou_percent;
};

inline constexpr ReferenceScore kReferenceScores[] = {
    {"cityscapes-val", "semantic-only synthetic baseline (GTA5+VEIS)", 32.8},
    {"cityscapes-val", "detection fusion", 38.0},
    {"cityscapes-val", "detection fusion + pseudo-GT retraining", 42.5},
    {"camvid-test", "detection fusion", 47.6},
    {"camvid-test", "detection fusion + pseudo-GT retraining", 48.8},
};

/// Aligned text table: one column per catalog class plus mIoU, values in
/// percent, undefined classes printed as n/a. Footer carries fg/bg means,
/// pixel accuracy, and the reference scores.
std::string render_report_text(const EvalReport& report,
                               const ClassCatalog& catalog);

/// The same report as a JSON document (fractions, not percent).
std::string render_report_json(const EvalReport& report,
                               const ClassCatalog& catalog);

}  // namespace segfuse
