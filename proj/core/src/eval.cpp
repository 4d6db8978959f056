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

#include "segfuse/eval.hpp"

#include <array>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "segfuse/errors.hpp"

namespace segfuse {

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes)
    : num_classes_(num_classes), counts_(num_classes * num_classes, 0) {}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (other.num_classes_ != num_classes_) {
    throw SizeError("confusion matrices of different class counts");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += other.counts_[i];
  }
  return *this;
}

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < num_classes_; ++i) t += at(i, i);
  return t;
}

ConfusionMatrix confusion(const LabelMap& pred, const LabelMap& gt,
                          const ClassCatalog& catalog) {
  if (!pred.same_size(gt)) {
    throw SizeError("prediction is " + std::to_string(pred.width()) + "x" +
                    std::to_string(pred.height()) + " but GT is " +
                    std::to_string(gt.width()) + "x" +
                    std::to_string(gt.height()));
  }

  // Dense id -> index table; -1 marks unknown ids, -2 the ignore id.
  std::array<std::int16_t, 256> index{};
  index.fill(-1);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    index[catalog.entry_at(i).id] = static_cast<std::int16_t>(i);
  }
  index[catalog.ignore_id()] = -2;

  ConfusionMatrix cm(catalog.size());
  for (std::size_t i = 0; i < gt.pixel_count(); ++i) {
    const std::int16_t g = index[gt[i]];
    if (g == -2) continue;  // ignore-labeled GT pixel
    if (g < 0) {
      throw CatalogError("GT pixel " + std::to_string(i) + " carries value " +
                         std::to_string(int{gt[i]}) + " unknown to catalog '" +
                         catalog.name() + "'");
    }
    const std::int16_t p = index[pred[i]];
    if (p < 0) {
      throw CatalogError("prediction pixel " + std::to_string(i) +
                         " carries value " + std::to_string(int{pred[i]}) +
                         (p == -2 ? " (ignore id); predictions must be "
                                    "ignore-free"
                                  : " unknown to catalog '" + catalog.name() +
                                        "'"));
    }
    cm.add(static_cast<std::size_t>(g), static_cast<std::size_t>(p));
  }
  return cm;
}

std::vector<std::string> EvalReport::undefined_class_names(
    const ClassCatalog& catalog) const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < per_class_iou.size(); ++i) {
    if (!per_class_iou[i]) names.push_back(catalog.entry_at(i).name);
  }
  return names;
}

EvalReport iou_report(const ConfusionMatrix& cm, const ClassCatalog& catalog) {
  if (cm.num_classes() != catalog.size()) {
    throw CatalogError("confusion matrix has " +
                       std::to_string(cm.num_classes()) +
                       " classes but catalog '" + catalog.name() + "' has " +
                       std::to_string(catalog.size()));
  }
  const std::size_t n = cm.num_classes();

  std::vector<std::uint64_t> row_sum(n, 0), col_sum(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t p = 0; p < n; ++p) {
      row_sum[g] += cm.at(g, p);
      col_sum[p] += cm.at(g, p);
    }
  }

  EvalReport report;
  report.per_class_iou.resize(n);
  double sum_all = 0.0, sum_fg = 0.0, sum_bg = 0.0;
  std::size_t n_all = 0, n_fg = 0, n_bg = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const std::uint64_t tp = cm.at(c, c);
    const std::uint64_t uni = row_sum[c] + col_sum[c] - tp;  // TP + FP + FN
    if (uni == 0) continue;  // class absent from GT and prediction
    const double iou = static_cast<double>(tp) / static_cast<double>(uni);
    report.per_class_iou[c] = iou;
    sum_all += iou;
    ++n_all;
    if (catalog.entry_at(c).role == ClassRole::kForeground) {
      sum_fg += iou;
      ++n_fg;
    } else {
      sum_bg += iou;
      ++n_bg;
    }
  }
  if (n_all == 0) {
    throw EvalError("every class is undefined; nothing to evaluate");
  }
  report.miou = sum_all / static_cast<double>(n_all);
  if (n_fg > 0) report.fg_miou = sum_fg / static_cast<double>(n_fg);
  if (n_bg > 0) report.bg_miou = sum_bg / static_cast<double>(n_bg);
  report.pixel_accuracy =
      static_cast<double>(cm.trace()) / static_cast<double>(cm.total());
  return report;
}

LabelMap remap_labels(const LabelMap& pred,
                      const std::map<ClassId, ClassId>& mapping) {
  std::array<ClassId, 256> table{};
  for (std::size_t v = 0; v < table.size(); ++v) {
    table[v] = static_cast<ClassId>(v);
  }
  for (const auto& [from, to] : mapping) table[from] = to;

  std::vector<ClassId> out(pred.pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = table[pred[i]];
  return LabelMap(pred.width(), pred.height(), std::move(out));
}

void validate_remap(const std::map<ClassId, ClassId>& mapping,
                    const ClassCatalog& source, const ClassCatalog& target) {
  for (const auto& [from, to] : mapping) {
    if (!source.contains(from)) {
      throw CatalogError("remap source id " + std::to_string(int{from}) +
                         " is not part of catalog '" + source.name() + "'");
    }
    if (to != target.ignore_id() && !target.contains(to)) {
      throw CatalogError("remap target id " + std::to_string(int{to}) +
                         " is neither a class of catalog '" + target.name() +
                         "' nor its ignore id");
    }
  }
}

namespace {

std::string percent_or_na(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", *v * 100.0);
  return buf;
}

}  // namespace

std::string render_report_text(const EvalReport& report,
                               const ClassCatalog& catalog) {
  std::ostringstream out;

  std::vector<std::string> headers;
  std::vector<std::string> values;
  for (std::size_t c = 0; c < catalog.size(); ++c) {
    headers.push_back(catalog.entry_at(c).name);
    values.push_back(percent_or_na(report.per_class_iou[c]));
  }
  headers.push_back("mIoU");
  values.push_back(percent_or_na(report.miou));

  std::string header_row, value_row;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    const std::size_t w = std::max(headers[c].size(), values[c].size());
    if (c > 0) {
      header_row += "  ";
      value_row += "  ";
    }
    if (c + 1 == headers.size()) {
      header_row += "| ";
      value_row += "| ";
    }
    header_row += headers[c] + std::string(w - headers[c].size(), ' ');
    value_row += values[c] + std::string(w - values[c].size(), ' ');
  }
  out << header_row << "\n" << value_row << "\n\n";

  out << "foreground mIoU: " << percent_or_na(report.fg_miou)
      << "   background mIoU: " << percent_or_na(report.bg_miou)
      << "   pixel accuracy: " << percent_or_na(report.pixel_accuracy) << "\n";

  const std::vector<std::string> undefined =
      report.undefined_class_names(catalog);
  if (!undefined.empty()) {
    out << "undefined classes (zero union, excluded from means):";
    for (const std::string& name : undefined) out << " " << name;
    out << "\n";
  }

  out << "\nReference full-scale results (trained networks over licensed "
         "datasets; not reproducible by this engine):\n";
  for (const ReferenceScore& ref : kReferenceScores) {
    out << "  " << ref.dataset << ", " << ref.method << ": mIoU "
        << percent_or_na(ref.miou_percent / 100.0) << "\n";
  }
  return out.str();
}

std::string render_report_json(const EvalReport& report,
                               const ClassCatalog& catalog) {
  nlohmann::json per_class = nlohmann::json::object();
  for (std::size_t c = 0; c < catalog.size(); ++c) {
    const std::string& name = catalog.entry_at(c).name;
    if (report.per_class_iou[c]) {
      per_class[name] = *report.per_class_iou[c];
    } else {
      per_class[name] = nullptr;
    }
  }

  nlohmann::json references = nlohmann::json::array();
  for (const ReferenceScore& ref : kReferenceScores) {
    references.push_back({{"dataset", ref.dataset},
                          {"method", ref.method},
                          {"miou_percent", ref.miou_percent}});
  }

  nlohmann::json doc = {
      {"catalog", catalog.name()},
      {"per_class_iou", per_class},
      {"miou", report.miou},
      {"fg_miou", report.fg_miou ? nlohmann::json(*report.fg_miou)
                                 : nlohmann::json(nullptr)},
      {"bg_miou", report.bg_miou ? nlohmann::json(*report.bg_miou)
                                 : nlohmann::json(nullptr)},
      {"pixel_accuracy", report.pixel_accuracy},
      {"undefined_classes", report.undefined_class_names(catalog)},
      {"reference_scores", references},
  };
  return doc.dump(2) + "\n";
}

}  // namespace segfuse
