#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pogona/types.hpp"

namespace pogona {

/// A prediction or ground-truth box tagged with the image it belongs to.
/// Ground truth carries confidence 1.
struct EvalBox {
  std::size_t image = 0;
  ClassLabel label = ClassLabel::BeardedDragon;
  BBox box;
  double confidence = 1.0;
};

/// Outcome of greedy matching within one image and one class. Indices
/// refer to the spans passed to match().
struct MatchResult {
  std::vector<bool> pred_tp;
  std::vector<int> pred_gt;  // matched ground-truth index, -1 for FP
  std::vector<bool> gt_matched;

  std::size_t tp() const;
  std::size_t fp() const { return pred_tp.size() - tp(); }
  std::size_t fn() const;
};

/// Predictions are visited by descending confidence (input order breaks
/// ties); each takes the still-unmatched ground truth of highest IoU, provided
/// that IoU >= iou_threshold.
MatchResult match(std::span<const EvalBox> preds, std::span<const EvalBox> gts, double iou_threshold);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// 0/0 is taken as 0 for all three ratios.
PrecisionRecall precision_recall_f1(std::size_t tp, std::size_t fp, std::size_t fn);

/// One prediction after matching: its confidence and whether it was a TP.
struct ScoredPrediction {
  double confidence = 0.0;
  bool tp = false;
};

/// Matches every image separately and returns all predictions ordered by
/// descending confidence (ties: image, then input order). Inputs must hold
/// a single class.
std::vector<ScoredPrediction> score_predictions(std::span<const EvalBox> preds, std::span<const EvalBox> gts,
                                                double iou_threshold);

/// 101-point interpolated AP of an already-scored, confidence-sorted list.
double average_precision(std::span<const ScoredPrediction> scored, std::size_t num_gts);

/// AP of one class over a whole dataset at one IoU threshold.
double average_precision(std::span<const EvalBox> preds, std::span<const EvalBox> gts, double iou_threshold);

double mean_ap(std::span<const double> per_class_ap);

/// The ten IoU thresholds 0.50, 0.55, ..., 0.95.
std::array<double, 10> coco_iou_thresholds();

/// Mean of AP over classes present in the ground truth and the ten COCO IoU
/// thresholds.
double map_50_95(std::span<const EvalBox> preds, std::span<const EvalBox> gts);

struct F1Sweep {
  double max_f1 = 0.0;
  std::optional<double> max_f1_threshold;       // confidence cut achieving max F1
  std::optional<double> precision_one_threshold;  // lowest cut with precision 1
};

/// Precision/recall/F1 at every distinct confidence cut (keep predictions
/// with confidence >= cut).
F1Sweep f1_sweep(std::span<const ScoredPrediction> scored, std::size_t num_gts);
F1Sweep f1_sweep(std::span<const EvalBox> preds, std::span<const EvalBox> gts, double iou_threshold);

/// Counts and column-normalized fractions over {classes..., background}.
/// Row = predicted class, column = true class; the last index is background.
struct ConfusionMatrix {
  static constexpr std::size_t kSize = kNumClasses + 1;
  static constexpr std::size_t kBackground = kNumClasses;
  std::array<std::array<std::size_t, kSize>, kSize> counts{};
  std::array<std::array<double, kSize>, kSize> normalized{};
};

ConfusionMatrix confusion_matrix(std::span<const EvalBox> preds, std::span<const EvalBox> gts,
                                 double confidence_threshold, double iou_threshold);

struct EvalOptions {
  double iou_threshold = 0.5;         // for P/R/F1, the F1 sweep and the confusion matrix
  double confidence_threshold = 0.25;  // for P/R/F1 and the confusion matrix
  bool parallel = true;
};

struct ClassEval {
  ClassLabel label = ClassLabel::BeardedDragon;
  std::size_t num_gts = 0;
  std::size_t num_preds = 0;
  std::size_t tp = 0, fp = 0, fn = 0;
  PrecisionRecall at_threshold;
  std::optional<double> ap50;     // empty when the class has no ground truth
  std::optional<double> ap50_95;
  F1Sweep sweep;
};

struct EvalReport {
  EvalOptions options;
  std::size_t num_images = 0;
  std::array<ClassEval, kNumClasses> classes;
  // Means over classes that have ground truth.
  PrecisionRecall overall;
  double map50 = 0.0;
  double map50_95 = 0.0;
  F1Sweep sweep;  // pooled over all classes
  ConfusionMatrix confusion;
};

struct EvalDataset {
  std::vector<std::string> images;
  std::vector<EvalBox> preds;
  std::vector<EvalBox> gts;
};

EvalReport evaluate(const EvalDataset& data, const EvalOptions& options);

}  // namespace pogona
