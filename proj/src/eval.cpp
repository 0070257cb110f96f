#include "pogona/eval.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "pogona/geometry.hpp"
#include "pogona/kernels.hpp"

namespace pogona {

std::size_t MatchResult::tp() const { return static_cast<std::size_t>(std::count(pred_tp.begin(), pred_tp.end(), true)); }

std::size_t MatchResult::fn() const {
  return static_cast<std::size_t>(std::count(gt_matched.begin(), gt_matched.end(), false));
}

namespace {

std::vector<std::size_t> by_descending_confidence(std::span<const EvalBox> boxes) {
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return boxes[a].confidence > boxes[b].confidence; });
  return order;
}

// Indices of `boxes` grouped by image, input order kept inside each group.
std::vector<std::pair<std::size_t, std::vector<std::size_t>>> group_by_image(std::span<const EvalBox> boxes) {
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return boxes[a].image < boxes[b].image; });
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> groups;
  for (auto i : order) {
    if (groups.empty() || groups.back().first != boxes[i].image) groups.push_back({boxes[i].image, {}});
    groups.back().second.push_back(i);
  }
  return groups;
}

template <typename T>
std::vector<T> gather(std::span<const T> src, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(src[i]);
  return out;
}

double ratio(std::size_t num, std::size_t den) { return den == 0 ? 0.0 : static_cast<double>(num) / den; }

}  // namespace

MatchResult match(std::span<const EvalBox> preds, std::span<const EvalBox> gts, double iou_threshold) {
  MatchResult r;
  r.pred_tp.assign(preds.size(), false);
  r.pred_gt.assign(preds.size(), -1);
  r.gt_matched.assign(gts.size(), false);
  for (auto p : by_descending_confidence(preds)) {
    int best = -1;
    double best_iou = iou_threshold;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (r.gt_matched[g]) continue;
      const double v = iou(preds[p].box, gts[g].box);
      if (v >= best_iou && (best < 0 || v > best_iou)) {
        best = static_cast<int>(g);
        best_iou = v;
      }
    }
    if (best >= 0) {
      r.pred_tp[p] = true;
      r.pred_gt[p] = best;
      r.gt_matched[static_cast<std::size_t>(best)] = true;
    }
  }
  return r;
}

PrecisionRecall precision_recall_f1(std::size_t tp, std::size_t fp, std::size_t fn) {
  PrecisionRecall r;
  r.precision = ratio(tp, tp + fp);
  r.recall = ratio(tp, tp + fn);
  const double s = r.precision + r.recall;
  r.f1 = s > 0.0 ? 2.0 * r.precision * r.recall / s : 0.0;
  return r;
}

std::vector<ScoredPrediction> score_predictions(std::span<const EvalBox> preds, std::span<const EvalBox> gts,
                                                double iou_threshold) {
  std::vector<bool> tp(preds.size(), false);
  const auto gt_groups = group_by_image(gts);
  for (const auto& [image, pred_idx] : group_by_image(preds)) {
    auto it = std::lower_bound(gt_groups.begin(), gt_groups.end(), image,
                               [](const auto& g, std::size_t img) { return g.first < img; });
    if (it == gt_groups.end() || it->first != image) continue;
    const auto p = gather(preds, pred_idx);
    const auto g = gather(gts, it->second);
    const auto m = match(p, g, iou_threshold);
    for (std::size_t k = 0; k < pred_idx.size(); ++k) tp[pred_idx[k]] = m.pred_tp[k];
  }

  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_tuple(-preds[a].confidence, preds[a].image, a) <
           std::make_tuple(-preds[b].confidence, preds[b].image, b);
  });
  std::vector<ScoredPrediction> out;
  out.reserve(preds.size());
  for (auto i : order) out.push_back({preds[i].confidence, tp[i]});
  return out;
}

double average_precision(std::span<const ScoredPrediction> scored, std::size_t num_gts) {
  if (num_gts == 0 || scored.empty()) return 0.0;
  const std::size_t n = scored.size();
  std::vector<double> precision(n), recall(n);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (scored[i].tp) ++tp;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(tp) / static_cast<double>(num_gts);
  }
  // Envelope: precision at recall r is the best precision at any recall >= r.
  for (std::size_t i = n - 1; i > 0; --i) precision[i - 1] = std::max(precision[i - 1], precision[i]);

  double sum = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    const auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it == recall.end()) break;
    sum += precision[static_cast<std::size_t>(it - recall.begin())];
  }
  return sum / 101.0;
}

double average_precision(std::span<const EvalBox> preds, std::span<const EvalBox> gts, double iou_threshold) {
  return average_precision(score_predictions(preds, gts, iou_threshold), gts.size());
}

double mean_ap(std::span<const double> per_class_ap) {
  if (per_class_ap.empty()) return 0.0;
  const double mean =
      std::accumulate(per_class_ap.begin(), per_class_ap.end(), 0.0) / static_cast<double>(per_class_ap.size());
  // The rounded sum can land an ulp outside the inputs' range; the exact mean
  // cannot, and keeping it inside preserves orderings such as AP@0.5:0.95 <= AP@0.5.
  const auto [lo, hi] = std::minmax_element(per_class_ap.begin(), per_class_ap.end());
  return std::clamp(mean, *lo, *hi);
}

std::array<double, 10> coco_iou_thresholds() {
  std::array<double, 10> t{};
  for (int i = 0; i < 10; ++i) t[i] = (50 + 5 * i) / 100.0;
  return t;
}

namespace {

std::array<kernels::ClassSlice, kNumClasses> split_by_class(std::span<const EvalBox> preds,
                                                            std::span<const EvalBox> gts) {
  std::array<kernels::ClassSlice, kNumClasses> slices;
  for (const auto& p : preds) slices[index_of(p.label)].preds.push_back(p);
  for (const auto& g : gts) slices[index_of(g.label)].gts.push_back(g);
  return slices;
}

}  // namespace

double map_50_95(std::span<const EvalBox> preds, std::span<const EvalBox> gts) {
  const auto slices = split_by_class(preds, gts);
  const auto thresholds = coco_iou_thresholds();
  const auto grid = kernels::ap_grid_serial(slices, thresholds);
  std::vector<double> per_class;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (slices[c].gts.empty()) continue;
    std::span<const double> row(grid.data() + c * thresholds.size(), thresholds.size());
    per_class.push_back(mean_ap(row));
  }
  return mean_ap(per_class);
}

F1Sweep f1_sweep(std::span<const ScoredPrediction> scored, std::size_t num_gts) {
  F1Sweep s;
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    scored[i].tp ? ++tp : ++fp;
    // Evaluate only once every prediction at this confidence is included.
    if (i + 1 < scored.size() && scored[i + 1].confidence == scored[i].confidence) continue;
    const auto prf = precision_recall_f1(tp, fp, num_gts - std::min(tp, num_gts));
    if (prf.f1 > s.max_f1) {
      s.max_f1 = prf.f1;
      s.max_f1_threshold = scored[i].confidence;
    }
    if (fp == 0 && tp > 0) s.precision_one_threshold = scored[i].confidence;
  }
  return s;
}

F1Sweep f1_sweep(std::span<const EvalBox> preds, std::span<const EvalBox> gts, double iou_threshold) {
  return f1_sweep(score_predictions(preds, gts, iou_threshold), gts.size());
}

ConfusionMatrix confusion_matrix(std::span<const EvalBox> preds, std::span<const EvalBox> gts,
                                 double confidence_threshold, double iou_threshold) {
  ConfusionMatrix cm;
  constexpr auto bg = ConfusionMatrix::kBackground;

  std::vector<EvalBox> kept;
  for (const auto& p : preds) {
    if (p.confidence >= confidence_threshold) kept.push_back(p);
  }
  const auto pred_groups = group_by_image(kept);
  const auto gt_groups = group_by_image(gts);

  struct Pair {
    double iou;
    std::size_t pred, gt;
  };
  auto process = [&](const std::vector<std::size_t>& pi, const std::vector<std::size_t>& gi) {
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < pi.size(); ++a) {
      for (std::size_t b = 0; b < gi.size(); ++b) {
        const double v = iou(kept[pi[a]].box, gts[gi[b]].box);
        if (v >= iou_threshold && v > 0.0) pairs.push_back({v, a, b});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
      return std::make_tuple(-x.iou, x.pred, x.gt) < std::make_tuple(-y.iou, y.pred, y.gt);
    });
    std::vector<bool> pred_used(pi.size(), false), gt_used(gi.size(), false);
    for (const auto& p : pairs) {
      if (pred_used[p.pred] || gt_used[p.gt]) continue;
      pred_used[p.pred] = gt_used[p.gt] = true;
      ++cm.counts[index_of(kept[pi[p.pred]].label)][index_of(gts[gi[p.gt]].label)];
    }
    for (std::size_t a = 0; a < pi.size(); ++a) {
      if (!pred_used[a]) ++cm.counts[index_of(kept[pi[a]].label)][bg];
    }
    for (std::size_t b = 0; b < gi.size(); ++b) {
      if (!gt_used[b]) ++cm.counts[bg][index_of(gts[gi[b]].label)];
    }
  };

  // Merge-walk the two image-sorted group lists.
  const std::vector<std::size_t> none;
  std::size_t i = 0, j = 0;
  while (i < pred_groups.size() || j < gt_groups.size()) {
    const bool take_pred = j == gt_groups.size() || (i < pred_groups.size() && pred_groups[i].first <= gt_groups[j].first);
    const bool take_gt = i == pred_groups.size() || (j < gt_groups.size() && gt_groups[j].first <= pred_groups[i].first);
    process(take_pred ? pred_groups[i].second : none, take_gt ? gt_groups[j].second : none);
    if (take_pred) ++i;
    if (take_gt) ++j;
  }

  for (std::size_t col = 0; col < ConfusionMatrix::kSize; ++col) {
    std::size_t total = 0;
    for (std::size_t row = 0; row < ConfusionMatrix::kSize; ++row) total += cm.counts[row][col];
    for (std::size_t row = 0; row < ConfusionMatrix::kSize; ++row) {
      cm.normalized[row][col] = total == 0 ? 0.0 : static_cast<double>(cm.counts[row][col]) / total;
    }
  }
  return cm;
}

EvalReport evaluate(const EvalDataset& data, const EvalOptions& options) {
  EvalReport rep;
  rep.options = options;
  rep.num_images = data.images.size();

  const auto slices = split_by_class(data.preds, data.gts);
  const auto thresholds = coco_iou_thresholds();
  const auto grid = options.parallel ? kernels::ap_grid_parallel(slices, thresholds)
                                     : kernels::ap_grid_serial(slices, thresholds);

  std::vector<double> ap50s, ap5095s, precisions, recalls, f1s;
  std::vector<ScoredPrediction> pooled;
  std::size_t pooled_gts = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    auto& ce = rep.classes[c];
    const auto& slice = slices[c];
    ce.label = kAllClasses[c];
    ce.num_gts = slice.gts.size();
    ce.num_preds = slice.preds.size();

    const auto scored = score_predictions(slice.preds, slice.gts, options.iou_threshold);
    for (const auto& s : scored) {
      if (s.confidence < options.confidence_threshold) break;
      s.tp ? ++ce.tp : ++ce.fp;
    }
    ce.fn = ce.num_gts - ce.tp;
    ce.at_threshold = precision_recall_f1(ce.tp, ce.fp, ce.fn);
    ce.sweep = f1_sweep(scored, ce.num_gts);
    pooled.insert(pooled.end(), scored.begin(), scored.end());
    pooled_gts += ce.num_gts;

    if (ce.num_gts == 0) continue;
    std::span<const double> row(grid.data() + c * thresholds.size(), thresholds.size());
    ce.ap50 = row[0];
    ce.ap50_95 = mean_ap(row);
    ap50s.push_back(*ce.ap50);
    ap5095s.push_back(*ce.ap50_95);
    precisions.push_back(ce.at_threshold.precision);
    recalls.push_back(ce.at_threshold.recall);
    f1s.push_back(ce.at_threshold.f1);
  }
  rep.map50 = mean_ap(ap50s);
  rep.map50_95 = mean_ap(ap5095s);
  rep.overall = {mean_ap(precisions), mean_ap(recalls), mean_ap(f1s)};

  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const ScoredPrediction& a, const ScoredPrediction& b) { return a.confidence > b.confidence; });
  rep.sweep = f1_sweep(pooled, pooled_gts);
  rep.confusion = confusion_matrix(data.preds, data.gts, options.confidence_threshold, options.iou_threshold);
  return rep;
}

}  // namespace pogona
