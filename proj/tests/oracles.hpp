#pragma once

// Reference computations used only by the tests. Nothing here calls into
// the library's matching, AP or regression code; the point is to have a
// second, independently written route to every number the tests assert.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pogona/types.hpp"

namespace pogona::oracle {

struct Corners {
  double x0, y0, x1, y1;
};

inline Corners corners(const BBox& b) { return {b.cx - b.w / 2, b.cy - b.h / 2, b.cx + b.w / 2, b.cy + b.h / 2}; }

inline double overlap(const BBox& a, const BBox& b) {
  const auto p = corners(a), q = corners(b);
  const double iw = std::max(0.0, std::min(p.x1, q.x1) - std::max(p.x0, q.x0));
  const double ih = std::max(0.0, std::min(p.y1, q.y1) - std::max(p.y0, q.y0));
  const double inter = iw * ih;
  const double uni = (p.x1 - p.x0) * (p.y1 - p.y0) + (q.x1 - q.x0) * (q.y1 - q.y0) - inter;
  return uni > 0 ? inter / uni : 0.0;
}

/// Box description for the micro-dataset oracles.
struct Box {
  std::size_t image;
  int cls;
  BBox box;
  double conf;
  std::size_t id;  // position in the original list
};

/// TP flags by the literal definition: walk predictions by confidence
/// (original position breaks ties) and give each the free ground truth of
/// the same image and class with the largest overlap >= threshold.
inline std::vector<bool> greedy_tp(const std::vector<Box>& preds, const std::vector<Box>& gts, double thr) {
  std::vector<std::size_t> order(preds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (preds[a].conf != preds[b].conf) return preds[a].conf > preds[b].conf;
    return a < b;
  });
  std::vector<bool> used(gts.size(), false), tp(preds.size(), false);
  for (auto p : order) {
    double best = -1.0;
    std::size_t best_g = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (used[g] || gts[g].image != preds[p].image || gts[g].cls != preds[p].cls) continue;
      const double v = overlap(preds[p].box, gts[g].box);
      if (v >= thr && v > best) best = v, best_g = g;
    }
    if (best_g < gts.size()) used[best_g] = true, tp[p] = true;
  }
  return tp;
}

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0;
};

inline Counts count(const std::vector<bool>& tp, std::size_t num_gts) {
  Counts c;
  for (bool t : tp) t ? ++c.tp : ++c.fp;
  c.fn = num_gts - c.tp;
  return c;
}

/// Largest one-to-one assignment of predictions to same-image ground truth
/// with overlap >= thr, by exhaustive search over ground-truth subsets.
/// Any valid matching, greedy included, can be no larger.
inline std::size_t max_matching(const std::vector<Box>& preds, const std::vector<Box>& gts, double thr) {
  const std::size_t n = gts.size();
  std::vector<int> best(std::size_t{1} << n, -1);
  best[0] = 0;
  for (const auto& p : preds) {
    auto next = best;
    for (std::size_t mask = 0; mask < best.size(); ++mask) {
      if (best[mask] < 0) continue;
      for (std::size_t g = 0; g < n; ++g) {
        if (mask & (std::size_t{1} << g)) continue;
        if (gts[g].image != p.image || gts[g].cls != p.cls) continue;
        if (overlap(p.box, gts[g].box) < thr) continue;
        auto& slot = next[mask | (std::size_t{1} << g)];
        slot = std::max(slot, best[mask] + 1);
      }
    }
    best = std::move(next);
  }
  return static_cast<std::size_t>(*std::max_element(best.begin(), best.end()));
}

/// Exact area under the precision envelope of the PR curve traced by
/// predictions sorted by confidence (ties by image, then original position).
inline double continuous_ap(const std::vector<Box>& preds, const std::vector<bool>& tp, std::size_t num_gts) {
  if (num_gts == 0 || preds.empty()) return 0.0;
  std::vector<std::size_t> order(preds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (preds[a].conf != preds[b].conf) return preds[a].conf > preds[b].conf;
    if (preds[a].image != preds[b].image) return preds[a].image < preds[b].image;
    return a < b;
  });
  std::vector<double> rec, prec;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (tp[order[k]]) ++hits;
    rec.push_back(static_cast<double>(hits) / num_gts);
    prec.push_back(static_cast<double>(hits) / (k + 1));
  }
  double area = 0.0, prev_r = 0.0;
  std::vector<double> levels(rec.begin(), rec.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (double r : levels) {
    if (r <= prev_r) continue;
    double p = 0.0;
    for (std::size_t k = 0; k < rec.size(); ++k) {
      if (rec[k] >= r) p = std::max(p, prec[k]);
    }
    area += (r - prev_r) * p;
    prev_r = r;
  }
  return area;
}

/// Least-squares slope from the 2x2 normal equations built on raw sums.
inline double normal_equation_slope(const std::vector<double>& t, const std::vector<double>& y) {
  long double n = static_cast<long double>(t.size()), st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += static_cast<long double>(t[i]) * t[i];
    sty += static_cast<long double>(t[i]) * y[i];
  }
  // | n   st  | |a|   | sy  |
  // | st  stt | |b| = | sty |
  const long double det = n * stt - st * st;
  return static_cast<double>((n * sty - st * sy) / det);
}

/// Random micro-dataset: up to `max_per_class` ground truths per class
/// spread over a few images, with predictions that are jittered copies of
/// ground truth, duplicates or pure clutter.
struct MicroDataset {
  std::vector<Box> preds;
  std::vector<Box> gts;
};

inline MicroDataset random_micro_dataset(std::mt19937_64& rng, int max_per_class = 10, int images = 3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> img(0, images - 1);
  auto random_box = [&] {
    const double w = 0.05 + 0.3 * u(rng), h = 0.05 + 0.3 * u(rng);
    return BBox{w / 2 + (1 - w) * u(rng), h / 2 + (1 - h) * u(rng), w, h};
  };
  MicroDataset d;
  for (int cls = 0; cls < static_cast<int>(kNumClasses); ++cls) {
    const int n_gt = std::uniform_int_distribution<int>(0, max_per_class)(rng);
    for (int i = 0; i < n_gt; ++i) {
      d.gts.push_back({static_cast<std::size_t>(img(rng)), cls, random_box(), 1.0, d.gts.size()});
    }
  }
  for (const auto& g : d.gts) {
    const double r = u(rng);
    if (r < 0.2) continue;  // missed
    BBox b = g.box;
    const double s = 0.15 * u(rng);
    b.cx = std::clamp(b.cx + s * b.w * (u(rng) - 0.5) * 2, 0.0, 1.0);
    b.cy = std::clamp(b.cy + s * b.h * (u(rng) - 0.5) * 2, 0.0, 1.0);
    d.preds.push_back({g.image, g.cls, b, std::round(u(rng) * 20) / 20, d.preds.size()});
    if (r > 0.9) d.preds.push_back({g.image, g.cls, b, std::round(u(rng) * 20) / 20, d.preds.size()});
  }
  const int clutter = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int i = 0; i < clutter; ++i) {
    d.preds.push_back({static_cast<std::size_t>(img(rng)), std::uniform_int_distribution<int>(0, 2)(rng), random_box(),
                       std::round(u(rng) * 20) / 20, d.preds.size()});
  }
  return d;
}

}  // namespace pogona::oracle
