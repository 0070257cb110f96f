#include "pogona/kernels.hpp"

#include <cstddef>

namespace pogona::kernels {

namespace {

// Dense frame -> detection lookup, so the per-frame loop is branch-light
// and free of shared state.
std::vector<const Detection*> dense_index(const Track& track, int frame_count) {
  std::vector<const Detection*> out(static_cast<std::size_t>(frame_count), nullptr);
  for (const auto& d : track.detections) {
    if (d.frame >= 0 && d.frame < frame_count) out[d.frame] = &d;
  }
  return out;
}

}  // namespace

std::vector<BaskingResult> classify_frames_serial(const Track& dragon, const Track& lamp, int frame_count,
                                                  const RunConfig& cfg) {
  const auto dragon_at = dense_index(dragon, frame_count);
  const auto lamp_at = dense_index(lamp, frame_count);
  std::vector<BaskingResult> out(static_cast<std::size_t>(frame_count));
  for (int t = 0; t < frame_count; ++t) out[t] = classify_basking(dragon_at[t], lamp_at[t], cfg);
  return out;
}

std::vector<BaskingResult> classify_frames_parallel(const Track& dragon, const Track& lamp, int frame_count,
                                                    const RunConfig& cfg) {
  const auto dragon_at = dense_index(dragon, frame_count);
  const auto lamp_at = dense_index(lamp, frame_count);
  std::vector<BaskingResult> out(static_cast<std::size_t>(frame_count));
#pragma omp parallel for schedule(static)
  for (int t = 0; t < frame_count; ++t) out[t] = classify_basking(dragon_at[t], lamp_at[t], cfg);
  return out;
}

std::vector<double> ap_grid_serial(std::span<const ClassSlice> classes, std::span<const double> thresholds) {
  std::vector<double> out(classes.size() * thresholds.size(), 0.0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      out[c * thresholds.size() + k] = average_precision(classes[c].preds, classes[c].gts, thresholds[k]);
    }
  }
  return out;
}

std::vector<double> ap_grid_parallel(std::span<const ClassSlice> classes, std::span<const double> thresholds) {
  const long cells = static_cast<long>(classes.size() * thresholds.size());
  std::vector<double> out(static_cast<std::size_t>(cells), 0.0);
  const std::size_t nt = thresholds.size();
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < cells; ++i) {
    const auto c = static_cast<std::size_t>(i) / nt;
    const auto k = static_cast<std::size_t>(i) % nt;
    out[i] = average_precision(classes[c].preds, classes[c].gts, thresholds[k]);
  }
  return out;
}

}  // namespace pogona::kernels
