#pragma once

// Data-parallel kernels. Each comes as a plain serial loop, kept as the
// reference, and an OpenMP version that must produce identical output.

#include <span>
#include <vector>

#include "pogona/behaviour.hpp"
#include "pogona/eval.hpp"
#include "pogona/ingest.hpp"
#include "pogona/interpolate.hpp"

namespace pogona::kernels {

/// classify_basking for every frame of [0, frame_count).
std::vector<BaskingResult> classify_frames_serial(const Track& dragon, const Track& lamp, int frame_count,
                                                  const RunConfig& cfg);
std::vector<BaskingResult> classify_frames_parallel(const Track& dragon, const Track& lamp, int frame_count,
                                                    const RunConfig& cfg);

/// Predictions and ground truth of one class.
struct ClassSlice {
  std::vector<EvalBox> preds;
  std::vector<EvalBox> gts;
};

/// AP for every (class, IoU threshold) pair, row-major by class.
std::vector<double> ap_grid_serial(std::span<const ClassSlice> classes, std::span<const double> thresholds);
std::vector<double> ap_grid_parallel(std::span<const ClassSlice> classes, std::span<const double> thresholds);

}  // namespace pogona::kernels
