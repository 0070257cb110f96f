#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pogona/behaviour.hpp"

namespace pogona {

/// Activity summary of one behaviour over one clip. Statistics that need
/// more frames than were available are empty rather than zero.
struct ActivityReport {
  Behaviour behaviour = Behaviour::Idle;
  double coverage = 0.0;  // percent of clip frames
  std::optional<double> mean_vertical_diff;  // px
  std::optional<double> jitter;              // px
  std::optional<double> drift_slope;         // px / s
  std::size_t frames_in_state = 0;
  std::size_t frames_used = 0;  // frames in state with a dragon-lamp separation

  friend bool operator==(const ActivityReport&, const ActivityReport&) = default;
};

/// Separation measured at one frame.
struct SeparationSample {
  int frame = 0;
  double delta_y = 0.0;
};

struct TimedValue {
  double t = 0.0;
  double value = 0.0;
};

double coverage(std::span<const Behaviour> states, Behaviour kind, int frame_count);

std::optional<double> mean_vertical_diff(std::span<const double> delta_y);

/// Mean |delta_y(t+1) - delta_y(t)| over samples at adjacent frames; pairs
/// straddling a missing frame do not count. `samples` must be frame-ordered.
std::optional<double> jitter(std::span<const SeparationSample> samples);

/// Ordinary least-squares slope of value against t. Empty unless at least
/// two distinct timestamps are present.
std::optional<double> drift_slope(std::span<const TimedValue> series);

/// All four metrics for one behaviour. `delta_y[t]` is the separation at
/// frame t when both dragon and lamp are present.
ActivityReport activity_report(std::span<const Behaviour> states, std::span<const std::optional<double>> delta_y,
                               Behaviour kind, double fps);

}  // namespace pogona
