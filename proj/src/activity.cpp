#include "pogona/activity.hpp"

#include <algorithm>
#include <cmath>

namespace pogona {

double coverage(std::span<const Behaviour> states, Behaviour kind, int frame_count) {
  if (frame_count < 1) return 0.0;
  const auto n = std::count(states.begin(), states.end(), kind);
  return 100.0 * static_cast<double>(n) / frame_count;
}

std::optional<double> mean_vertical_diff(std::span<const double> delta_y) {
  if (delta_y.empty()) return std::nullopt;
  // Running mean: exact for constant input, unlike sum / n.
  double mean = 0.0;
  std::size_t k = 0;
  for (double v : delta_y) mean += (v - mean) / static_cast<double>(++k);
  return mean;
}

std::optional<double> jitter(std::span<const SeparationSample> samples) {
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].frame != samples[i - 1].frame + 1) continue;
    sum += std::abs(samples[i].delta_y - samples[i - 1].delta_y);
    ++pairs;
  }
  if (pairs == 0) return std::nullopt;
  return sum / static_cast<double>(pairs);
}

std::optional<double> drift_slope(std::span<const TimedValue> series) {
  if (series.size() < 2) return std::nullopt;
  double t_mean = 0.0, v_mean = 0.0;
  std::size_t k = 0;
  for (const auto& p : series) {
    ++k;
    t_mean += (p.t - t_mean) / static_cast<double>(k);
    v_mean += (p.value - v_mean) / static_cast<double>(k);
  }
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : series) {
    const double dt = p.t - t_mean;
    sxx += dt * dt;
    sxy += dt * (p.value - v_mean);
  }
  if (!(sxx > 0.0)) return std::nullopt;
  return sxy / sxx;
}

ActivityReport activity_report(std::span<const Behaviour> states, std::span<const std::optional<double>> delta_y,
                               Behaviour kind, double fps) {
  ActivityReport r;
  r.behaviour = kind;
  r.coverage = coverage(states, kind, static_cast<int>(states.size()));

  std::vector<double> values;
  std::vector<SeparationSample> samples;
  std::vector<TimedValue> timed;
  for (std::size_t t = 0; t < states.size(); ++t) {
    if (states[t] != kind) continue;
    ++r.frames_in_state;
    if (t >= delta_y.size() || !delta_y[t]) continue;
    values.push_back(*delta_y[t]);
    samples.push_back({static_cast<int>(t), *delta_y[t]});
    timed.push_back({static_cast<double>(t) / fps, *delta_y[t]});
  }
  r.frames_used = values.size();
  r.mean_vertical_diff = mean_vertical_diff(values);
  r.jitter = jitter(samples);
  r.drift_slope = drift_slope(timed);
  return r;
}

}  // namespace pogona
