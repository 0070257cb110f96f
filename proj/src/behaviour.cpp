#include "pogona/behaviour.hpp"

#include <cmath>
#include <numbers>

#include "pogona/geometry.hpp"

namespace pogona {

std::string_view behaviour_name(Behaviour b) {
  switch (b) {
    case Behaviour::Idle: return "idle";
    case Behaviour::Basking: return "basking";
    case Behaviour::Hunting: return "hunting";
  }
  return "unknown";
}

std::optional<Behaviour> behaviour_from_name(std::string_view name) {
  for (auto b : kAllBehaviours) {
    if (behaviour_name(b) == name) return b;
  }
  return std::nullopt;
}

BaskingGeometry basking_geometry(const Detection& dragon, const Detection& lamp, const FrameGeometry& geom) {
  const auto d = to_pixels(dragon.box, geom);
  const auto l = to_pixels(lamp.box, geom);
  BaskingGeometry g;
  g.delta_y = std::abs(d.cy - l.cy);
  g.lamp_above = l.cy < d.cy;
  if (g.delta_y == 0.0) {
    g.theta = 90.0;
  } else {
    g.theta = std::atan(std::abs(d.cx - l.cx) / g.delta_y) * (180.0 / std::numbers::pi);
  }
  return g;
}

BaskingResult classify_basking(const Detection* dragon, const Detection* lamp, const RunConfig& cfg) {
  if (dragon == nullptr || lamp == nullptr) return {};
  const auto g = basking_geometry(*dragon, *lamp, cfg.geometry);
  const bool basking = g.lamp_above && g.delta_y <= cfg.beta * cfg.geometry.height && g.theta < cfg.theta_max;
  return {basking, g};
}

std::vector<HuntingEvent> detect_hunting(std::span<const Track> crickets, const Track& dragon, int frame_count,
                                         const RunConfig& cfg) {
  std::vector<HuntingEvent> events;
  const double limit = cfg.gamma * cfg.geometry.width;
  for (std::size_t k = 0; k < crickets.size(); ++k) {
    const Detection* last = crickets[k].last_observed();
    if (last == nullptr) continue;
    // The clip must run long enough after the last sighting to confirm it.
    if (static_cast<long>(last->frame) + cfg.disappearance_window > static_cast<long>(frame_count) - 1) continue;
    const Detection* near = dragon.at(last->frame);
    if (near == nullptr) near = dragon.nearest(last->frame, cfg.max_gap);
    if (near == nullptr) continue;
    const double d = center_distance(to_pixels(near->box, cfg.geometry), to_pixels(last->box, cfg.geometry));
    if (d < limit) events.push_back({last->frame, k, d});
  }
  return events;
}

namespace {

std::vector<Episode> run_length(std::span<const Behaviour> states) {
  std::vector<Episode> runs;
  for (int t = 0; t < static_cast<int>(states.size()); ++t) {
    if (!runs.empty() && runs.back().behaviour == states[t]) {
      runs.back().end_frame = t;
    } else {
      runs.push_back({states[t], t, t, 0.0});
    }
  }
  return runs;
}

}  // namespace

std::vector<Episode> aggregate_episodes(std::span<const Behaviour> states, const RunConfig& cfg) {
  std::vector<Episode> merged;
  for (auto run : run_length(states)) {
    if (run.behaviour == Behaviour::Basking && run.length() < cfg.min_episode) run.behaviour = Behaviour::Idle;
    if (!merged.empty() && merged.back().behaviour == run.behaviour) {
      merged.back().end_frame = run.end_frame;
    } else {
      merged.push_back(run);
    }
  }
  for (auto& e : merged) e.duration_s = e.length() / cfg.geometry.fps;
  return merged;
}

std::vector<Behaviour> expand_episodes(std::span<const Episode> episodes, int frame_count) {
  std::vector<Behaviour> states(static_cast<std::size_t>(frame_count), Behaviour::Idle);
  for (const auto& e : episodes) {
    for (int t = e.start_frame; t <= e.end_frame && t < frame_count; ++t) states[t] = e.behaviour;
  }
  return states;
}

}  // namespace pogona
