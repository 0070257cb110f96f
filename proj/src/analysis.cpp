#include "pogona/analysis.hpp"

#include "pogona/kernels.hpp"

namespace pogona {

AnalysisOutput analyze(const Timeline& timeline, RunConfig cfg, bool parallel) {
  cfg.geometry = timeline.geometry;
  cfg.validate();

  AnalysisOutput out;
  out.config = cfg;
  out.frame_count = timeline.frame_count;
  const int n = timeline.frame_count;

  const auto raw = reduce_per_frame(timeline);
  const Track dragon = fill_gaps(raw.dragon, cfg.max_gap);
  const Track lamp = fill_gaps(raw.lamp, cfg.max_gap);
  out.dragon_continuity = {continuity(raw.dragon), continuity(dragon)};
  out.lamp_continuity = {continuity(raw.lamp), continuity(lamp)};

  std::vector<Track> crickets;
  for (const auto& t : associate_crickets(timeline, cfg)) crickets.push_back(fill_gaps(t, cfg.max_gap));
  out.cricket_tracks = crickets.size();

  const auto basking = parallel ? kernels::classify_frames_parallel(dragon, lamp, n, cfg)
                                : kernels::classify_frames_serial(dragon, lamp, n, cfg);
  out.hunting_events = detect_hunting(crickets, dragon, n, cfg);

  std::vector<Behaviour> raw_states(static_cast<std::size_t>(n), Behaviour::Idle);
  for (int t = 0; t < n; ++t) {
    if (basking[t].basking) raw_states[t] = Behaviour::Basking;
  }
  std::vector<bool> event_at(static_cast<std::size_t>(n), false);
  for (const auto& e : out.hunting_events) {
    raw_states[e.frame] = Behaviour::Hunting;
    event_at[e.frame] = true;
  }

  out.episodes = aggregate_episodes(raw_states, cfg);
  const auto states = expand_episodes(out.episodes, n);

  std::vector<std::optional<double>> delta_y(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    if (basking[t].geometry) delta_y[t] = basking[t].geometry->delta_y;
  }
  for (auto b : kAllBehaviours) {
    out.activity[static_cast<std::size_t>(b)] = activity_report(states, delta_y, b, cfg.geometry.fps);
  }

  std::vector<int> cricket_count(static_cast<std::size_t>(n), 0);
  for (const auto& track : crickets) {
    for (const auto& d : track.detections) ++cricket_count[d.frame];
  }
  out.frames.resize(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    auto& rec = out.frames[t];
    rec.frame = t;
    rec.state = states[t];
    if (basking[t].geometry) {
      rec.delta_y = basking[t].geometry->delta_y;
      rec.theta = basking[t].geometry->theta;
    }
    if (const auto* d = dragon.at(t)) rec.dragon = d->provenance;
    if (const auto* l = lamp.at(t)) rec.lamp = l->provenance;
    rec.crickets = cricket_count[t];
    rec.hunting_event = event_at[t];
  }
  return out;
}

}  // namespace pogona
