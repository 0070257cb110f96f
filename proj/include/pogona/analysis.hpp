#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pogona/activity.hpp"
#include "pogona/behaviour.hpp"
#include "pogona/ingest.hpp"
#include "pogona/interpolate.hpp"

namespace pogona {

/// Annotation for one frame of the clip.
struct FrameRecord {
  int frame = 0;
  Behaviour state = Behaviour::Idle;
  std::optional<double> delta_y;
  std::optional<double> theta;
  std::optional<Provenance> dragon;
  std::optional<Provenance> lamp;
  int crickets = 0;
  bool hunting_event = false;

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct ContinuityStat {
  double before = 0.0;
  double after = 0.0;
};

struct AnalysisOutput {
  RunConfig config;
  int frame_count = 0;
  std::vector<Episode> episodes;
  std::array<ActivityReport, kNumBehaviours> activity;
  std::vector<HuntingEvent> hunting_events;
  std::vector<FrameRecord> frames;
  ContinuityStat dragon_continuity;
  ContinuityStat lamp_continuity;
  std::size_t cricket_tracks = 0;

  const ActivityReport& activity_of(Behaviour b) const { return activity[static_cast<std::size_t>(b)]; }
};

/// Full per-clip pipeline: reduce, interpolate, classify, detect hunting,
/// aggregate episodes and compute activity metrics. The clip geometry from
/// the timeline replaces cfg.geometry.
AnalysisOutput analyze(const Timeline& timeline, RunConfig cfg, bool parallel = true);

}  // namespace pogona
