#pragma once

#include <vector>

#include "pogona/ingest.hpp"
#include "pogona/types.hpp"

namespace pogona {

/// Time-ordered detections of one object, at most one per frame.
struct Track {
  ClassLabel label = ClassLabel::BeardedDragon;
  std::vector<Detection> detections;  // strictly increasing frame

  bool empty() const { return detections.empty(); }
  int first_frame() const { return detections.front().frame; }
  int last_frame() const { return detections.back().frame; }

  /// Detection at exactly `frame`, or nullptr.
  const Detection* at(int frame) const;

  /// Detection closest in time to `frame` within `max_distance` frames
  /// (earlier frame wins a tie), or nullptr.
  const Detection* nearest(int frame, int max_distance) const;

  /// Last detection whose provenance is Observed, or nullptr.
  const Detection* last_observed() const;

  friend bool operator==(const Track&, const Track&) = default;
};

struct CanonicalTracks {
  Track dragon;
  Track lamp;
};

/// Keeps one detection per frame for a single class: highest confidence,
/// then larger box area, then earlier input position.
Track reduce_class(const Timeline& timeline, ClassLabel label);

CanonicalTracks reduce_per_frame(const Timeline& timeline);

/// Greedy frame-to-frame nearest-neighbour association of cricket
/// detections. A detection extends a track when its pixel-center distance
/// to the track's last position is within cfg.cricket_gate * W per elapsed
/// frame and the hole is at most cfg.max_gap frames; cheapest pairs are
/// assigned first. Tracks are returned in creation order.
std::vector<Track> associate_crickets(const Timeline& timeline, const RunConfig& cfg);

/// Fills every hole of at most `max_gap` frames between two consecutive
/// detections by linear blending of cx, cy, w, h. Filled entries are marked
/// Interpolated and take the smaller endpoint confidence. Longer holes and
/// the regions before the first / after the last detection stay empty.
Track fill_gaps(const Track& track, int max_gap);

/// Fraction of frames in [first, last] that carry a detection; 0 for an
/// empty track.
double continuity(const Track& track);

}  // namespace pogona
