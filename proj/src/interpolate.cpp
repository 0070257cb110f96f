#include "pogona/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <tuple>

#include "pogona/geometry.hpp"

namespace pogona {

const Detection* Track::at(int frame) const {
  auto it = std::lower_bound(detections.begin(), detections.end(), frame,
                             [](const Detection& d, int f) { return d.frame < f; });
  return (it != detections.end() && it->frame == frame) ? &*it : nullptr;
}

const Detection* Track::nearest(int frame, int max_distance) const {
  auto it = std::lower_bound(detections.begin(), detections.end(), frame,
                             [](const Detection& d, int f) { return d.frame < f; });
  const Detection* best = nullptr;
  long best_dist = static_cast<long>(max_distance) + 1;
  if (it != detections.begin()) {
    const auto& prev = *std::prev(it);
    const long dist = static_cast<long>(frame) - prev.frame;
    if (dist < best_dist) best = &prev, best_dist = dist;
  }
  if (it != detections.end()) {
    const long dist = static_cast<long>(it->frame) - frame;
    if (dist < best_dist) best = &*it, best_dist = dist;
  }
  return best;
}

const Detection* Track::last_observed() const {
  for (auto it = detections.rbegin(); it != detections.rend(); ++it) {
    if (it->provenance == Provenance::Observed) return &*it;
  }
  return nullptr;
}

Track reduce_class(const Timeline& timeline, ClassLabel label) {
  Track track{label, {}};
  for (const auto& d : timeline.of(label)) {
    if (track.detections.empty() || track.detections.back().frame != d.frame) {
      track.detections.push_back(d);
      continue;
    }
    auto& kept = track.detections.back();
    if (d.confidence > kept.confidence || (d.confidence == kept.confidence && d.box.area() > kept.box.area())) {
      kept = d;
    }
  }
  return track;
}

CanonicalTracks reduce_per_frame(const Timeline& timeline) {
  return {reduce_class(timeline, ClassLabel::BeardedDragon), reduce_class(timeline, ClassLabel::HeatingLamp)};
}

std::vector<Track> associate_crickets(const Timeline& timeline, const RunConfig& cfg) {
  const auto& dets = timeline.of(ClassLabel::Cricket);
  const double gate_per_frame = cfg.cricket_gate * timeline.geometry.width;
  std::vector<Track> tracks;

  struct Candidate {
    double distance;
    std::size_t track;
    std::size_t det;
  };
  std::vector<Candidate> candidates;
  std::vector<bool> track_taken, det_taken;

  std::size_t begin = 0;
  while (begin < dets.size()) {
    const int frame = dets[begin].frame;
    std::size_t end = begin;
    while (end < dets.size() && dets[end].frame == frame) ++end;

    candidates.clear();
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      const auto& last = tracks[k].detections.back();
      const int elapsed = frame - last.frame;
      if (elapsed - 1 > cfg.max_gap) continue;
      const auto last_px = to_pixels(last.box, timeline.geometry);
      for (std::size_t j = begin; j < end; ++j) {
        const double d = center_distance(last_px, to_pixels(dets[j].box, timeline.geometry));
        if (d <= gate_per_frame * elapsed) candidates.push_back({d, k, j});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(a.distance, a.track, a.det) < std::tie(b.distance, b.track, b.det);
    });

    track_taken.assign(tracks.size(), false);
    det_taken.assign(end - begin, false);
    for (const auto& c : candidates) {
      if (track_taken[c.track] || det_taken[c.det - begin]) continue;
      track_taken[c.track] = true;
      det_taken[c.det - begin] = true;
      tracks[c.track].detections.push_back(dets[c.det]);
    }
    for (std::size_t j = begin; j < end; ++j) {
      if (!det_taken[j - begin]) tracks.push_back(Track{ClassLabel::Cricket, {dets[j]}});
    }
    begin = end;
  }
  return tracks;
}

Track fill_gaps(const Track& track, int max_gap) {
  Track out{track.label, {}};
  out.detections.reserve(track.detections.size());
  for (std::size_t i = 0; i < track.detections.size(); ++i) {
    const auto& a = track.detections[i];
    out.detections.push_back(a);
    if (i + 1 == track.detections.size()) break;
    const auto& b = track.detections[i + 1];
    const int t0 = a.frame, t1 = b.frame;
    const int missing = t1 - t0 - 1;
    if (missing <= 0 || missing > max_gap) continue;
    const double span = t1 - t0;
    for (int t = t0 + 1; t < t1; ++t) {
      // box(t0) * (t1 - t) / span + box(t1) * (t - t0) / span
      const double s = (t - t0) / span;
      Detection d;
      d.frame = t;
      d.label = track.label;
      d.box = BBox{std::lerp(a.box.cx, b.box.cx, s), std::lerp(a.box.cy, b.box.cy, s), std::lerp(a.box.w, b.box.w, s),
                   std::lerp(a.box.h, b.box.h, s)};
      d.confidence = std::min(a.confidence, b.confidence);
      d.provenance = Provenance::Interpolated;
      out.detections.push_back(d);
    }
  }
  return out;
}

double continuity(const Track& track) {
  if (track.empty()) return 0.0;
  const double span = static_cast<double>(track.last_frame()) - track.first_frame() + 1.0;
  return static_cast<double>(track.detections.size()) / span;
}

}  // namespace pogona
