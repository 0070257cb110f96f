#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pogona/ingest.hpp"
#include "pogona/interpolate.hpp"
#include "pogona/types.hpp"

namespace pogona {

enum class Behaviour { Idle = 0, Basking = 1, Hunting = 2 };

inline constexpr std::size_t kNumBehaviours = 3;
inline constexpr Behaviour kAllBehaviours[] = {Behaviour::Idle, Behaviour::Basking, Behaviour::Hunting};

std::string_view behaviour_name(Behaviour b);
std::optional<Behaviour> behaviour_from_name(std::string_view name);

/// Dragon-lamp relation in pixels. delta_y is the absolute vertical
/// separation of the two centers; theta (degrees) is the angle between the
/// lamp's vertical and the lamp-to-dragon line, 90 when delta_y is 0.
struct BaskingGeometry {
  double delta_y = 0.0;
  double theta = 0.0;
  bool lamp_above = false;  // lamp center row strictly above the dragon's

  friend bool operator==(const BaskingGeometry&, const BaskingGeometry&) = default;
};

struct BaskingResult {
  bool basking = false;
  std::optional<BaskingGeometry> geometry;  // present whenever both objects are

  friend bool operator==(const BaskingResult&, const BaskingResult&) = default;
};

BaskingGeometry basking_geometry(const Detection& dragon, const Detection& lamp, const FrameGeometry& geom);

/// Basking iff the lamp is above the dragon, delta_y <= beta * H and
/// theta < theta_max. Either detection missing means not basking and no
/// geometry.
BaskingResult classify_basking(const Detection* dragon, const Detection* lamp, const RunConfig& cfg);

struct HuntingEvent {
  int frame = 0;           // last frame the cricket was seen
  std::size_t track = 0;   // index into the cricket track list
  double distance_px = 0;  // dragon-cricket center distance at that frame

  friend bool operator==(const HuntingEvent&, const HuntingEvent&) = default;
};

/// A cricket track produces one event at its last observed frame t when
/// the clip continues for at least cfg.disappearance_window frames after t
/// and the dragon (at t, or the nearest detection within cfg.max_gap) is
/// closer than cfg.gamma * W.
std::vector<HuntingEvent> detect_hunting(std::span<const Track> crickets, const Track& dragon, int frame_count,
                                         const RunConfig& cfg);

struct Episode {
  Behaviour behaviour = Behaviour::Idle;
  int start_frame = 0;  // inclusive
  int end_frame = 0;    // inclusive
  double duration_s = 0.0;

  int length() const { return end_frame - start_frame + 1; }
  friend bool operator==(const Episode&, const Episode&) = default;
};

/// Run-length encodes per-frame states. Basking runs shorter than
/// cfg.min_episode become Idle, hunting frames are always kept, and
/// adjacent runs of the same behaviour are merged.
std::vector<Episode> aggregate_episodes(std::span<const Behaviour> states, const RunConfig& cfg);

/// Per-frame states described by a partition of [0, frame_count).
std::vector<Behaviour> expand_episodes(std::span<const Episode> episodes, int frame_count);

}  // namespace pogona
