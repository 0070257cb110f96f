#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pogona/behaviour.hpp"
#include "pogona/types.hpp"

namespace pogona {

class InvalidScenario : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scripted enclosure clip. The script is laid out against the default
/// thresholds (beta 0.33, theta_max 45, gamma 0.25, window 15):
///   lamp     fixed near the top centre of the frame;
///   basking  dragon resting under the lamp, separation 0.28 H;
///   idle     dragon in the lower-left corner, separation 0.73 H;
///   hunting  idle dragon plus one cricket walking straight at it, last
///            seen `vanish_frame` at `hunt_distance` * W from its centre.
struct Scenario {
  Behaviour kind = Behaviour::Basking;
  int frames = 200;
  FrameGeometry geometry{640, 480, 30.0};
  double dropout_rate = 0.0;    // i.i.d. per object and frame, first/last frame exempt
  double position_noise = 0.0;  // std-dev of Gaussian center noise, normalized units
  std::uint64_t seed = 0;
  int vanish_frame = -1;        // hunting only; -1 picks 3/5 of the clip
  double hunt_distance = 0.1;   // hunting only; fraction of W

  int effective_vanish_frame() const { return vanish_frame >= 0 ? vanish_frame : frames * 3 / 5; }
  void validate() const;  // throws InvalidScenario
};

/// Noise-free expectation for one behaviour.
struct ExpectedActivity {
  double coverage = 0.0;
  std::optional<double> mean_vertical_diff;
};

struct GeneratedScenario {
  Scenario scenario;
  std::string log;  // detection-log text
  std::vector<Episode> episodes;
  std::vector<int> hunting_frames;
  std::array<ExpectedActivity, kNumBehaviours> activity;
};

GeneratedScenario generate(const Scenario& scenario);

/// Seeded source used by the generator: std::mt19937_64 (whose output
/// sequence is fixed by the C++ standard) with 53-bit uniforms and
/// single-branch Box-Muller normals, so streams do not depend on the
/// standard library's distribution implementations.
class ScenarioRng {
 public:
  explicit ScenarioRng(std::uint64_t seed);
  double uniform();  // [0, 1)
  double normal();   // N(0, 1)

 private:
  std::mt19937_64 engine_;
};

}  // namespace pogona
