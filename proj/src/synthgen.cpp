#include "pogona/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "pogona/ingest.hpp"

namespace pogona {

namespace {

constexpr BBox kLamp{0.50, 0.12, 0.10, 0.10};
constexpr BBox kBaskingDragon{0.55, 0.40, 0.20, 0.12};
constexpr BBox kIdleDragon{0.25, 0.85, 0.20, 0.12};
constexpr double kCricketSize = 0.02;
constexpr double kCricketStartOffset = 0.45;  // fraction of W, to the right of the dragon
constexpr double kLampConf = 0.92, kDragonConf = 0.88, kCricketConf = 0.6;

// Defaults the script is laid out against.
constexpr double kGamma = 0.25;
constexpr int kWindow = 15;

struct ScriptedObject {
  ClassLabel label;
  BBox box;
  double confidence;
  int first_frame;
  int last_frame;
};

BBox cricket_at(const Scenario& s, int t) {
  const int vanish = s.effective_vanish_frame();
  const double start = std::max(kCricketStartOffset, s.hunt_distance);
  const double progress = vanish == 0 ? 1.0 : static_cast<double>(t) / vanish;
  const double offset = start + (s.hunt_distance - start) * progress;
  return {kIdleDragon.cx + offset, kIdleDragon.cy, kCricketSize, kCricketSize};
}

}  // namespace

ScenarioRng::ScenarioRng(std::uint64_t seed) : engine_(seed) {}

double ScenarioRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double ScenarioRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void Scenario::validate() const {
  if (frames < 1) throw InvalidScenario(fmt::format("frames = {} must be >= 1", frames));
  if (!geometry.valid()) throw InvalidScenario("geometry needs W >= 1, H >= 1, fps > 0");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw InvalidScenario(fmt::format("dropout = {} must lie in [0, 1)", dropout_rate));
  }
  if (!(position_noise >= 0.0 && std::isfinite(position_noise))) {
    throw InvalidScenario(fmt::format("noise = {} must be >= 0", position_noise));
  }
  if (kind == Behaviour::Hunting) {
    const int v = effective_vanish_frame();
    if (v < 0 || v >= frames) throw InvalidScenario(fmt::format("vanish frame {} outside the clip", v));
    if (!(hunt_distance >= 0.0 && hunt_distance <= 0.7)) {
      throw InvalidScenario(fmt::format("hunt distance {} must lie in [0, 0.7]", hunt_distance));
    }
  }
}

GeneratedScenario generate(const Scenario& s) {
  s.validate();
  GeneratedScenario out;
  out.scenario = s;
  const int last = s.frames - 1;
  const double H = s.geometry.height;

  std::vector<ScriptedObject> objects{{ClassLabel::HeatingLamp, kLamp, kLampConf, 0, last}};
  const BBox dragon = s.kind == Behaviour::Basking ? kBaskingDragon : kIdleDragon;
  objects.push_back({ClassLabel::BeardedDragon, dragon, kDragonConf, 0, last});
  if (s.kind == Behaviour::Hunting) {
    objects.push_back({ClassLabel::Cricket, {}, kCricketConf, 0, s.effective_vanish_frame()});
  }

  Timeline tl;
  tl.geometry = s.geometry;
  tl.frame_count = s.frames;
  ScenarioRng rng(s.seed);
  for (int t = 0; t < s.frames; ++t) {
    for (const auto& obj : objects) {
      if (t < obj.first_frame || t > obj.last_frame) continue;
      // Fixed draw order per object and frame keeps the stream aligned for
      // every parameter combination.
      const double drop = rng.uniform();
      const double nx = rng.normal();
      const double ny = rng.normal();
      const bool endpoint = t == obj.first_frame || t == obj.last_frame;
      if (!endpoint && drop < s.dropout_rate) continue;
      BBox box = obj.label == ClassLabel::Cricket ? cricket_at(s, t) : obj.box;
      box.cx = std::clamp(box.cx + s.position_noise * nx, 0.0, 1.0);
      box.cy = std::clamp(box.cy + s.position_noise * ny, 0.0, 1.0);
      tl.of(obj.label).push_back({t, obj.label, box, obj.confidence, Provenance::Observed});
    }
  }
  out.log = fmt::format("# synthetic {} scenario, {} frames, seed {}, dropout {}, noise {}\n",
                        behaviour_name(s.kind), s.frames, s.seed, s.dropout_rate, s.position_noise) +
            write_detection_log(tl);

  // Expectations from the noiseless script.
  const double separation = std::abs(dragon.cy - kLamp.cy) * H;
  const double fps = s.geometry.fps;
  auto whole = [&](Behaviour b) { return Episode{b, 0, last, s.frames / fps}; };
  for (auto b : kAllBehaviours) out.activity[static_cast<std::size_t>(b)] = {0.0, std::nullopt};

  if (s.kind == Behaviour::Basking) {
    out.episodes = {whole(Behaviour::Basking)};
    out.activity[static_cast<std::size_t>(Behaviour::Basking)] = {100.0, separation};
    return out;
  }

  bool event = false;
  int vanish = 0;
  if (s.kind == Behaviour::Hunting) {
    vanish = s.effective_vanish_frame();
    event = s.hunt_distance < kGamma && vanish + kWindow <= last;
  }
  if (!event) {
    out.episodes = {whole(Behaviour::Idle)};
    out.activity[static_cast<std::size_t>(Behaviour::Idle)] = {100.0, separation};
    return out;
  }
  out.hunting_frames = {vanish};
  if (vanish > 0) out.episodes.push_back({Behaviour::Idle, 0, vanish - 1, vanish / fps});
  out.episodes.push_back({Behaviour::Hunting, vanish, vanish, 1 / fps});
  out.episodes.push_back({Behaviour::Idle, vanish + 1, last, (last - vanish) / fps});
  const double hunt_cov = 100.0 / s.frames;
  out.activity[static_cast<std::size_t>(Behaviour::Hunting)] = {hunt_cov, separation};
  out.activity[static_cast<std::size_t>(Behaviour::Idle)] = {100.0 * (s.frames - 1) / s.frames, separation};
  return out;
}

}  // namespace pogona
