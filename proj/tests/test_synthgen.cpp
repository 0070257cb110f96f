#include <gtest/gtest.h>

#include <random>

#include "pogona/analysis.hpp"
#include "pogona/ingest.hpp"
#include "pogona/synthgen.hpp"

using namespace pogona;

namespace {

Scenario scenario(Behaviour kind, std::uint64_t seed = 7) {
  Scenario s;
  s.kind = kind;
  s.seed = seed;
  return s;
}

AnalysisOutput run(const GeneratedScenario& gen) { return analyze(parse_detection_log(gen.log), RunConfig{}); }

}  // namespace

TEST(ScenarioRng, EngineIsStandardMt19937_64) {
  // The standard fixes the 10000th output of a default-seeded engine.
  std::mt19937_64 reference;
  reference.discard(9999);
  EXPECT_EQ(reference(), 9981545732273789042ull);

  ScenarioRng a(5489), b(5489);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(ScenarioRng, UniformIsTop53Bits) {
  std::mt19937_64 engine(123);
  ScenarioRng rng(123);
  for (int i = 0; i < 100; ++i) {
    const double expect = static_cast<double>(engine() >> 11) / 9007199254740992.0;
    const double got = rng.uniform();
    EXPECT_EQ(got, expect);
    EXPECT_GE(got, 0.0);
    EXPECT_LT(got, 1.0);
  }
}

TEST(ScenarioRng, NormalMoments) {
  ScenarioRng rng(99);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Synthgen, Deterministic) {
  for (auto kind : kAllBehaviours) {
    auto s = scenario(kind);
    s.dropout_rate = 0.2;
    s.position_noise = 0.01;
    EXPECT_EQ(generate(s).log, generate(s).log);
    auto other = s;
    other.seed = 8;
    EXPECT_NE(generate(s).log, generate(other).log);
  }
}

TEST(Synthgen, BaskingRecoveredExactly) {
  const auto gen = generate(scenario(Behaviour::Basking));
  EXPECT_EQ(gen.activity[1].coverage, 100.0);
  const auto out = run(gen);
  EXPECT_EQ(out.episodes, gen.episodes);
  EXPECT_EQ(out.activity_of(Behaviour::Basking).coverage, 100.0);
  EXPECT_NEAR(*out.activity_of(Behaviour::Basking).mean_vertical_diff, *gen.activity[1].mean_vertical_diff, 1e-9);
  EXPECT_EQ(out.activity_of(Behaviour::Basking).jitter, 0.0);
  EXPECT_EQ(out.activity_of(Behaviour::Basking).drift_slope, 0.0);
}

TEST(Synthgen, IdleRecoveredExactly) {
  const auto gen = generate(scenario(Behaviour::Idle));
  const auto out = run(gen);
  EXPECT_EQ(out.episodes, gen.episodes);
  EXPECT_EQ(out.activity_of(Behaviour::Basking).coverage, 0.0);
  EXPECT_TRUE(out.hunting_events.empty());
  // Idle separation exceeds beta * H.
  EXPECT_GT(*out.activity_of(Behaviour::Idle).mean_vertical_diff, 0.33 * 480);
}

TEST(Synthgen, HuntingEventAtVanishFrame) {
  auto s = scenario(Behaviour::Hunting);
  s.vanish_frame = 120;
  const auto gen = generate(s);
  EXPECT_EQ(gen.hunting_frames, std::vector<int>{120});
  const auto out = run(gen);
  ASSERT_EQ(out.hunting_events.size(), 1u);
  EXPECT_EQ(out.hunting_events[0].frame, 120);
  EXPECT_EQ(out.episodes, gen.episodes);
  EXPECT_FALSE(out.activity_of(Behaviour::Hunting).jitter);
  EXPECT_FALSE(out.activity_of(Behaviour::Hunting).drift_slope);
}

TEST(Synthgen, HuntingOutsideReachOrTooLate) {
  auto s = scenario(Behaviour::Hunting);
  s.vanish_frame = 120;
  s.hunt_distance = 0.3;
  auto gen = generate(s);
  EXPECT_TRUE(gen.hunting_frames.empty());
  EXPECT_TRUE(run(gen).hunting_events.empty());

  s.hunt_distance = 0.1;
  s.vanish_frame = 190;
  gen = generate(s);
  EXPECT_TRUE(gen.hunting_frames.empty());
  EXPECT_TRUE(run(gen).hunting_events.empty());
}

TEST(Synthgen, DropoutIsRepairedByInterpolation) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto s = scenario(Behaviour::Basking, seed);
    s.dropout_rate = 0.3;
    const auto out = run(generate(s));
    EXPECT_EQ(out.activity_of(Behaviour::Basking).coverage, 100.0) << "seed " << seed;
    EXPECT_LT(out.dragon_continuity.before, 1.0);
    EXPECT_EQ(out.dragon_continuity.after, 1.0);
  }
}

TEST(Synthgen, LogParsesWithDeclaredGeometry) {
  auto s = scenario(Behaviour::Hunting);
  s.frames = 321;
  s.geometry = {1280, 720, 25};
  const auto tl = parse_detection_log(generate(s).log);
  EXPECT_EQ(tl.frame_count, 321);
  EXPECT_EQ(tl.geometry, s.geometry);
  EXPECT_EQ(tl.of(ClassLabel::Cricket).size(), static_cast<std::size_t>(s.effective_vanish_frame() + 1));
}

TEST(Synthgen, RejectsInvalidScenarios) {
  auto bad = scenario(Behaviour::Basking);
  bad.frames = 0;
  EXPECT_THROW(generate(bad), InvalidScenario);
  bad = scenario(Behaviour::Basking);
  bad.dropout_rate = 1.0;
  EXPECT_THROW(generate(bad), InvalidScenario);
  bad.dropout_rate = -0.1;
  EXPECT_THROW(generate(bad), InvalidScenario);
  bad = scenario(Behaviour::Basking);
  bad.position_noise = -1;
  EXPECT_THROW(generate(bad), InvalidScenario);
  bad = scenario(Behaviour::Basking);
  bad.geometry.fps = 0;
  EXPECT_THROW(generate(bad), InvalidScenario);
  bad = scenario(Behaviour::Hunting);
  bad.vanish_frame = 200;
  EXPECT_THROW(generate(bad), InvalidScenario);
}
