#include <gtest/gtest.h>

#include <random>

#include "pogona/interpolate.hpp"
#include "test_support.hpp"

using namespace pogona;
using test::det;

namespace {

Timeline timeline_of(std::vector<Detection> dets, int frame_count = 200, FrameGeometry g = {640, 480, 30}) {
  Timeline tl;
  tl.geometry = g;
  tl.frame_count = frame_count;
  for (auto& d : dets) tl.of(d.label).push_back(d);
  return tl;
}

Track track_of(std::vector<Detection> dets) {
  Track t;
  t.label = dets.empty() ? ClassLabel::BeardedDragon : dets.front().label;
  t.detections = std::move(dets);
  return t;
}

Track random_track(std::mt19937_64& rng, int frames, double keep) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Detection> dets;
  for (int f = 0; f < frames; ++f) {
    if (f != 0 && f != frames - 1 && u(rng) > keep) continue;
    dets.push_back(det(f, ClassLabel::BeardedDragon, u(rng), u(rng), 0.05 + 0.5 * u(rng), 0.05 + 0.5 * u(rng), u(rng)));
  }
  return track_of(std::move(dets));
}

}  // namespace

TEST(Reduce, HighestConfidenceWins) {
  const auto tl = timeline_of({det(3, ClassLabel::BeardedDragon, 0.2, 0.2, 0.1, 0.1, 0.7),
                               det(3, ClassLabel::BeardedDragon, 0.6, 0.6, 0.1, 0.1, 0.9)});
  const auto tracks = reduce_per_frame(tl);
  ASSERT_EQ(tracks.dragon.detections.size(), 1u);
  EXPECT_EQ(tracks.dragon.detections[0].confidence, 0.9);
  EXPECT_TRUE(tracks.lamp.empty());
}

TEST(Reduce, TieBrokenByAreaThenInputOrder) {
  // areas 0.02 and 0.04
  auto tl = timeline_of({det(5, ClassLabel::HeatingLamp, 0.1, 0.1, 0.1, 0.2, 0.8),
                         det(5, ClassLabel::HeatingLamp, 0.7, 0.1, 0.2, 0.2, 0.8)});
  EXPECT_EQ(reduce_per_frame(tl).lamp.at(5)->box.cx, 0.7);

  tl = timeline_of({det(5, ClassLabel::HeatingLamp, 0.1, 0.1, 0.2, 0.2, 0.8),
                    det(5, ClassLabel::HeatingLamp, 0.7, 0.1, 0.2, 0.2, 0.8)});
  EXPECT_EQ(reduce_per_frame(tl).lamp.at(5)->box.cx, 0.1);
}

TEST(Track, Lookup) {
  const auto t = track_of({det(2, ClassLabel::BeardedDragon, 0.1, 0.1), det(6, ClassLabel::BeardedDragon, 0.2, 0.1)});
  EXPECT_NE(t.at(2), nullptr);
  EXPECT_EQ(t.at(3), nullptr);
  EXPECT_EQ(t.nearest(4, 2)->frame, 2);  // tie goes to the earlier frame
  EXPECT_EQ(t.nearest(5, 1)->frame, 6);
  EXPECT_EQ(t.nearest(10, 3), nullptr);
  EXPECT_EQ(t.nearest(0, 2)->frame, 2);
}

TEST(Crickets, SteadyWalkIsOneTrack) {
  std::vector<Detection> dets;
  for (int f = 0; f < 50; ++f) dets.push_back(det(f, ClassLabel::Cricket, (100.0 + 2.0 * f) / 640, 0.5, 0.02, 0.02));
  const auto tracks = associate_crickets(timeline_of(dets), RunConfig{});
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_EQ(tracks[0].detections.size(), 50u);
}

TEST(Crickets, FarApartAreTwoTracks) {
  std::vector<Detection> dets;
  for (int f = 0; f < 30; ++f) {
    dets.push_back(det(f, ClassLabel::Cricket, 0.1 + 0.001 * f, 0.5, 0.02, 0.02));
    dets.push_back(det(f, ClassLabel::Cricket, 0.9 - 0.001 * f, 0.5, 0.02, 0.02));
  }
  const auto tracks = associate_crickets(timeline_of(dets), RunConfig{});
  ASSERT_EQ(tracks.size(), 2u);
  for (const auto& t : tracks) EXPECT_EQ(t.detections.size(), 30u);
  EXPECT_LT(tracks[0].detections[0].box.cx, 0.5);
}

TEST(Crickets, ShortHoleStaysOneTrack) {
  // 2 px per frame, frames 13..15 missing: the jump over 4 frames is 8 px,
  // well inside the 4 * 32 px gate.
  std::vector<Detection> dets;
  for (int f = 0; f < 30; ++f) {
    if (f >= 13 && f <= 15) continue;
    dets.push_back(det(f, ClassLabel::Cricket, (100.0 + 2.0 * f) / 640, 0.5, 0.02, 0.02));
  }
  const auto tracks = associate_crickets(timeline_of(dets), RunConfig{});
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_EQ(tracks[0].first_frame(), 0);
  EXPECT_EQ(tracks[0].last_frame(), 29);
}

TEST(Crickets, LongHoleOrFastJumpSplits) {
  RunConfig cfg;
  cfg.max_gap = 2;
  auto tracks = associate_crickets(
      timeline_of({det(0, ClassLabel::Cricket, 0.5, 0.5, 0.02, 0.02), det(4, ClassLabel::Cricket, 0.5, 0.5, 0.02, 0.02)}),
      cfg);
  EXPECT_EQ(tracks.size(), 2u);  // hole of 3 > max_gap
  tracks = associate_crickets(
      timeline_of({det(0, ClassLabel::Cricket, 0.5, 0.5, 0.02, 0.02), det(1, ClassLabel::Cricket, 0.56, 0.5, 0.02, 0.02)}),
      RunConfig{});
  EXPECT_EQ(tracks.size(), 2u);  // 38.4 px > 32 px gate
}

TEST(FillGaps, Midpoint) {
  const auto t = fill_gaps(
      track_of({det(0, ClassLabel::BeardedDragon, 0.2, 0.5, 0.1, 0.1, 0.9), det(2, ClassLabel::BeardedDragon, 0.4, 0.5, 0.1, 0.1, 0.6)}),
      15);
  ASSERT_EQ(t.detections.size(), 3u);
  const auto* mid = t.at(1);
  ASSERT_NE(mid, nullptr);
  EXPECT_NEAR(mid->box.cx, 0.3, 1e-15);
  EXPECT_EQ(mid->confidence, 0.6);
  EXPECT_EQ(mid->provenance, Provenance::Interpolated);
}

TEST(FillGaps, ThreeInteriorFrames) {
  const auto t = fill_gaps(
      track_of({det(10, ClassLabel::BeardedDragon, 0.0, 0.5), det(14, ClassLabel::BeardedDragon, 0.8, 0.5)}), 15);
  EXPECT_NEAR(t.at(11)->box.cx, 0.2, 1e-15);
  EXPECT_NEAR(t.at(12)->box.cx, 0.4, 1e-15);
  EXPECT_NEAR(t.at(13)->box.cx, 0.6, 1e-15);
}

TEST(FillGaps, GapBoundary) {
  const auto src =
      track_of({det(0, ClassLabel::BeardedDragon, 0.1, 0.5), det(4, ClassLabel::BeardedDragon, 0.5, 0.5)});  // 3 missing
  EXPECT_EQ(fill_gaps(src, 3).detections.size(), 5u);
  EXPECT_EQ(fill_gaps(src, 2).detections.size(), 2u);
  EXPECT_TRUE(fill_gaps(Track{}, 5).empty());
}

TEST(FillGaps, Properties) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto src = random_track(rng, 120, 0.6);
    const int max_gap = i % 7;
    const auto once = fill_gaps(src, max_gap);
    EXPECT_EQ(fill_gaps(once, max_gap), once);
    // Observed entries untouched, nothing outside [first, last].
    for (const auto& d : src.detections) EXPECT_EQ(*once.at(d.frame), d);
    EXPECT_EQ(once.first_frame(), src.first_frame());
    EXPECT_EQ(once.last_frame(), src.last_frame());
    EXPECT_GE(continuity(once), continuity(src));
    for (const auto& d : once.detections) {
      if (d.provenance != Provenance::Interpolated) continue;
      EXPECT_EQ(src.at(d.frame), nullptr);
      const auto next = std::upper_bound(src.detections.begin(), src.detections.end(), d.frame,
                                         [](int f, const Detection& x) { return f < x.frame; });
      ASSERT_NE(next, src.detections.begin());
      ASSERT_NE(next, src.detections.end());
      EXPECT_EQ(d.confidence, std::min(std::prev(next)->confidence, next->confidence));
    }
  }
}

TEST(FillGaps, MonotoneBetweenEndpoints) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const int gap = 1 + static_cast<int>(u(rng) * 15);
    const double a = u(rng), b = u(rng);
    const auto t = fill_gaps(
        track_of({det(0, ClassLabel::BeardedDragon, a, a), det(gap + 1, ClassLabel::BeardedDragon, b, b)}), 15);
    ASSERT_EQ(t.detections.size(), static_cast<std::size_t>(gap + 2));
    for (std::size_t k = 1; k < t.detections.size(); ++k) {
      const double prev = t.detections[k - 1].box.cx, cur = t.detections[k].box.cx;
      if (a <= b) {
        EXPECT_LE(prev, cur);
      } else {
        EXPECT_GE(prev, cur);
      }
    }
  }
}

TEST(Continuity, FullAfterFillingShortHoles) {
  std::mt19937_64 rng(17);
  const auto src = random_track(rng, 300, 0.7);
  EXPECT_LT(continuity(src), 1.0);
  EXPECT_EQ(continuity(fill_gaps(src, 300)), 1.0);
  EXPECT_EQ(continuity(Track{}), 0.0);
  EXPECT_DOUBLE_EQ(
      continuity(track_of({det(0, ClassLabel::BeardedDragon, 0.1, 0.1), det(3, ClassLabel::BeardedDragon, 0.1, 0.1)})),
      0.5);
}
