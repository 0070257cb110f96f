#include <gtest/gtest.h>

#include <omp.h>

#include <random>

#include "pogona/kernels.hpp"
#include "test_support.hpp"

using namespace pogona;

namespace {

Track noisy_track(std::mt19937_64& rng, ClassLabel c, int frames, double cy) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Track t;
  t.label = c;
  for (int f = 0; f < frames; ++f) {
    if (u(rng) < 0.2) continue;
    t.detections.push_back(test::det(f, c, 0.3 + 0.4 * u(rng), cy + 0.2 * (u(rng) - 0.5)));
  }
  return t;
}

class ThreadCount : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

}  // namespace

TEST_P(ThreadCount, ClassifyFramesMatchesSerial) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 10; ++i) {
    const int n = 500 + i * 397;
    const auto dragon = noisy_track(rng, ClassLabel::BeardedDragon, n, 0.45);
    const auto lamp = noisy_track(rng, ClassLabel::HeatingLamp, n, 0.15);
    RunConfig cfg;
    cfg.geometry = {640, 480, 30};
    EXPECT_EQ(kernels::classify_frames_serial(dragon, lamp, n, cfg), kernels::classify_frames_parallel(dragon, lamp, n, cfg));
  }
}

TEST_P(ThreadCount, ApGridMatchesSerial) {
  std::mt19937_64 rng(52);
  const auto thresholds = coco_iou_thresholds();
  for (int i = 0; i < 20; ++i) {
    const auto d = oracle::random_micro_dataset(rng, 10, 4);
    std::vector<kernels::ClassSlice> slices(3);
    for (int c = 0; c < 3; ++c) {
      slices[c].preds = test::to_eval(test::of_class(d.preds, c));
      slices[c].gts = test::to_eval(test::of_class(d.gts, c));
    }
    const auto serial = kernels::ap_grid_serial(slices, thresholds);
    ASSERT_EQ(serial.size(), 30u);
    EXPECT_EQ(serial, kernels::ap_grid_parallel(slices, thresholds));
    for (int c = 0; c < 3; ++c) {
      EXPECT_EQ(serial[c * 10], average_precision(slices[c].preds, slices[c].gts, 0.5));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Threads, ThreadCount, ::testing::Values(1, 2, 4, 7));

TEST(Kernels, EmptyInputs) {
  RunConfig cfg;
  EXPECT_TRUE(kernels::classify_frames_parallel(Track{}, Track{}, 0, cfg).empty());
  const auto r = kernels::classify_frames_parallel(Track{}, Track{}, 3, cfg);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_FALSE(r[1].geometry);
  EXPECT_TRUE(kernels::ap_grid_parallel({}, coco_iou_thresholds()).empty());
}
