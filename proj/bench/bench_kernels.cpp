// Serial reference vs OpenMP kernels.
//
//   ./bench_kernels --benchmark_counters_tabular=true

#include <benchmark/benchmark.h>

#include <random>

#include "pogona/kernels.hpp"

namespace {

using namespace pogona;

struct ClipFixture {
  Track dragon, lamp;
  RunConfig cfg;
  int frames = 0;
};

ClipFixture make_clip(int frames) {
  ClipFixture c;
  c.frames = frames;
  c.cfg.geometry = {1280, 720, 30};
  c.dragon.label = ClassLabel::BeardedDragon;
  c.lamp.label = ClassLabel::HeatingLamp;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int f = 0; f < frames; ++f) {
    c.lamp.detections.push_back({f, ClassLabel::HeatingLamp, {0.5, 0.1, 0.1, 0.1}, 0.9, Provenance::Observed});
    c.dragon.detections.push_back(
        {f, ClassLabel::BeardedDragon, {0.2 + 0.6 * u(rng), 0.3 + 0.6 * u(rng), 0.2, 0.1}, 0.8, Provenance::Observed});
  }
  return c;
}

std::vector<kernels::ClassSlice> make_slices(int per_class) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int images = std::max(1, per_class / 8);
  std::vector<kernels::ClassSlice> slices(kNumClasses);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    for (int i = 0; i < per_class; ++i) {
      const std::size_t img = static_cast<std::size_t>(i % images);
      const BBox gt{0.1 + 0.8 * u(rng), 0.1 + 0.8 * u(rng), 0.1, 0.1};
      slices[c].gts.push_back({img, kAllClasses[c], gt, 1.0});
      BBox p = gt;
      p.cx += 0.03 * (u(rng) - 0.5);
      p.cy += 0.03 * (u(rng) - 0.5);
      slices[c].preds.push_back({img, kAllClasses[c], p, u(rng)});
      if (u(rng) < 0.3) slices[c].preds.push_back({img, kAllClasses[c], {u(rng), u(rng), 0.1, 0.1}, u(rng)});
    }
  }
  return slices;
}

template <auto Kernel>
void BM_ClassifyFrames(benchmark::State& state) {
  const auto clip = make_clip(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(clip.dragon, clip.lamp, clip.frames, clip.cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_ApGrid(benchmark::State& state) {
  const auto slices = make_slices(static_cast<int>(state.range(0)));
  const auto thresholds = coco_iou_thresholds();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(slices, thresholds));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<int64_t>(kNumClasses));
}

}  // namespace

BENCHMARK(BM_ClassifyFrames<kernels::classify_frames_serial>)->Name("classify_frames/serial")->Range(1 << 12, 1 << 20)->UseRealTime();
BENCHMARK(BM_ClassifyFrames<kernels::classify_frames_parallel>)->Name("classify_frames/openmp")->Range(1 << 12, 1 << 20)->UseRealTime();
BENCHMARK(BM_ApGrid<kernels::ap_grid_serial>)->Name("ap_grid/serial")->Range(64, 4096)->UseRealTime();
BENCHMARK(BM_ApGrid<kernels::ap_grid_parallel>)->Name("ap_grid/openmp")->Range(64, 4096)->UseRealTime();

BENCHMARK_MAIN();
