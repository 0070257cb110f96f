#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace pogona {

/// Object classes emitted by the enclosure detector. The integer codes are
/// part of every file format and must never be renumbered.
enum class ClassLabel : int { BeardedDragon = 0, HeatingLamp = 1, Cricket = 2 };

inline constexpr std::size_t kNumClasses = 3;
inline constexpr std::array<ClassLabel, kNumClasses> kAllClasses = {
    ClassLabel::BeardedDragon, ClassLabel::HeatingLamp, ClassLabel::Cricket};

constexpr std::size_t index_of(ClassLabel c) { return static_cast<std::size_t>(c); }
std::optional<ClassLabel> class_from_code(long long code);
std::string_view class_name(ClassLabel c);

/// Axis-aligned box in normalized image coordinates (YOLO convention:
/// center plus extent, all relative to the frame size, y pointing down).
struct BBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  bool valid() const;

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Same layout as BBox but measured in pixels.
struct PixelBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  double left() const { return cx - w / 2.0; }
  double right() const { return cx + w / 2.0; }
  double top() const { return cy - h / 2.0; }
  double bottom() const { return cy + h / 2.0; }

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

struct FrameGeometry {
  int width = 1;
  int height = 1;
  double fps = 1.0;

  bool valid() const { return width >= 1 && height >= 1 && fps > 0.0; }

  friend bool operator==(const FrameGeometry&, const FrameGeometry&) = default;
};

enum class Provenance { Observed, Interpolated };

struct Detection {
  int frame = 0;
  ClassLabel label = ClassLabel::BeardedDragon;
  BBox box;
  double confidence = 0.0;
  Provenance provenance = Provenance::Observed;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// All detections of one clip, bucketed by class. Each bucket is sorted by
/// frame, then by descending confidence, with input order kept for ties.
struct Timeline {
  FrameGeometry geometry;
  int frame_count = 0;
  std::array<std::vector<Detection>, kNumClasses> by_class;

  const std::vector<Detection>& of(ClassLabel c) const { return by_class[index_of(c)]; }
  std::vector<Detection>& of(ClassLabel c) { return by_class[index_of(c)]; }
  std::size_t size() const;

  friend bool operator==(const Timeline&, const Timeline&) = default;
};

}  // namespace pogona
