#include "pogona/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pogona {

std::optional<ClassLabel> class_from_code(long long code) {
  if (code < 0 || code >= static_cast<long long>(kNumClasses)) return std::nullopt;
  return static_cast<ClassLabel>(code);
}

std::string_view class_name(ClassLabel c) {
  switch (c) {
    case ClassLabel::BeardedDragon: return "BeardedDragon";
    case ClassLabel::HeatingLamp: return "HeatingLamp";
    case ClassLabel::Cricket: return "Cricket";
  }
  return "Unknown";
}

bool BBox::valid() const {
  if (!(cx >= 0.0 && cx <= 1.0 && cy >= 0.0 && cy <= 1.0)) return false;
  if (!(w > 0.0 && w <= 1.0 && h > 0.0 && h <= 1.0)) return false;
  // At least part of the box has to lie inside the unit square.
  const double x0 = std::max(0.0, cx - w / 2.0), x1 = std::min(1.0, cx + w / 2.0);
  const double y0 = std::max(0.0, cy - h / 2.0), y1 = std::min(1.0, cy + h / 2.0);
  return x1 > x0 && y1 > y0;
}

std::size_t Timeline::size() const {
  std::size_t n = 0;
  for (const auto& v : by_class) n += v.size();
  return n;
}

PixelBox to_pixels(const BBox& box, const FrameGeometry& geom) {
  const double W = geom.width, H = geom.height;
  return {box.cx * W, box.cy * H, box.w * W, box.h * H};
}

BBox to_normalized(const PixelBox& box, const FrameGeometry& geom) {
  const double W = geom.width, H = geom.height;
  return {box.cx / W, box.cy / H, box.w / W, box.h / H};
}

double iou(const PixelBox& a, const PixelBox& b) {
  const double ix = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
  const double iy = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  // Areas from the same edge arithmetic as the intersection, so iou(a, a) is exactly 1.
  const double area_a = (a.right() - a.left()) * (a.bottom() - a.top());
  const double area_b = (b.right() - b.left()) * (b.bottom() - b.top());
  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double iou(const BBox& a, const BBox& b) {
  return iou(PixelBox{a.cx, a.cy, a.w, a.h}, PixelBox{b.cx, b.cy, b.w, b.h});
}

double center_distance(const PixelBox& a, const PixelBox& b) {
  return std::hypot(a.cx - b.cx, a.cy - b.cy);
}

}  // namespace pogona
