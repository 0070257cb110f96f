#pragma once

#include "pogona/types.hpp"

namespace pogona {

PixelBox to_pixels(const BBox& box, const FrameGeometry& geom);
BBox to_normalized(const PixelBox& box, const FrameGeometry& geom);

/// Intersection over union of two positive-extent boxes. Symmetric, 0 when
/// the boxes are disjoint or merely touch.
double iou(const PixelBox& a, const PixelBox& b);

/// IoU evaluated directly on normalized boxes. Equal to the pixel-space IoU
/// for any frame size, since both areas scale by W*H.
double iou(const BBox& a, const BBox& b);

double center_distance(const PixelBox& a, const PixelBox& b);

}  // namespace pogona
