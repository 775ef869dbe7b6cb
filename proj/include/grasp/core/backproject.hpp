#pragma once

#include <optional>

#include "grasp/core/types.hpp"

namespace grasp {

// Back-projects valid depth pixels through the pinhole model:
//   x = (u - cx) d / fx,  y = (v - cy) d / fy,  z = d
// with u = column, v = row. When a mask and label are given, only pixels
// carrying that label contribute. The result keeps the source pixel of
// every point.
inline PointCloud backproject(const DepthImage& depth,
                              const SegmentationMask* mask = nullptr,
                              uint16_t label = 0) {
  if (!depth.intrinsics.valid() || depth.width != depth.intrinsics.width ||
      depth.height != depth.intrinsics.height ||
      depth.data.size() != static_cast<size_t>(depth.width) * depth.height) {
    throw DimensionError("backproject: depth image inconsistent with its intrinsics");
  }
  if (mask && (mask->width != depth.width || mask->height != depth.height)) {
    throw DimensionError("backproject: mask dimensions do not match depth");
  }

  const CameraIntrinsics& in = depth.intrinsics;
  PointCloud cloud;
  cloud.points.reserve(depth.data.size() / 4);
  cloud.pixel_index.reserve(depth.data.size() / 4);
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      if (!depth.valid_at(v, u)) continue;
      if (mask && mask->at(v, u) != label) continue;
      double d = depth.at(v, u);
      cloud.points.emplace_back((u - in.cx) * d / in.fx, (v - in.cy) * d / in.fy, d);
      cloud.pixel_index.emplace_back(v, u);
    }
  }
  return cloud;
}

}  // namespace grasp
