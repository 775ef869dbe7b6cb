#pragma once

#include <utility>

#include "grasp/scene/scene.hpp"

namespace grasp {

// Ray-casts the scene from the camera, one ray per pixel through the pixel
// coordinate, and keeps the nearest hit. Depth is the hit's z-distance in
// the camera frame (not the euclidean ray length). Pixels that miss every
// object get the bin floor depth and the background label 0.
inline std::pair<DepthImage, SegmentationMask> render(const SceneDescription& scene) {
  const CameraIntrinsics& in = scene.camera.intrinsics;
  DepthImage depth(in);
  SegmentationMask seg(in.width, in.height);

  const Eigen::Vector3d origin = scene.camera.pose.translation();
  const Eigen::Matrix3d R = scene.camera.pose.linear();
  const double floor_z = scene.bin.floor_z();

  // Cache world AABBs for a cheap per-ray reject.
  std::vector<Aabb> aabbs;
  aabbs.reserve(scene.objects.size());
  for (const auto& obj : scene.objects) aabbs.push_back(shape_aabb(obj.shape, obj.pose));

  for (int v = 0; v < in.height; ++v) {
    for (int u = 0; u < in.width; ++u) {
      // Direction with unit z in the camera frame, so the ray parameter
      // equals camera-frame depth directly.
      Eigen::Vector3d dir_cam((u - in.cx) / in.fx, (v - in.cy) / in.fy, 1.0);
      Eigen::Vector3d dir = R * dir_cam;

      double best_t = std::numeric_limits<double>::infinity();
      uint16_t best_label = 0;
      for (size_t i = 0; i < scene.objects.size(); ++i) {
        // slab test against the AABB first
        double t0 = 0.0, t1 = best_t;
        bool miss = false;
        for (int a = 0; a < 3 && !miss; ++a) {
          if (std::abs(dir[a]) < 1e-15) {
            if (origin[a] < aabbs[i].min[a] || origin[a] > aabbs[i].max[a]) miss = true;
            continue;
          }
          double ta = (aabbs[i].min[a] - origin[a]) / dir[a];
          double tb = (aabbs[i].max[a] - origin[a]) / dir[a];
          if (ta > tb) std::swap(ta, tb);
          t0 = std::max(t0, ta);
          t1 = std::min(t1, tb);
          if (t0 > t1) miss = true;
        }
        if (miss) continue;
        auto hit = ray_cast(scene.objects[i].shape, scene.objects[i].pose, origin, dir);
        if (hit && hit->t < best_t) {
          best_t = hit->t;
          best_label = scene.objects[i].label;
        }
      }
      if (!std::isfinite(best_t) && std::abs(dir.z()) > 1e-15) {
        double t = (floor_z - origin.z()) / dir.z();
        if (t > 0.0) {
          best_t = t;
          best_label = 0;
        }
      }
      if (std::isfinite(best_t)) {
        depth.at(v, u) = static_cast<float>(best_t);
        seg.at(v, u) = best_label;
      }
    }
  }
  return {std::move(depth), std::move(seg)};
}

}  // namespace grasp
