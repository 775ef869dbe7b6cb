#pragma once

#include <string>
#include <vector>

#include "grasp/core/types.hpp"
#include "grasp/scene/primitives.hpp"

namespace grasp {

// Open-top bin: interior floor rectangle centered at `center` (z = floor
// surface), four walls of the given height and thickness.
struct BinSpec {
  Eigen::Vector3d center = Eigen::Vector3d(0.55, 0.0, 0.0);
  double interior_x = 0.24;
  double interior_y = 0.24;
  double wall_height = 0.12;
  double wall_thickness = 0.02;

  double floor_z() const { return center.z(); }
  Aabb interior_aabb() const {
    Aabb bb;
    bb.min = center - Eigen::Vector3d(0.5 * interior_x, 0.5 * interior_y, 0.0);
    bb.max = center + Eigen::Vector3d(0.5 * interior_x, 0.5 * interior_y, wall_height);
    return bb;
  }
};

struct SceneObject {
  ShapePrimitive shape;
  Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
  uint16_t label = 1;  // 0 reserved for background/bin
};

struct CameraModel {
  CameraIntrinsics intrinsics;
  Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();  // camera-to-world
};

// Top-down camera at `height` above a target point, optical +z pointing
// straight down (world -z), camera x aligned with world x.
inline CameraModel make_topdown_camera(const CameraIntrinsics& intr,
                                       const Eigen::Vector3d& target, double height) {
  CameraModel cam;
  cam.intrinsics = intr;
  Eigen::Matrix3d R;
  R.col(0) = Eigen::Vector3d::UnitX();
  R.col(1) = -Eigen::Vector3d::UnitY();
  R.col(2) = -Eigen::Vector3d::UnitZ();
  cam.pose.linear() = R;
  cam.pose.translation() = target + Eigen::Vector3d(0, 0, height);
  return cam;
}

struct SceneDescription {
  BinSpec bin;
  std::vector<SceneObject> objects;
  uint64_t seed = 0;
  CameraModel camera;
  // Set when the sampler could not place every requested object.
  bool incomplete = false;
};

}  // namespace grasp
