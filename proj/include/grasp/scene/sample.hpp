#pragma once

#include <algorithm>
#include <vector>

#include "grasp/core/rng.hpp"
#include "grasp/scene/scene.hpp"

namespace grasp {

struct SampleParams {
  int count_min = 1;
  int count_max = 10;
  int max_attempts_per_object = 100;
  double max_tilt_rad = 15.0 * M_PI / 180.0;  // boxes and cylinders
};

namespace detail {

inline Eigen::Matrix3d sample_rotation(Rng& rng, const ShapePrimitive& shape, double max_tilt) {
  double yaw = rng.uniform(0.0, 2.0 * M_PI);
  if (std::holds_alternative<TriMesh>(shape)) {
    // uniform rotation via random unit quaternion
    double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
    Eigen::Quaterniond q(std::sqrt(1 - u1) * std::sin(2 * M_PI * u2),
                         std::sqrt(1 - u1) * std::cos(2 * M_PI * u2),
                         std::sqrt(u1) * std::sin(2 * M_PI * u3),
                         std::sqrt(u1) * std::cos(2 * M_PI * u3));
    return q.normalized().toRotationMatrix();
  }
  double tilt = rng.uniform(0.0, max_tilt);
  double tilt_dir = rng.uniform(0.0, 2.0 * M_PI);
  Eigen::Vector3d axis(std::cos(tilt_dir), std::sin(tilt_dir), 0.0);
  return (Eigen::AngleAxisd(tilt, axis) * Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()))
      .toRotationMatrix();
}

}  // namespace detail

// Deterministic geometric settling: each object is dropped vertically at a
// sampled (x, y, rotation) and rests on the bin floor, or on the highest
// object its footprint overlaps when its center is over that object's
// footprint (stable support). Other overlaps and out-of-bin placements are
// rejected and re-sampled, up to max_attempts_per_object. Scenes where an
// object could not be placed are returned with fewer objects and the
// incomplete flag set.
inline SceneDescription sample_scene(uint64_t seed, const std::vector<ShapePrimitive>& pool,
                                     const SampleParams& params, const BinSpec& bin,
                                     const CameraModel& camera) {
  if (pool.empty()) throw ConfigError("sample_scene: empty object pool");
  if (params.count_min < 1 || params.count_max > 64 || params.count_min > params.count_max) {
    throw ConfigError("sample_scene: count range must lie within [1, 64]");
  }

  SceneDescription scene;
  scene.bin = bin;
  scene.camera = camera;
  scene.seed = seed;

  Rng rng(mix_seed(seed, 0x5ce7e5a3ULL));
  int count = rng.uniform_int(params.count_min, params.count_max);
  Aabb interior = bin.interior_aabb();

  std::vector<Aabb> placed_aabbs;
  for (int obj_i = 0; obj_i < count; ++obj_i) {
    const ShapePrimitive& shape = pool[rng.uniform_int(0, static_cast<int>(pool.size()) - 1)];
    bool placed = false;
    for (int attempt = 0; attempt < params.max_attempts_per_object && !placed; ++attempt) {
      Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
      pose.linear() = detail::sample_rotation(rng, shape, params.max_tilt_rad);
      // AABB at the origin tells us the footprint and the bottom offset.
      Aabb local = shape_aabb(shape, pose);
      Eigen::Vector3d half_xy(0.5 * (local.max.x() - local.min.x()),
                              0.5 * (local.max.y() - local.min.y()), 0.0);
      double free_x = 0.5 * bin.interior_x - half_xy.x();
      double free_y = 0.5 * bin.interior_y - half_xy.y();
      if (free_x < 0.0 || free_y < 0.0) continue;  // shape wider than the bin

      double x = bin.center.x() + rng.uniform(-free_x, free_x);
      double y = bin.center.y() + rng.uniform(-free_y, free_y);
      Eigen::Vector3d footprint_center = local.center();
      Aabb dropped;
      dropped.min = local.min + Eigen::Vector3d(x - footprint_center.x(), y - footprint_center.y(), 0);
      dropped.max = local.max + Eigen::Vector3d(x - footprint_center.x(), y - footprint_center.y(), 0);

      // Support: highest horizontally-overlapped object, if stably supported.
      double rest_z = bin.floor_z();
      int support = -1;
      for (size_t j = 0; j < placed_aabbs.size(); ++j) {
        if (dropped.overlaps_xy(placed_aabbs[j]) && placed_aabbs[j].max.z() > rest_z) {
          rest_z = placed_aabbs[j].max.z();
          support = static_cast<int>(j);
        }
      }
      if (support >= 0 && !placed_aabbs[support].contains_xy(x, y)) continue;
      double top_z = rest_z + (local.max.z() - local.min.z());
      if (top_z > bin.floor_z() + bin.wall_height) continue;  // stack too tall

      pose.translation() =
          Eigen::Vector3d(x - footprint_center.x(), y - footprint_center.y(),
                          rest_z - local.min.z());
      SceneObject obj;
      obj.shape = shape;
      obj.pose = pose;
      obj.label = static_cast<uint16_t>(scene.objects.size() + 1);
      scene.objects.push_back(obj);
      placed_aabbs.push_back(shape_aabb(shape, pose));
      placed = true;
    }
    if (!placed) scene.incomplete = true;
  }
  return scene;
}

}  // namespace grasp
