#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <vector>

#include "grasp/core/knn.hpp"
#include "grasp/core/plane_fit.hpp"
#include "grasp/core/types.hpp"

namespace grasp {

struct RegionGrowParams {
  int k = 30;
  double angle_threshold = 10.0 * M_PI / 180.0;
  double curvature_threshold = 0.05;
  int min_segment_size = 255;
  // Compare neighbor normals against the region's initial seed instead of
  // the expanding point (the cited algorithm's standard form uses the
  // expanding point).
  bool compare_to_region_seed = false;
};

// A near-planar smooth surface patch. local_frame maps dominant_normal
// onto +z (rows are the two in-plane axes and the normal).
struct SurfaceSegment {
  std::vector<int> point_indices;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  Eigen::Vector3d dominant_normal = Eigen::Vector3d::UnitZ();
  Eigen::Matrix3d local_frame = Eigen::Matrix3d::Identity();
};

inline Eigen::Matrix3d frame_from_normal(const Eigen::Vector3d& n) {
  Eigen::Vector3d ref =
      std::abs(n.z()) < 0.9 ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitX();
  Eigen::Vector3d t1 = ref.cross(n).normalized();
  Eigen::Vector3d t2 = n.cross(t1);
  Eigen::Matrix3d frame;
  frame.row(0) = t1;
  frame.row(1) = t2;
  frame.row(2) = n;
  return frame;
}

// Greedy region growing over a cloud with estimated normals and curvatures.
// Seeds are taken in ascending curvature order; a neighbor joins when its
// normal stays within angle_threshold of the comparison seed's normal, and
// itself seeds further growth when its curvature is below
// curvature_threshold. Regions below min_segment_size are dropped.
inline std::vector<SurfaceSegment> region_grow(const PointCloud& cloud,
                                               const RegionGrowParams& params) {
  if (!cloud.has_normals() || cloud.curvatures.size() != cloud.size()) {
    throw std::invalid_argument("region_grow: cloud must carry normals and curvatures");
  }

  const int n = static_cast<int>(cloud.size());
  KdTree tree(cloud.points);
  std::vector<std::vector<int>> neighbors(n);
  for (int i = 0; i < n; ++i) {
    if (cloud.normal_valid(i)) neighbors[i] = tree.knn(cloud.points[i], params.k);
  }

  std::vector<int> seed_order;
  seed_order.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (cloud.normal_valid(i)) seed_order.push_back(i);
  }
  std::stable_sort(seed_order.begin(), seed_order.end(), [&](int a, int b) {
    return cloud.curvatures[a] < cloud.curvatures[b] ||
           (cloud.curvatures[a] == cloud.curvatures[b] && a < b);
  });

  const double cos_thresh = std::cos(params.angle_threshold);
  std::vector<char> assigned(n, 0);
  std::vector<SurfaceSegment> segments;

  for (int seed : seed_order) {
    if (assigned[seed]) continue;
    std::vector<int> region{seed};
    assigned[seed] = 1;
    std::deque<int> frontier{seed};
    const Eigen::Vector3d region_seed_normal = cloud.normals[seed];

    while (!frontier.empty()) {
      int current = frontier.front();
      frontier.pop_front();
      const Eigen::Vector3d& ref_normal =
          params.compare_to_region_seed ? region_seed_normal : cloud.normals[current];
      for (int nb : neighbors[current]) {
        if (assigned[nb] || !cloud.normal_valid(nb)) continue;
        if (std::abs(ref_normal.dot(cloud.normals[nb])) < cos_thresh) continue;
        assigned[nb] = 1;
        region.push_back(nb);
        if (cloud.curvatures[nb] < params.curvature_threshold) frontier.push_back(nb);
      }
    }

    if (static_cast<int>(region.size()) < params.min_segment_size) continue;

    SurfaceSegment segment;
    segment.point_indices = std::move(region);
    for (int i : segment.point_indices) segment.centroid += cloud.points[i];
    segment.centroid /= static_cast<double>(segment.point_indices.size());
    try {
      PlaneFit fit = fit_plane(cloud.points, segment.point_indices);
      segment.dominant_normal = fit.normal;
    } catch (const DegenerateFitError&) {
      segment.dominant_normal = cloud.normals[segment.point_indices.front()];
    }
    // sensor-facing, like the per-point convention
    if (segment.dominant_normal.dot(segment.centroid) > 0.0) {
      segment.dominant_normal = -segment.dominant_normal;
    }
    segment.local_frame = frame_from_normal(segment.dominant_normal);
    segments.push_back(std::move(segment));
  }
  return segments;
}

}  // namespace grasp
