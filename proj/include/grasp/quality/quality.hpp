#pragma once

#include <algorithm>
#include <vector>

#include "grasp/area/graspable_area.hpp"
#include "grasp/core/knn.hpp"
#include "grasp/core/plane_fit.hpp"
#include "grasp/core/types.hpp"

namespace grasp {

inline constexpr double kCupRadius = 0.009;  // meters

struct QualityParams {
  // Flatness term 0.9 * exp(-c_var * Var(n_s)). The printed form of the
  // metric rewards variance (0.9 * Var); that reading is kept behind the
  // flag for comparison runs since it inverts the flat-beats-curved
  // ordering the metric is meant to produce.
  double c_var = 50.0;
  bool literal_flatness = false;
};

// Cup-surface contact set for a candidate center: the segment's points
// within the cup radius, with their normals.
struct ContactPatch {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  std::vector<Eigen::Vector3d> points;
  std::vector<Eigen::Vector3d> normals;
};

// Scalar variance of the contact normals: sum of squared deviations from
// the mean normal over N-1.
inline double normal_variance(const std::vector<Eigen::Vector3d>& normals) {
  if (normals.size() < 2) return 0.0;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& n : normals) mean += n;
  mean /= static_cast<double>(normals.size());
  double accum = 0.0;
  for (const auto& n : normals) accum += (n - mean).squaredNorm();
  return accum / static_cast<double>(normals.size() - 1);
}

// Extracts the contact patch around p from its owning segment. The patch
// is the euclidean 9 mm ball restricted to segment membership.
inline ContactPatch contact_patch(const Eigen::Vector3d& p, const SurfaceSegment& segment,
                                  const PointCloud& cloud) {
  ContactPatch patch;
  patch.center = p;
  const double r2 = kCupRadius * kCupRadius;
  for (int i : segment.point_indices) {
    if ((cloud.points[i] - p).squaredNorm() <= r2) {
      patch.points.push_back(cloud.points[i]);
      patch.normals.push_back(cloud.normal_valid(i) ? cloud.normals[i]
                                                    : segment.dominant_normal);
    }
  }
  if (patch.points.size() < 3) {
    throw std::runtime_error("contact_patch: fewer than 3 contact points (inconsistent area)");
  }
  return patch;
}

// Seal-surface score: flatness from the variance of the contact normals
// plus smoothness from the residual of the patch's least-squares plane
// (sum of point distances, scaled by 5).
inline double seal_score(const ContactPatch& patch, const QualityParams& params = {}) {
  double var = normal_variance(patch.normals);
  PlaneFit fit = fit_plane(patch.points);
  double flatness =
      params.literal_flatness ? 0.9 * var : 0.9 * std::exp(-params.c_var * var);
  double smoothness = 0.1 * std::exp(-5.0 * fit.residual);
  return flatness + smoothness;
}

// Normalized centrality over one surface's graspable cells: 1 at the cell
// nearest the area centroid, 0 at the farthest. A single cell (or an area
// with all distances equal) scores 1 everywhere.
inline std::vector<double> center_score(const std::vector<Eigen::Vector3d>& cell_points) {
  if (cell_points.empty()) {
    throw std::invalid_argument("center_score: empty graspable area");
  }
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : cell_points) centroid += p;
  centroid /= static_cast<double>(cell_points.size());

  std::vector<double> dist(cell_points.size());
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (size_t i = 0; i < cell_points.size(); ++i) {
    dist[i] = (cell_points[i] - centroid).norm();
    dmin = std::min(dmin, dist[i]);
    dmax = std::max(dmax, dist[i]);
  }
  std::vector<double> score(cell_points.size(), 1.0);
  if (dmax - dmin > 1e-12) {
    for (size_t i = 0; i < cell_points.size(); ++i) {
      score[i] = 1.0 - (dist[i] - dmin) / (dmax - dmin);
    }
  }
  return score;
}

}  // namespace grasp
