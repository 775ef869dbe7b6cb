#pragma once

#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "grasp/core/knn.hpp"
#include "grasp/core/types.hpp"

namespace grasp {

// PCA normal estimation over the k nearest neighbors of each point.
// The normal is the smallest-eigenvalue eigenvector of the neighborhood
// covariance, flipped to face the sensor at the camera-frame origin
// (n . p < 0). Curvature is the usual eigenvalue ratio l0 / (l0+l1+l2).
// Degenerate neighborhoods (coincident points) yield NaN normals.
inline void estimate_normals(PointCloud& cloud, int k = 30) {
  if (k < 3) throw std::invalid_argument("estimate_normals: k must be >= 3");
  if (cloud.size() < static_cast<size_t>(k) + 1) {
    throw std::invalid_argument("estimate_normals: cloud smaller than k+1 points");
  }

  KdTree tree(cloud.points);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  cloud.normals.assign(cloud.size(), Eigen::Vector3d::Constant(nan));
  cloud.curvatures.assign(cloud.size(), nan);

  for (size_t i = 0; i < cloud.size(); ++i) {
    std::vector<int> nn = tree.knn(cloud.points[i], k);
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (int j : nn) mean += cloud.points[j];
    mean /= static_cast<double>(nn.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (int j : nn) {
      Eigen::Vector3d d = cloud.points[j] - mean;
      cov += d * d.transpose();
    }
    cov /= static_cast<double>(nn.size());

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const Eigen::Vector3d& evals = eig.eigenvalues();
    double total = evals.sum();
    if (!(total > 0.0)) continue;  // all neighbors coincident: flagged invalid

    Eigen::Vector3d n = eig.eigenvectors().col(0).normalized();
    // Orientation convention: normals face the sensor.
    if (n.dot(cloud.points[i]) > 0.0) n = -n;
    cloud.normals[i] = n;
    cloud.curvatures[i] = evals[0] / total;
  }
}

}  // namespace grasp
