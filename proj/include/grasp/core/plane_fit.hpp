#pragma once

#include <span>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "grasp/core/types.hpp"

namespace grasp {

// Total-least-squares plane through a point set: the normal is the
// eigenvector of the smallest covariance eigenvalue. The stored residual
// is the sum of absolute point-to-plane distances.
inline PlaneFit fit_plane(std::span<const Eigen::Vector3d> points) {
  if (points.size() < 3) {
    throw DegenerateFitError("fit_plane: need at least 3 points");
  }
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    Eigen::Vector3d d = p - centroid;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(points.size());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Eigen::Vector3d& evals = eig.eigenvalues();  // ascending
  // Collinear (or coincident) sets have two near-zero eigenvalues.
  double scale = std::max(evals[2], 1e-300);
  if (evals[1] <= 1e-10 * scale) {
    throw DegenerateFitError("fit_plane: points are collinear or coincident");
  }

  PlaneFit fit;
  fit.normal = eig.eigenvectors().col(0).normalized();
  fit.offset = fit.normal.dot(centroid);
  fit.residual = 0.0;
  for (const auto& p : points) fit.residual += fit.distance(p);
  return fit;
}

inline PlaneFit fit_plane(const std::vector<Eigen::Vector3d>& points) {
  return fit_plane(std::span<const Eigen::Vector3d>(points.data(), points.size()));
}

// Fit restricted to a subset of a cloud.
inline PlaneFit fit_plane(const std::vector<Eigen::Vector3d>& points,
                          const std::vector<int>& indices) {
  std::vector<Eigen::Vector3d> subset;
  subset.reserve(indices.size());
  for (int i : indices) subset.push_back(points[i]);
  return fit_plane(subset);
}

}  // namespace grasp
