#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace grasp {

// Thrown when raster/cloud dimensions disagree.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a fit has no unique solution (too few or collinear points).
struct DegenerateFitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  bool valid() const {
    return fx > 0.0 && fy > 0.0 && width > 0 && height > 0 && cx >= 0.0 &&
           cx < width && cy >= 0.0 && cy < height;
  }
};

// Per-pixel range in meters, row-major. 0.0 marks an invalid pixel.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;
  CameraIntrinsics intrinsics;

  static constexpr float kInvalid = 0.0f;

  DepthImage() = default;
  DepthImage(const CameraIntrinsics& intr, float fill = kInvalid)
      : width(intr.width),
        height(intr.height),
        data(static_cast<size_t>(intr.width) * intr.height, fill),
        intrinsics(intr) {}

  float at(int row, int col) const { return data[static_cast<size_t>(row) * width + col]; }
  float& at(int row, int col) { return data[static_cast<size_t>(row) * width + col]; }
  bool valid_at(int row, int col) const {
    float d = at(row, col);
    return d > 0.0f && std::isfinite(d);
  }
};

// Per-pixel object labels; 0 is background (bin, floor).
struct SegmentationMask {
  int width = 0;
  int height = 0;
  std::vector<uint16_t> labels;

  SegmentationMask() = default;
  SegmentationMask(int w, int h, uint16_t fill = 0)
      : width(w), height(h), labels(static_cast<size_t>(w) * h, fill) {}

  uint16_t at(int row, int col) const { return labels[static_cast<size_t>(row) * width + col]; }
  uint16_t& at(int row, int col) { return labels[static_cast<size_t>(row) * width + col]; }
};

// Per-pixel score raster in [0, 1].
struct HeatMap {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  HeatMap() = default;
  HeatMap(int w, int h, float fill = 0.0f)
      : width(w), height(h), values(static_cast<size_t>(w) * h, fill) {}

  float at(int row, int col) const { return values[static_cast<size_t>(row) * width + col]; }
  float& at(int row, int col) { return values[static_cast<size_t>(row) * width + col]; }
};

// Back-projected 3D points in the camera frame. Normals, curvatures and
// pixel indices are either empty or sized like points. Normals follow the
// sensor-facing convention (n . p < 0 for a point p seen from the origin);
// points with a degenerate neighborhood get NaN normals.
struct PointCloud {
  std::vector<Eigen::Vector3d> points;
  std::vector<Eigen::Vector3d> normals;
  std::vector<double> curvatures;
  std::vector<Eigen::Vector2i> pixel_index;  // (row, col)

  size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_normals() const { return normals.size() == points.size() && !points.empty(); }
  bool has_pixels() const { return pixel_index.size() == points.size() && !points.empty(); }

  bool normal_valid(size_t i) const {
    return i < normals.size() && std::isfinite(normals[i].x()) &&
           std::isfinite(normals[i].y()) && std::isfinite(normals[i].z());
  }
};

// Plane n . x = offset with the accumulated point-to-plane distance of the
// points it was fitted to (sum of absolute distances, not squared).
struct PlaneFit {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;
  double residual = 0.0;

  double distance(const Eigen::Vector3d& p) const { return std::abs(normal.dot(p) - offset); }
  double signed_distance(const Eigen::Vector3d& p) const { return normal.dot(p) - offset; }
};

}  // namespace grasp
