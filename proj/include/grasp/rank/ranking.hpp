#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "grasp/core/types.hpp"
#include "grasp/reach/ik.hpp"

namespace grasp {

enum class Policy { kQualityOnly = 1, kQualityAndReachability = 2 };

struct PolicyConfig {
  Policy policy = Policy::kQualityAndReachability;
  double th_g = 0.5;
  double th_r = 0.3;
  int connectivity = 4;  // 4 or 8
};

struct GraspCandidate {
  Eigen::Vector2i pixel = Eigen::Vector2i::Zero();  // (row, col)
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Vector3d n = Eigen::Vector3d::UnitZ();
  double quality = 0.0;
  double reachability = 0.0;
  int cluster_id = 0;
  int global_rank = 0;
};

// Policy 1 keeps pixels with quality strictly above th_g; Policy 2
// additionally requires reachability strictly above th_r.
inline std::vector<uint8_t> threshold(const HeatMap& quality, const HeatMap* reachability,
                                      const PolicyConfig& cfg) {
  if (cfg.policy == Policy::kQualityAndReachability && reachability == nullptr) {
    throw std::invalid_argument("threshold: policy 2 needs a reachability map");
  }
  if (reachability &&
      (reachability->width != quality.width || reachability->height != quality.height)) {
    throw DimensionError("threshold: heatmap dimensions differ");
  }
  std::vector<uint8_t> mask(quality.values.size(), 0);
  for (size_t i = 0; i < quality.values.size(); ++i) {
    bool keep = quality.values[i] > cfg.th_g;
    if (keep && cfg.policy == Policy::kQualityAndReachability) {
      keep = reachability->values[i] > cfg.th_r;
    }
    mask[i] = keep ? 1 : 0;
  }
  return mask;
}

// Connected-component labeling by breadth-first flood fill. Labels are
// assigned 1..K in row-major first-encounter order; 4-connectivity matches
// the cross-shaped structuring element the reference labeling tool uses by
// default.
inline std::pair<std::vector<int32_t>, int> label_components(const std::vector<uint8_t>& mask,
                                                             int width, int height,
                                                             int connectivity = 4) {
  if (connectivity != 4 && connectivity != 8) {
    throw std::invalid_argument("label_components: connectivity must be 4 or 8");
  }
  std::vector<int32_t> labels(mask.size(), 0);
  int next = 0;
  std::vector<int> stack;
  const int dr4[] = {-1, 1, 0, 0};
  const int dc4[] = {0, 0, -1, 1};
  const int dr8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
  const int dc8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
  const int* dr = connectivity == 4 ? dr4 : dr8;
  const int* dc = connectivity == 4 ? dc4 : dc8;
  const int nn = connectivity;

  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      size_t id = static_cast<size_t>(r) * width + c;
      if (!mask[id] || labels[id]) continue;
      ++next;
      labels[id] = next;
      stack.assign(1, static_cast<int>(id));
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        int cr = cur / width, cc = cur % width;
        for (int k = 0; k < nn; ++k) {
          int rr = cr + dr[k], cci = cc + dc[k];
          if (rr < 0 || rr >= height || cci < 0 || cci >= width) continue;
          size_t nid = static_cast<size_t>(rr) * width + cci;
          if (mask[nid] && !labels[nid]) {
            labels[nid] = next;
            stack.push_back(static_cast<int>(nid));
          }
        }
      }
    }
  }
  return {std::move(labels), next};
}

// Per-pixel 3D lookup used to fill candidate geometry.
struct PixelGeometry {
  int width = 0;
  int height = 0;
  std::vector<Eigen::Vector3d> points;
  std::vector<Eigen::Vector3d> normals;
  std::vector<uint8_t> valid;

  PixelGeometry() = default;
  PixelGeometry(int w, int h)
      : width(w),
        height(h),
        points(static_cast<size_t>(w) * h, Eigen::Vector3d::Zero()),
        normals(static_cast<size_t>(w) * h, Eigen::Vector3d::UnitZ()),
        valid(static_cast<size_t>(w) * h, 0) {}
};

// One candidate per cluster (argmax quality; ties broken by higher
// reachability then row-major pixel order), globally sorted by descending
// quality with the same tie-break.
inline std::vector<GraspCandidate> rank(const std::vector<int32_t>& labels, int cluster_count,
                                        const HeatMap& quality, const HeatMap* reachability,
                                        const PixelGeometry& geometry) {
  struct Best {
    double quality = -1.0;
    double reach = -1.0;
    long pixel = -1;
  };
  std::vector<Best> best(cluster_count);
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] <= 0) continue;
    Best& b = best[labels[i] - 1];
    double q = quality.values[i];
    double r = reachability ? reachability->values[i] : 0.0;
    bool wins = q > b.quality ||
                (q == b.quality && (r > b.reach || (r == b.reach && b.pixel < 0)));
    if (wins) b = {q, r, static_cast<long>(i)};
  }

  std::vector<GraspCandidate> candidates;
  candidates.reserve(cluster_count);
  for (int k = 0; k < cluster_count; ++k) {
    if (best[k].pixel < 0) continue;
    GraspCandidate cand;
    long i = best[k].pixel;
    cand.pixel = Eigen::Vector2i(static_cast<int>(i / quality.width),
                                 static_cast<int>(i % quality.width));
    cand.quality = best[k].quality;
    cand.reachability = best[k].reach;
    cand.cluster_id = k + 1;
    if (geometry.width == quality.width && geometry.height == quality.height &&
        geometry.valid[i]) {
      cand.p = geometry.points[i];
      cand.n = geometry.normals[i];
    }
    candidates.push_back(cand);
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const GraspCandidate& a, const GraspCandidate& b) {
                     if (a.quality != b.quality) return a.quality > b.quality;
                     if (a.reachability != b.reachability) return a.reachability > b.reachability;
                     return a.pixel.x() * 1000000L + a.pixel.y() <
                            b.pixel.x() * 1000000L + b.pixel.y();
                   });
  for (size_t i = 0; i < candidates.size(); ++i) {
    candidates[i].global_rank = static_cast<int>(i);
  }
  return candidates;
}

// Approach goals for one candidate: position offset 1 cm along n (toward
// the sensor), roll sampled 0..180 deg in 5 deg steps (37 poses).
inline std::vector<GoalPose> make_goal_poses(const GraspCandidate& candidate) {
  if (std::abs(candidate.n.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("make_goal_poses: normal must be unit length");
  }
  std::vector<GoalPose> poses;
  poses.reserve(37);
  for (int deg = 0; deg <= 180; deg += 5) {
    GoalPose pose;
    pose.p = candidate.p + 0.01 * candidate.n;
    pose.n = candidate.n;
    pose.theta = deg * M_PI / 180.0;
    poses.push_back(pose);
  }
  return poses;
}

}  // namespace grasp
