#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "grasp/core/types.hpp"

namespace grasp {

inline constexpr int kNumJoints = 6;
using JointVector = Eigen::Matrix<double, kNumJoints, 1>;

// Standard Denavit-Hartenberg row: RotZ(theta + theta_offset) TransZ(d)
// TransX(a) RotX(alpha).
struct DhRow {
  double a = 0.0;
  double alpha = 0.0;
  double d = 0.0;
  double theta_offset = 0.0;
};

struct Capsule {
  Eigen::Vector3d p0 = Eigen::Vector3d::Zero();
  Eigen::Vector3d p1 = Eigen::Vector3d::Zero();
  double radius = 0.05;
};

struct RobotModel {
  std::array<DhRow, kNumJoints> dh;
  JointVector limits_lo = JointVector::Constant(-M_PI);
  JointVector limits_hi = JointVector::Constant(M_PI);
  JointVector home_joints = JointVector::Zero();
  Eigen::Isometry3d tool_transform = Eigen::Isometry3d::Identity();
  // link_capsules[i] are attached to frame i (0 = base frame); index 6
  // includes the hand body.
  std::array<std::vector<Capsule>, kNumJoints + 1> link_capsules;

  bool within_limits(const JointVector& q) const {
    return (q.array() >= limits_lo.array() - 1e-12).all() &&
           (q.array() <= limits_hi.array() + 1e-12).all();
  }

  // Loose workspace bound used for quick unreachable rejection.
  double max_reach() const {
    double reach = 0.0;
    for (const auto& row : dh) reach += std::abs(row.a) + std::abs(row.d);
    return reach + tool_transform.translation().norm();
  }
};

inline Eigen::Isometry3d dh_transform(const DhRow& row, double theta) {
  double ct = std::cos(theta + row.theta_offset);
  double st = std::sin(theta + row.theta_offset);
  double ca = std::cos(row.alpha);
  double sa = std::sin(row.alpha);
  Eigen::Matrix4d m;
  m << ct, -st * ca, st * sa, row.a * ct,
       st, ct * ca, -ct * sa, row.a * st,
       0.0, sa, ca, row.d,
       0.0, 0.0, 0.0, 1.0;
  Eigen::Isometry3d t;
  t.matrix() = m;
  return t;
}

// Frames 0..6 plus the tool frame at index 7. Frame 0 is the base.
using FrameChain = std::array<Eigen::Isometry3d, kNumJoints + 2>;

inline FrameChain fk_frames(const RobotModel& model, const JointVector& joints) {
  FrameChain frames;
  frames[0] = Eigen::Isometry3d::Identity();
  for (int i = 0; i < kNumJoints; ++i) {
    frames[i + 1] = frames[i] * dh_transform(model.dh[i], joints[i]);
  }
  frames[kNumJoints + 1] = frames[kNumJoints] * model.tool_transform;
  return frames;
}

// End-effector (tool tip) pose in the base frame.
inline Eigen::Isometry3d forward_kinematics(const RobotModel& model, const JointVector& joints) {
  return fk_frames(model, joints)[kNumJoints + 1];
}

// Geometric Jacobian of the tool frame, 6x6 ([linear; angular] rows).
inline Eigen::Matrix<double, 6, kNumJoints> jacobian(const FrameChain& frames) {
  Eigen::Matrix<double, 6, kNumJoints> jac;
  const Eigen::Vector3d tip = frames[kNumJoints + 1].translation();
  for (int i = 0; i < kNumJoints; ++i) {
    Eigen::Vector3d axis = frames[i].linear().col(2);
    Eigen::Vector3d origin = frames[i].translation();
    jac.block<3, 1>(0, i) = axis.cross(tip - origin);
    jac.block<3, 1>(3, i) = axis;
  }
  return jac;
}

// Generic 6-DoF arm with a spherical wrist, reach about 0.96 m. Capsules
// cover the base column, both arm links, the wrist, and the hand body; the
// hand capsule stops 15 mm short of the cup tip so surface contact at the
// tip is not itself a collision.
inline RobotModel default_robot() {
  RobotModel m;
  m.dh[0] = {0.0, -M_PI / 2, 0.30, 0.0};
  m.dh[1] = {0.45, 0.0, 0.0, -M_PI / 2};
  m.dh[2] = {0.04, -M_PI / 2, 0.0, 0.0};
  m.dh[3] = {0.0, M_PI / 2, 0.45, 0.0};
  m.dh[4] = {0.0, -M_PI / 2, 0.0, 0.0};
  m.dh[5] = {0.0, 0.0, 0.10, 0.0};

  m.limits_lo << -2.967, -2.094, -2.967, -3.054, -2.094, -3.054;
  m.limits_hi << 2.967, 2.094, 2.967, 3.054, 2.094, 3.054;
  m.home_joints << 0.0, -0.3, 1.1, 0.0, 0.77, 0.0;

  m.tool_transform = Eigen::Isometry3d(Eigen::Translation3d(0.0, 0.0, 0.12));

  // base column
  m.link_capsules[0].push_back({{0, 0, 0.02}, {0, 0, 0.28}, 0.07});
  // upper arm: from joint-2 origin back to joint-1 origin, in frame 2
  m.link_capsules[2].push_back({{-0.45, 0, 0}, {0, 0, 0}, 0.055});
  // forearm: frame 4's origin back along the d4 offset, in frame 4
  m.link_capsules[4].push_back({{0, 0, -0.45}, {0, 0, 0}, 0.05});
  // wrist
  m.link_capsules[5].push_back({{0, 0, -0.04}, {0, 0, 0.04}, 0.045});
  // hand body: along tool z in frame 6, stopping above the cup tip
  m.link_capsules[6].push_back({{0, 0, 0.0}, {0, 0, 0.105}, 0.032});
  return m;
}

}  // namespace grasp
