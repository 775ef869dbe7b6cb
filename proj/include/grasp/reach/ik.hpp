#pragma once

#include <optional>

#include <Eigen/Dense>

#include "grasp/core/rng.hpp"
#include "grasp/reach/collision.hpp"
#include "grasp/reach/robot.hpp"

namespace grasp {

// 6D suction grasp target: cup tip at p, approach along -n (n faces the
// sensor), roll theta about the approach axis.
struct GoalPose {
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Vector3d n = Eigen::Vector3d::UnitZ();
  double theta = 0.0;
};

enum class IkStatus { kSolved, kUnreachable, kLimitViolation, kCollision };

struct IkResult {
  IkStatus status = IkStatus::kUnreachable;
  JointVector joints = JointVector::Zero();
  double position_error = std::numeric_limits<double>::infinity();
  double orientation_error = std::numeric_limits<double>::infinity();
};

struct IkParams {
  double lambda = 0.1;
  int max_iterations = 200;
  int restarts = 8;
  double position_tolerance = 1e-3;          // 1 mm
  double orientation_tolerance = 0.5 * M_PI / 180.0;
  double max_step = 0.5;                     // per-joint step clamp, rad
  uint64_t seed = 0x7ea5eedULL;
};

// Frozen tool-orientation convention: the tool z axis points along -n;
// the remaining axes come from crossing with world z (world x when n is
// within ~2.5 deg of vertical), then rolling by theta about tool z.
inline Eigen::Matrix3d goal_rotation(const Eigen::Vector3d& n, double theta) {
  Eigen::Vector3d zt = -n.normalized();
  Eigen::Vector3d ref =
      std::abs(zt.z()) > 0.999 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitZ();
  Eigen::Vector3d xt = ref.cross(zt).normalized();
  Eigen::Vector3d yt = zt.cross(xt);
  Eigen::Matrix3d base;
  base.col(0) = xt;
  base.col(1) = yt;
  base.col(2) = zt;
  return base * Eigen::AngleAxisd(theta, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

namespace detail {

inline Eigen::Vector3d rotation_error(const Eigen::Matrix3d& current,
                                      const Eigen::Matrix3d& goal) {
  Eigen::AngleAxisd aa(goal * current.transpose());
  return aa.angle() * aa.axis();
}

inline double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a < 0) a += 2.0 * M_PI;
  return a - M_PI;
}

struct DlsOutcome {
  JointVector joints = JointVector::Zero();
  double pos_err = std::numeric_limits<double>::infinity();
  double ori_err = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Damped-least-squares iteration toward (goal_p, goal_R) from q0.
inline DlsOutcome dls_iterate(const RobotModel& model, const Eigen::Vector3d& goal_p,
                              const Eigen::Matrix3d& goal_R, JointVector q,
                              const IkParams& params) {
  DlsOutcome out;
  double prev_err = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int it = 0; it < params.max_iterations; ++it) {
    FrameChain frames = fk_frames(model, q);
    const Eigen::Isometry3d& tool = frames[kNumJoints + 1];
    Eigen::Vector3d ep = goal_p - tool.translation();
    Eigen::Vector3d eo = rotation_error(tool.linear(), goal_R);
    out.pos_err = ep.norm();
    out.ori_err = eo.norm();
    if (out.pos_err < params.position_tolerance &&
        out.ori_err < params.orientation_tolerance) {
      out.converged = true;
      break;
    }

    double err = out.pos_err + 0.25 * out.ori_err;
    if (err >= prev_err - 1e-14) {
      if (++stall > 12) break;  // plateaued short of the tolerance
    } else {
      stall = 0;
    }
    prev_err = err;

    Eigen::Matrix<double, 6, 1> e;
    e << ep, eo;
    Eigen::Matrix<double, 6, kNumJoints> J = jacobian(frames);
    Eigen::Matrix<double, 6, 6> JJt = J * J.transpose();
    JJt.diagonal().array() += params.lambda * params.lambda;
    JointVector dq = J.transpose() * JJt.ldlt().solve(e);
    dq = dq.cwiseMax(-params.max_step).cwiseMin(params.max_step);
    q += dq;
  }
  for (int i = 0; i < kNumJoints; ++i) out.joints[i] = wrap_angle(q[i]);
  // wrapping preserves the pose of revolute joints; recheck the errors
  if (out.converged) {
    Eigen::Isometry3d tool = forward_kinematics(model, out.joints);
    out.pos_err = (goal_p - tool.translation()).norm();
    out.ori_err = rotation_error(tool.linear(), goal_R).norm();
  }
  return out;
}

}  // namespace detail

// Numerical inverse kinematics with seeded random restarts, followed by a
// joint-limit and collision classification. Outcomes are statuses, not
// errors. stream_key decorrelates restart streams between call sites
// (pixels and theta samples) so batched evaluation is deterministic.
inline IkResult ik_solve(const RobotModel& model, const CollisionWorld& world,
                         const GoalPose& goal, const IkParams& params = {},
                         int exclude_label = -2, uint64_t stream_key = 0) {
  IkResult best;
  if (!std::isfinite(goal.p.x()) || !std::isfinite(goal.p.y()) || !std::isfinite(goal.p.z())) {
    throw std::invalid_argument("ik_solve: goal position must be finite");
  }
  if (goal.p.norm() > model.max_reach()) {
    return best;  // beyond any chain extension
  }

  const Eigen::Matrix3d goal_R = goal_rotation(goal.n, goal.theta);
  Rng rng(mix_seed(params.seed, stream_key));

  bool saw_limit_violation = false;
  bool saw_collision = false;
  for (int attempt = 0; attempt <= params.restarts; ++attempt) {
    JointVector q0;
    if (attempt == 0) {
      q0 = model.home_joints;
    } else {
      for (int i = 0; i < kNumJoints; ++i) {
        q0[i] = rng.uniform(model.limits_lo[i], model.limits_hi[i]);
      }
    }
    detail::DlsOutcome outcome = detail::dls_iterate(model, goal.p, goal_R, q0, params);
    if (!outcome.converged) continue;
    if (!model.within_limits(outcome.joints)) {
      saw_limit_violation = true;
      continue;
    }
    if (check_collision(model, world, outcome.joints, exclude_label).colliding) {
      saw_collision = true;
      continue;
    }
    best.status = IkStatus::kSolved;
    best.joints = outcome.joints;
    best.position_error = outcome.pos_err;
    best.orientation_error = outcome.ori_err;
    return best;
  }
  if (saw_collision) {
    best.status = IkStatus::kCollision;
  } else if (saw_limit_violation) {
    best.status = IkStatus::kLimitViolation;
  }
  return best;
}

inline constexpr int kThetaSamples = 72;  // 0..355 deg in 5 deg steps

// Fraction of roll angles with a collision-free IK solution, quantized to
// k / 72. Each theta is solved independently with a stream keyed by
// (pixel_key, theta index) so results match a per-theta tally exactly.
inline double reachability_score(const RobotModel& model, const CollisionWorld& world,
                                 const Eigen::Vector3d& p, const Eigen::Vector3d& n,
                                 const IkParams& params = {}, int exclude_label = -2,
                                 uint64_t pixel_key = 0) {
  int solved = 0;
  for (int ti = 0; ti < kThetaSamples; ++ti) {
    GoalPose goal{p, n, ti * 5.0 * M_PI / 180.0};
    IkResult result =
        ik_solve(model, world, goal, params, exclude_label, mix_seed(pixel_key, ti));
    if (result.status == IkStatus::kSolved) ++solved;
  }
  return static_cast<double>(solved) / kThetaSamples;
}

}  // namespace grasp
