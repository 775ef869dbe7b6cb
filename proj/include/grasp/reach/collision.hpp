#pragma once

#include <optional>
#include <vector>

#include "grasp/reach/robot.hpp"
#include "grasp/scene/primitives.hpp"
#include "grasp/scene/scene.hpp"

namespace grasp {

// A collision primitive in the robot base frame. owner_label ties scene
// objects to their segmentation label (-1 for static geometry) so the
// target object of a grasp can be excluded from its own checks.
struct WorldPrimitive {
  ShapePrimitive shape;
  Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
  int owner_label = -1;
};

struct CollisionWorld {
  std::vector<WorldPrimitive> primitives;

  void add_static(const ShapePrimitive& shape, const Eigen::Isometry3d& pose) {
    primitives.push_back({shape, pose, -1});
  }
};

// Bin walls and floor slab plus one primitive per object. Meshes enter as
// their world AABB.
inline CollisionWorld build_collision_world(const SceneDescription& scene,
                                            double floor_extent = 2.0) {
  CollisionWorld world;
  const BinSpec& bin = scene.bin;
  const double t = bin.wall_thickness;
  const double h = bin.wall_height;
  const double ix = bin.interior_x;
  const double iy = bin.interior_y;
  const Eigen::Vector3d c = bin.center;

  auto add_box = [&world](const Eigen::Vector3d& extents, const Eigen::Vector3d& center) {
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    pose.translation() = center;
    world.add_static(Box{extents}, pose);
  };

  // floor slab (top at the bin floor surface)
  add_box({floor_extent, floor_extent, 0.02},
          {c.x(), c.y(), bin.floor_z() - 0.01});
  // walls
  add_box({t, iy + 2 * t, h}, {c.x() - 0.5 * (ix + t), c.y(), bin.floor_z() + 0.5 * h});
  add_box({t, iy + 2 * t, h}, {c.x() + 0.5 * (ix + t), c.y(), bin.floor_z() + 0.5 * h});
  add_box({ix, t, h}, {c.x(), c.y() - 0.5 * (iy + t), bin.floor_z() + 0.5 * h});
  add_box({ix, t, h}, {c.x(), c.y() + 0.5 * (iy + t), bin.floor_z() + 0.5 * h});

  for (const auto& obj : scene.objects) {
    WorldPrimitive prim;
    prim.owner_label = obj.label;
    if (std::holds_alternative<TriMesh>(obj.shape)) {
      Aabb bb = shape_aabb(obj.shape, obj.pose);
      prim.shape = Box{bb.max - bb.min};
      prim.pose = Eigen::Isometry3d(Eigen::Translation3d(bb.center()));
    } else {
      prim.shape = obj.shape;
      prim.pose = obj.pose;
    }
    world.primitives.push_back(std::move(prim));
  }
  return world;
}

namespace detail {

// Distance from a point to a posed convex primitive (0 inside).
inline double point_primitive_distance(const Eigen::Vector3d& p, const WorldPrimitive& prim) {
  Eigen::Vector3d q = prim.pose.inverse() * p;
  if (const Box* box = std::get_if<Box>(&prim.shape)) {
    Eigen::Vector3d h = 0.5 * box->extents;
    Eigen::Vector3d d = (q.cwiseAbs() - h).cwiseMax(0.0);
    return d.norm();
  }
  if (const Cylinder* cyl = std::get_if<Cylinder>(&prim.shape)) {
    double dr = std::max(0.0, q.head<2>().norm() - cyl->radius);
    double dz = std::max(0.0, std::abs(q.z()) - 0.5 * cyl->height);
    return std::sqrt(dr * dr + dz * dz);
  }
  if (const Sphere* sph = std::get_if<Sphere>(&prim.shape)) {
    return std::max(0.0, q.norm() - sph->radius);
  }
  return 0.0;  // meshes are converted to boxes before reaching here
}

// Distance from a segment to a convex primitive. The point distance is
// convex along the segment, so a ternary search finds the global minimum.
inline double segment_primitive_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                         const WorldPrimitive& prim) {
  auto eval = [&](double t) { return point_primitive_distance(a + t * (b - a), prim); };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (eval(m1) <= eval(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min({eval(lo), eval(0.0), eval(1.0)});
}

// Closest-distance between two segments (Ericson, Real-Time Collision
// Detection 5.1.9).
inline double segment_segment_distance(const Eigen::Vector3d& p1, const Eigen::Vector3d& q1,
                                       const Eigen::Vector3d& p2, const Eigen::Vector3d& q2) {
  Eigen::Vector3d d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  constexpr double eps = 1e-12;
  if (a <= eps && e <= eps) {
    return r.norm();
  }
  if (a <= eps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    double c = d1.dot(r);
    if (e <= eps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      double b = d1.dot(d2);
      double denom = a * e - b * b;
      if (denom > eps) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p1 + d1 * s) - (p2 + d2 * t)).norm();
}

inline double primitive_bounding_radius(const WorldPrimitive& prim) {
  if (const Box* box = std::get_if<Box>(&prim.shape)) return 0.5 * box->extents.norm();
  if (const Cylinder* cyl = std::get_if<Cylinder>(&prim.shape)) {
    return std::hypot(cyl->radius, 0.5 * cyl->height);
  }
  return std::get<Sphere>(prim.shape).radius;
}

}  // namespace detail

struct CollisionResult {
  bool colliding = false;
  // (link, primitive index) for world contacts; (link, link) with
  // self_collision set for link pairs.
  int first = -1;
  int second = -1;
  bool self_collision = false;
};

// Tests every link capsule (and the hand body) against the world and
// non-adjacent link pairs against each other. Primitives owned by
// exclude_label are skipped. A small inflation keeps the test conservative
// against numerical error in the distance search.
inline CollisionResult check_collision(const RobotModel& model, const CollisionWorld& world,
                                       const JointVector& joints, int exclude_label = -2,
                                       double inflation = 1e-6) {
  FrameChain frames = fk_frames(model, joints);

  struct PlacedCapsule {
    Eigen::Vector3d a, b;
    double radius;
    int link;
  };
  std::vector<PlacedCapsule> capsules;
  for (int link = 0; link <= kNumJoints; ++link) {
    for (const Capsule& cap : model.link_capsules[link]) {
      capsules.push_back({frames[link] * cap.p0, frames[link] * cap.p1, cap.radius, link});
    }
  }

  CollisionResult result;
  for (const auto& cap : capsules) {
    Eigen::Vector3d mid = 0.5 * (cap.a + cap.b);
    double cap_radius = cap.radius + 0.5 * (cap.b - cap.a).norm();
    for (size_t pi = 0; pi < world.primitives.size(); ++pi) {
      const WorldPrimitive& prim = world.primitives[pi];
      if (prim.owner_label >= 0 && prim.owner_label == exclude_label) continue;
      // bounding-sphere reject
      double coarse = (mid - prim.pose.translation()).norm() -
                      detail::primitive_bounding_radius(prim) - cap_radius;
      if (coarse > inflation) continue;
      double d = detail::segment_primitive_distance(cap.a, cap.b, prim);
      if (d <= cap.radius + inflation) {
        result.colliding = true;
        result.first = cap.link;
        result.second = static_cast<int>(pi);
        return result;
      }
    }
  }

  // Self-collision between non-adjacent links. Links are adjacent when no
  // capsule-bearing link lies between them in the chain (capsules need not
  // exist on every frame).
  std::vector<char> bearing(kNumJoints + 1, 0);
  for (const auto& cap : capsules) bearing[cap.link] = 1;
  auto adjacent = [&bearing](int li, int lj) {
    if (li > lj) std::swap(li, lj);
    for (int k = li + 1; k < lj; ++k) {
      if (bearing[k]) return false;
    }
    return true;
  };
  for (size_t i = 0; i < capsules.size(); ++i) {
    for (size_t j = i + 1; j < capsules.size(); ++j) {
      if (adjacent(capsules[i].link, capsules[j].link)) continue;
      double d = detail::segment_segment_distance(capsules[i].a, capsules[i].b, capsules[j].a,
                                                  capsules[j].b);
      if (d <= capsules[i].radius + capsules[j].radius + inflation) {
        result.colliding = true;
        result.first = capsules[i].link;
        result.second = capsules[j].link;
        result.self_collision = true;
        return result;
      }
    }
  }
  return result;
}

}  // namespace grasp
