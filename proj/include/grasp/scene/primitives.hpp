#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace grasp {

// Extents are full side lengths; the local origin is the shape center.
struct Box {
  Eigen::Vector3d extents = Eigen::Vector3d::Ones();
};

// Axis along local z, centered on the origin.
struct Cylinder {
  double radius = 0.05;
  double height = 0.10;
};

struct Sphere {
  double radius = 0.05;
};

struct TriMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Eigen::Vector3i> triangles;
};

using ShapePrimitive = std::variant<Box, Cylinder, Sphere, TriMesh>;

struct Aabb {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  bool overlaps(const Aabb& other) const {
    return (min.array() <= other.max.array()).all() &&
           (other.min.array() <= max.array()).all();
  }
  bool overlaps_xy(const Aabb& other) const {
    return min.x() <= other.max.x() && other.min.x() <= max.x() &&
           min.y() <= other.max.y() && other.min.y() <= max.y();
  }
  bool contains_xy(double x, double y) const {
    return x >= min.x() && x <= max.x() && y >= min.y() && y <= max.y();
  }
  Eigen::Vector3d center() const { return 0.5 * (min + max); }
};

// World-frame AABB of a transformed shape.
inline Aabb shape_aabb(const ShapePrimitive& shape, const Eigen::Isometry3d& pose) {
  Aabb out;
  const Eigen::Matrix3d R = pose.linear();
  const Eigen::Vector3d t = pose.translation();
  if (const Box* box = std::get_if<Box>(&shape)) {
    Eigen::Vector3d h = 0.5 * box->extents;
    Eigen::Vector3d ext = R.cwiseAbs() * h;
    out.min = t - ext;
    out.max = t + ext;
  } else if (const Cylinder* cyl = std::get_if<Cylinder>(&shape)) {
    Eigen::Vector3d axis = R.col(2);
    double hh = 0.5 * cyl->height;
    Eigen::Vector3d ext;
    for (int i = 0; i < 3; ++i) {
      double s = std::sqrt(std::max(0.0, 1.0 - axis[i] * axis[i]));
      ext[i] = hh * std::abs(axis[i]) + cyl->radius * s;
    }
    out.min = t - ext;
    out.max = t + ext;
  } else if (const Sphere* sph = std::get_if<Sphere>(&shape)) {
    Eigen::Vector3d ext = Eigen::Vector3d::Constant(sph->radius);
    out.min = t - ext;
    out.max = t + ext;
  } else {
    const TriMesh& mesh = std::get<TriMesh>(shape);
    out.min = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    out.max = -out.min;
    for (const auto& v : mesh.vertices) {
      Eigen::Vector3d w = pose * v;
      out.min = out.min.cwiseMin(w);
      out.max = out.max.cwiseMax(w);
    }
  }
  return out;
}

// Point containment in the world-posed shape (used by overlap and collision
// oracles). Meshes fall back to their AABB.
inline bool shape_contains(const ShapePrimitive& shape, const Eigen::Isometry3d& pose,
                           const Eigen::Vector3d& p) {
  Eigen::Vector3d q = pose.inverse() * p;
  if (const Box* box = std::get_if<Box>(&shape)) {
    Eigen::Vector3d h = 0.5 * box->extents;
    return (q.cwiseAbs().array() <= h.array()).all();
  }
  if (const Cylinder* cyl = std::get_if<Cylinder>(&shape)) {
    return std::abs(q.z()) <= 0.5 * cyl->height &&
           q.head<2>().squaredNorm() <= cyl->radius * cyl->radius;
  }
  if (const Sphere* sph = std::get_if<Sphere>(&shape)) {
    return q.squaredNorm() <= sph->radius * sph->radius;
  }
  Aabb bb = shape_aabb(shape, pose);
  return (p.array() >= bb.min.array()).all() && (p.array() <= bb.max.array()).all();
}

struct RayHit {
  double t = std::numeric_limits<double>::infinity();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();  // world frame, outward
};

namespace detail {

inline std::optional<RayHit> ray_box_local(const Eigen::Vector3d& o, const Eigen::Vector3d& d,
                                           const Eigen::Vector3d& half) {
  double t0 = 0.0, t1 = std::numeric_limits<double>::infinity();
  int axis0 = -1;
  double sign0 = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-15) {
      if (std::abs(o[i]) > half[i]) return std::nullopt;
      continue;
    }
    double inv = 1.0 / d[i];
    double ta = (-half[i] - o[i]) * inv;
    double tb = (half[i] - o[i]) * inv;
    if (ta > tb) std::swap(ta, tb);
    if (ta > t0) {
      t0 = ta;
      axis0 = i;
      sign0 = (d[i] > 0) ? -1.0 : 1.0;  // entry face
    }
    t1 = std::min(t1, tb);
    if (t0 > t1) return std::nullopt;
  }
  if (axis0 < 0) return std::nullopt;  // origin inside: ignore (rays start outside)
  RayHit hit;
  hit.t = t0;
  Eigen::Vector3d n = Eigen::Vector3d::Zero();
  n[axis0] = sign0;
  hit.normal = n;
  return hit;
}

inline std::optional<RayHit> ray_cylinder_local(const Eigen::Vector3d& o,
                                                const Eigen::Vector3d& d, double radius,
                                                double half_height) {
  std::optional<RayHit> best;
  auto consider = [&](double t, const Eigen::Vector3d& n) {
    if (t <= 1e-12) return;
    if (!best || t < best->t) best = RayHit{t, n};
  };
  // lateral surface
  double a = d.x() * d.x() + d.y() * d.y();
  if (a > 1e-18) {
    double b = 2.0 * (o.x() * d.x() + o.y() * d.y());
    double c = o.x() * o.x() + o.y() * o.y() - radius * radius;
    double disc = b * b - 4 * a * c;
    if (disc >= 0.0) {
      double s = std::sqrt(disc);
      for (double t : {(-b - s) / (2 * a), (-b + s) / (2 * a)}) {
        Eigen::Vector3d p = o + t * d;
        if (std::abs(p.z()) <= half_height) {
          consider(t, Eigen::Vector3d(p.x(), p.y(), 0).normalized());
        }
      }
    }
  }
  // caps
  if (std::abs(d.z()) > 1e-15) {
    for (double zcap : {half_height, -half_height}) {
      double t = (zcap - o.z()) / d.z();
      Eigen::Vector3d p = o + t * d;
      if (p.head<2>().squaredNorm() <= radius * radius) {
        consider(t, Eigen::Vector3d(0, 0, zcap > 0 ? 1.0 : -1.0));
      }
    }
  }
  return best;
}

inline std::optional<double> ray_triangle(const Eigen::Vector3d& o, const Eigen::Vector3d& d,
                                          const Eigen::Vector3d& v0, const Eigen::Vector3d& v1,
                                          const Eigen::Vector3d& v2) {
  // Moller-Trumbore
  Eigen::Vector3d e1 = v1 - v0;
  Eigen::Vector3d e2 = v2 - v0;
  Eigen::Vector3d pvec = d.cross(e2);
  double det = e1.dot(pvec);
  if (std::abs(det) < 1e-15) return std::nullopt;
  double inv = 1.0 / det;
  Eigen::Vector3d tvec = o - v0;
  double u = tvec.dot(pvec) * inv;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  Eigen::Vector3d qvec = tvec.cross(e1);
  double v = d.dot(qvec) * inv;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  double t = e2.dot(qvec) * inv;
  if (t <= 1e-12) return std::nullopt;
  return t;
}

}  // namespace detail

// First intersection of the world ray (origin, dir) with the posed shape.
// Returned normal is in world frame and faces the ray origin side.
inline std::optional<RayHit> ray_cast(const ShapePrimitive& shape, const Eigen::Isometry3d& pose,
                                      const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) {
  Eigen::Isometry3d inv = pose.inverse();
  Eigen::Vector3d o = inv * origin;
  Eigen::Vector3d d = inv.linear() * dir;

  std::optional<RayHit> local;
  if (const Box* box = std::get_if<Box>(&shape)) {
    local = detail::ray_box_local(o, d, 0.5 * box->extents);
  } else if (const Cylinder* cyl = std::get_if<Cylinder>(&shape)) {
    local = detail::ray_cylinder_local(o, d, cyl->radius, 0.5 * cyl->height);
  } else if (const Sphere* sph = std::get_if<Sphere>(&shape)) {
    double b = 2.0 * o.dot(d);
    double c = o.squaredNorm() - sph->radius * sph->radius;
    double a = d.squaredNorm();
    double disc = b * b - 4 * a * c;
    if (disc >= 0.0) {
      double t = (-b - std::sqrt(disc)) / (2 * a);
      if (t > 1e-12) local = RayHit{t, (o + t * d).normalized()};
    }
  } else {
    const TriMesh& mesh = std::get<TriMesh>(shape);
    for (const auto& tri : mesh.triangles) {
      auto t = detail::ray_triangle(o, d, mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                    mesh.vertices[tri[2]]);
      if (t && (!local || *t < local->t)) {
        Eigen::Vector3d n = (mesh.vertices[tri[1]] - mesh.vertices[tri[0]])
                                .cross(mesh.vertices[tri[2]] - mesh.vertices[tri[0]])
                                .normalized();
        if (n.dot(d) > 0) n = -n;
        local = RayHit{*t, n};
      }
    }
  }
  if (!local) return std::nullopt;
  RayHit hit;
  hit.t = local->t;
  hit.normal = pose.linear() * local->normal;
  return hit;
}

}  // namespace grasp
