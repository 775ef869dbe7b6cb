#pragma once

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "grasp/io/raster_io.hpp"
#include "grasp/rank/ranking.hpp"
#include "grasp/reach/robot.hpp"
#include "grasp/scene/scene.hpp"

namespace grasp {

using Json = nlohmann::json;

inline Json to_json(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

inline Eigen::Vector3d vec3_from_json(const Json& j) {
  return Eigen::Vector3d(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}

inline Json to_json(const Eigen::Isometry3d& t) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) {
    rows.push_back(Json::array(
        {t.linear()(r, 0), t.linear()(r, 1), t.linear()(r, 2)}));
  }
  return Json{{"rotation", rows}, {"translation", to_json(t.translation())}};
}

inline Eigen::Isometry3d isometry_from_json(const Json& j) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      t.linear()(r, c) = j.at("rotation").at(r).at(c).get<double>();
    }
  }
  t.translation() = vec3_from_json(j.at("translation"));
  return t;
}

inline Json to_json(const CameraIntrinsics& in) {
  return Json{{"fx", in.fx}, {"fy", in.fy}, {"cx", in.cx},
              {"cy", in.cy}, {"width", in.width}, {"height", in.height}};
}

inline CameraIntrinsics intrinsics_from_json(const Json& j) {
  CameraIntrinsics in;
  in.fx = j.at("fx").get<double>();
  in.fy = j.at("fy").get<double>();
  in.cx = j.at("cx").get<double>();
  in.cy = j.at("cy").get<double>();
  in.width = j.at("width").get<int>();
  in.height = j.at("height").get<int>();
  return in;
}

inline Json to_json(const ShapePrimitive& shape) {
  if (const Box* box = std::get_if<Box>(&shape)) {
    return Json{{"kind", "box"}, {"extents", to_json(box->extents)}};
  }
  if (const Cylinder* cyl = std::get_if<Cylinder>(&shape)) {
    return Json{{"kind", "cylinder"}, {"radius", cyl->radius}, {"height", cyl->height}};
  }
  if (const Sphere* sph = std::get_if<Sphere>(&shape)) {
    return Json{{"kind", "sphere"}, {"radius", sph->radius}};
  }
  const TriMesh& mesh = std::get<TriMesh>(shape);
  Json verts = Json::array(), tris = Json::array();
  for (const auto& v : mesh.vertices) verts.push_back(to_json(v));
  for (const auto& t : mesh.triangles) tris.push_back(Json::array({t[0], t[1], t[2]}));
  return Json{{"kind", "mesh"}, {"vertices", verts}, {"triangles", tris}};
}

inline ShapePrimitive shape_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "box") return Box{vec3_from_json(j.at("extents"))};
  if (kind == "cylinder") {
    return Cylinder{j.at("radius").get<double>(), j.at("height").get<double>()};
  }
  if (kind == "sphere") return Sphere{j.at("radius").get<double>()};
  if (kind == "mesh") {
    TriMesh mesh;
    for (const auto& v : j.at("vertices")) mesh.vertices.push_back(vec3_from_json(v));
    for (const auto& t : j.at("triangles")) {
      mesh.triangles.emplace_back(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>());
    }
    return mesh;
  }
  throw ConfigError("unknown shape kind: " + kind);
}

inline Json to_json(const SceneDescription& scene) {
  Json objects = Json::array();
  for (const auto& obj : scene.objects) {
    objects.push_back(Json{{"label", obj.label},
                           {"shape", to_json(obj.shape)},
                           {"pose", to_json(obj.pose)}});
  }
  return Json{
      {"version", "0.1"},
      {"seed", scene.seed},
      {"incomplete", scene.incomplete},
      {"bin",
       {{"center", to_json(scene.bin.center)},
        {"interior", Json::array({scene.bin.interior_x, scene.bin.interior_y})},
        {"wall_height", scene.bin.wall_height},
        {"wall_thickness", scene.bin.wall_thickness}}},
      {"camera",
       {{"intrinsics", to_json(scene.camera.intrinsics)}, {"pose", to_json(scene.camera.pose)}}},
      {"objects", objects}};
}

inline SceneDescription scene_from_json(const Json& j) {
  SceneDescription scene;
  scene.seed = j.at("seed").get<uint64_t>();
  scene.incomplete = j.value("incomplete", false);
  const Json& bin = j.at("bin");
  scene.bin.center = vec3_from_json(bin.at("center"));
  scene.bin.interior_x = bin.at("interior").at(0).get<double>();
  scene.bin.interior_y = bin.at("interior").at(1).get<double>();
  scene.bin.wall_height = bin.at("wall_height").get<double>();
  scene.bin.wall_thickness = bin.at("wall_thickness").get<double>();
  scene.camera.intrinsics = intrinsics_from_json(j.at("camera").at("intrinsics"));
  scene.camera.pose = isometry_from_json(j.at("camera").at("pose"));
  for (const auto& obj_json : j.at("objects")) {
    SceneObject obj;
    obj.label = obj_json.at("label").get<uint16_t>();
    obj.shape = shape_from_json(obj_json.at("shape"));
    obj.pose = isometry_from_json(obj_json.at("pose"));
    scene.objects.push_back(std::move(obj));
  }
  return scene;
}

inline Json to_json(const RobotModel& model) {
  Json dh = Json::array();
  for (const auto& row : model.dh) {
    dh.push_back(Json{{"a", row.a},
                      {"alpha", row.alpha},
                      {"d", row.d},
                      {"theta_offset", row.theta_offset}});
  }
  Json limits = Json::array(), home = Json::array();
  for (int i = 0; i < kNumJoints; ++i) {
    limits.push_back(Json::array({model.limits_lo[i], model.limits_hi[i]}));
    home.push_back(model.home_joints[i]);
  }
  Json capsules = Json::array();
  for (const auto& link : model.link_capsules) {
    Json link_json = Json::array();
    for (const auto& cap : link) {
      link_json.push_back(
          Json{{"p0", to_json(cap.p0)}, {"p1", to_json(cap.p1)}, {"radius", cap.radius}});
    }
    capsules.push_back(link_json);
  }
  return Json{{"version", "0.1"},
              {"dh", dh},
              {"joint_limits", limits},
              {"home_joints", home},
              {"tool_transform", to_json(model.tool_transform)},
              {"link_capsules", capsules}};
}

inline RobotModel robot_from_json(const Json& j) {
  RobotModel model;
  const Json& dh = j.at("dh");
  if (dh.size() != kNumJoints) throw ConfigError("robot model must have 6 DH rows");
  for (int i = 0; i < kNumJoints; ++i) {
    model.dh[i] = {dh[i].at("a").get<double>(), dh[i].at("alpha").get<double>(),
                   dh[i].at("d").get<double>(), dh[i].at("theta_offset").get<double>()};
    model.limits_lo[i] = j.at("joint_limits").at(i).at(0).get<double>();
    model.limits_hi[i] = j.at("joint_limits").at(i).at(1).get<double>();
    model.home_joints[i] = j.at("home_joints").at(i).get<double>();
  }
  model.tool_transform = isometry_from_json(j.at("tool_transform"));
  const Json& capsules = j.at("link_capsules");
  for (size_t link = 0; link < capsules.size() && link <= kNumJoints; ++link) {
    for (const auto& cap : capsules[link]) {
      model.link_capsules[link].push_back({vec3_from_json(cap.at("p0")),
                                           vec3_from_json(cap.at("p1")),
                                           cap.at("radius").get<double>()});
    }
  }
  return model;
}

inline Json to_json(const std::vector<GraspCandidate>& candidates, const PolicyConfig& cfg) {
  Json list = Json::array();
  for (const auto& cand : candidates) {
    list.push_back(Json{{"rank", cand.global_rank},
                        {"pixel", Json::array({cand.pixel.x(), cand.pixel.y()})},
                        {"p", to_json(cand.p)},
                        {"n", to_json(cand.n)},
                        {"quality", cand.quality},
                        {"reachability", cand.reachability},
                        {"cluster_id", cand.cluster_id}});
  }
  return Json{{"policy", static_cast<int>(cfg.policy)},
              {"th_g", cfg.th_g},
              {"th_r", cfg.th_r},
              {"candidates", list}};
}

inline Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path.string());
  Json j;
  in >> j;
  return j;
}

inline void save_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace grasp
