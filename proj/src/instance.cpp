#include "carchase/instance.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace carchase {

namespace {

Pose parse_pose(const YAML::Node& n, const char* what) {
  if (!n.IsSequence() || n.size() != 3) {
    throw std::runtime_error(std::string("expected [x, y, theta] for ") + what);
  }
  return Pose(n[0].as<double>(), n[1].as<double>(), n[2].as<double>());
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> problems;
  if (!(inst.width > 0) || !(inst.height > 0)) {
    problems.push_back("map dimensions must be positive");
    return problems;
  }
  for (std::size_t i = 0; i < inst.agents.size(); ++i) {
    const auto& a = inst.agents[i];
    for (const auto& [label, pose] :
         {std::pair{"start", a.start}, std::pair{"goal", a.goal}}) {
      std::ostringstream who;
      who << "agent " << i << " " << label;
      if (!std::isfinite(pose.x) || !std::isfinite(pose.y)) {
        problems.push_back(who.str() + " not finite");
        continue;
      }
      if (!inst.in_bounds(pose.position(), inst.footprint_radius)) {
        problems.push_back(who.str() + " out of bounds");
      }
      if (inst.hits_obstacle(pose.position(), inst.footprint_radius)) {
        problems.push_back(who.str() + " inside an obstacle");
      }
    }
  }
  return problems;
}

Instance load_instance(const std::string& path, double obstacle_radius) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  Instance inst;
  const auto map = root["map"];
  if (!map || !map["dimensions"]) {
    throw std::runtime_error(path + ": missing map.dimensions");
  }
  inst.width = map["dimensions"][0].as<double>();
  inst.height = map["dimensions"][1].as<double>();
  if (map["obstacles"]) {
    for (const auto& ob : map["obstacles"]) {
      ObstacleDisc d;
      d.center = {ob[0].as<double>(), ob[1].as<double>()};
      d.radius = ob.size() > 2 ? ob[2].as<double>() : obstacle_radius;
      inst.obstacles.push_back(d);
    }
  }
  if (root["kinematics"]) {
    const auto k = root["kinematics"];
    if (k["turning_radius"])
      inst.kinematics.turning_radius = k["turning_radius"].as<double>();
    if (k["step_length"])
      inst.kinematics.step_length = k["step_length"].as<double>();
    if (k["reverse_penalty"])
      inst.kinematics.reverse_penalty = k["reverse_penalty"].as<double>();
  }
  if (root["footprint_radius"]) {
    inst.footprint_radius = root["footprint_radius"].as<double>();
  }
  if (!root["agents"]) {
    throw std::runtime_error(path + ": missing agents");
  }
  for (const auto& a : root["agents"]) {
    AgentTask task;
    task.start = parse_pose(a["start"], "start");
    task.goal = parse_pose(a["goal"], "goal");
    inst.agents.push_back(task);
  }
  auto problems = validate_instance(inst);
  if (!problems.empty()) {
    throw std::runtime_error(path + ": " + problems.front());
  }
  return inst;
}

void write_instance(const Instance& inst, const std::string& path) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "map" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dimensions" << YAML::Value << YAML::Flow
      << YAML::BeginSeq << inst.width << inst.height << YAML::EndSeq;
  out << YAML::Key << "obstacles" << YAML::Value << YAML::BeginSeq;
  for (const auto& ob : inst.obstacles) {
    out << YAML::Flow << YAML::BeginSeq << ob.center.x << ob.center.y
        << ob.radius << YAML::EndSeq;
  }
  out << YAML::EndSeq << YAML::EndMap;
  out << YAML::Key << "kinematics" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "turning_radius" << YAML::Value
      << inst.kinematics.turning_radius;
  out << YAML::Key << "step_length" << YAML::Value
      << inst.kinematics.step_length;
  out << YAML::Key << "reverse_penalty" << YAML::Value
      << inst.kinematics.reverse_penalty;
  out << YAML::EndMap;
  out << YAML::Key << "footprint_radius" << YAML::Value
      << inst.footprint_radius;
  out << YAML::Key << "agents" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : inst.agents) {
    out << YAML::BeginMap;
    out << YAML::Key << "start" << YAML::Value << YAML::Flow << YAML::BeginSeq
        << a.start.x << a.start.y << a.start.theta << YAML::EndSeq;
    out << YAML::Key << "goal" << YAML::Value << YAML::Flow << YAML::BeginSeq
        << a.goal.x << a.goal.y << a.goal.theta << YAML::EndSeq;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;

  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << out.c_str() << "\n";
}

}  // namespace carchase
