#include "carchase/solution.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace carchase {

namespace {

constexpr double kTol = 1e-6;

bool legal_step(const Pose& a, const Pose& b, const Kinematics& kin) {
  const double chord = position_distance(a, b);
  const double dtheta = angle_diff(b.theta, a.theta);
  if (chord < kTol) {
    // Wait (or a pure rotation, which is not a car motion).
    return std::abs(dtheta) < kTol;
  }
  const double heading = std::atan2(b.y - a.y, b.x - a.x);
  if (std::abs(dtheta) < kTol) {
    // Straight, forward or reverse along the heading.
    double off = angle_diff(heading, a.theta);
    bool aligned = std::abs(off) < 1e-4 || std::abs(std::abs(off) - M_PI) < 1e-4;
    return aligned && chord <= kin.step_length + kTol;
  }
  // Circular arc: chord = 2 r sin(|dtheta|/2), chord bisects the heading
  // change (offset by pi when reversing).
  const double r = chord / (2.0 * std::abs(std::sin(dtheta / 2.0)));
  if (std::abs(r - kin.turning_radius) > 1e-4 * kin.turning_radius) {
    return false;
  }
  double off = angle_diff(heading, a.theta + dtheta / 2.0);
  bool aligned = std::abs(off) < 1e-4 || std::abs(std::abs(off) - M_PI) < 1e-4;
  const double arc = std::abs(dtheta) * kin.turning_radius;
  return aligned && arc <= kin.step_length + kTol;
}

Pose pose_at(const Path& p, int t) {
  if (p.empty()) return Pose();
  const int t0 = p.front().time;
  if (t <= t0) return p.front().pose;
  const int idx = t - t0;
  if (idx >= static_cast<int>(p.size())) return p.back().pose;
  return p[static_cast<std::size_t>(idx)].pose;
}

}  // namespace

std::vector<std::string> validate_solution(const Instance& inst,
                                           const Solution& sol,
                                           double goal_pos_tol,
                                           double goal_theta_tol) {
  std::vector<std::string> problems;
  auto report = [&](std::size_t agent, const std::string& msg) {
    std::ostringstream os;
    os << "agent " << agent << ": " << msg;
    problems.push_back(os.str());
  };

  if (sol.paths.size() != inst.agents.size()) {
    problems.push_back("path count does not match agent count");
    return problems;
  }

  int max_t = 0;
  for (std::size_t i = 0; i < sol.paths.size(); ++i) {
    const auto& path = sol.paths[i];
    const auto& task = inst.agents[i];
    if (path.empty()) {
      report(i, "empty path");
      continue;
    }
    max_t = std::max(max_t, path.back().time);
    if (position_distance(path.front().pose, task.start) > 1e-9 ||
        std::abs(angle_diff(path.front().pose.theta, task.start.theta)) >
            1e-9) {
      report(i, "path does not begin at the start pose");
    }
    if (position_distance(path.back().pose, task.goal) > goal_pos_tol ||
        std::abs(angle_diff(path.back().pose.theta, task.goal.theta)) >
            goal_theta_tol) {
      report(i, "final pose outside goal tolerance");
    }
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      if (path[k + 1].time != path[k].time + 1) {
        report(i, "non-consecutive timesteps");
        break;
      }
      if (!legal_step(path[k].pose, path[k + 1].pose, inst.kinematics)) {
        std::ostringstream os;
        os << "illegal motion between t=" << path[k].time << " and t+1";
        report(i, os.str());
        break;
      }
    }
    for (const auto& st : path) {
      if (!inst.in_bounds(st.pose.position(), inst.footprint_radius)) {
        report(i, "leaves the map");
        break;
      }
      if (inst.hits_obstacle(st.pose.position(), inst.footprint_radius)) {
        report(i, "collides with an obstacle");
        break;
      }
    }
  }

  const double min_sep = 2.0 * inst.footprint_radius;
  for (int t = 0; t <= max_t; ++t) {
    for (std::size_t i = 0; i < sol.paths.size(); ++i) {
      for (std::size_t j = i + 1; j < sol.paths.size(); ++j) {
        if (sol.paths[i].empty() || sol.paths[j].empty()) continue;
        Pose a = pose_at(sol.paths[i], t);
        Pose b = pose_at(sol.paths[j], t);
        if (position_distance(a, b) < min_sep - 1e-9) {
          std::ostringstream os;
          os << "agents " << i << " and " << j << " collide at t=" << t;
          problems.push_back(os.str());
        }
      }
    }
  }
  return problems;
}

void write_solution(const Solution& sol, const std::string& path) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "cost" << YAML::Value << sol.cost;
  out << YAML::Key << "paths" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < sol.paths.size(); ++i) {
    out << YAML::BeginMap;
    out << YAML::Key << "agent" << YAML::Value << i;
    out << YAML::Key << "states" << YAML::Value << YAML::BeginSeq;
    for (const auto& st : sol.paths[i]) {
      out << YAML::Flow << YAML::BeginSeq << st.pose.x << st.pose.y
          << st.pose.theta << st.time << YAML::EndSeq;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;

  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << out.c_str() << "\n";
}

Solution load_solution(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  Solution sol;
  sol.cost = root["cost"].as<double>();
  for (const auto& p : root["paths"]) {
    Path pth;
    for (const auto& row : p["states"]) {
      TimedState st;
      st.pose = Pose(row[0].as<double>(), row[1].as<double>(),
                     row[2].as<double>());
      st.time = row[3].as<int>();
      pth.push_back(st);
    }
    sol.paths.push_back(std::move(pth));
  }
  return sol;
}

}  // namespace carchase
