#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "diamond.hpp"
#include "errors.hpp"
#include "json.hpp"
#include "rrr3.hpp"

namespace spr {

namespace {

constexpr double kDeg = M_PI / 180.0;

using nlohmann::json;

Vec3 to_vec3(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 3) {
    throw ConfigError(std::string("field '") + field + "' must be a 3-array");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

VecX to_vecx(const json& j, const char* field) {
  if (!j.is_array()) throw ConfigError(std::string("field '") + field + "' must be an array");
  VecX v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

void apply_body_overrides(const json& j, std::vector<BodyInertia>& bodies) {
  if (!j.is_array() || j.size() != bodies.size()) {
    throw ConfigError("field 'bodies' must list all " + std::to_string(bodies.size()) +
                      " bodies in canonical order");
  }
  for (size_t i = 0; i < j.size(); ++i) {
    const json& bj = j[i];
    BodyInertia& b = bodies[i];
    if (bj.contains("name")) b.name = bj["name"].get<std::string>();
    if (bj.contains("mass_kg")) b.mass = bj["mass_kg"].get<double>();
    if (bj.contains("cm_m")) b.cm_body = to_vec3(bj["cm_m"], "cm_m");
    if (bj.contains("inertia_cg")) {
      const json& ij = bj["inertia_cg"];
      if (!ij.is_array() || ij.size() != 6) {
        throw ConfigError("field 'inertia_cg' must be [xx,xy,xz,yy,yz,zz]");
      }
      InertiaVec6 v;
      for (int c = 0; c < 6; ++c) v(c) = ij[c].get<double>();
      b.i_cg_body = inertia_vec_to_matrix(v);
    }
  }
}

}  // namespace

std::unique_ptr<RobotModel> make_builtin(const std::string& name) {
  if (name == "diamond") {
    return std::make_unique<DiamondModel>(DiamondModel::default_geometry());
  }
  if (name == "3rrr" || name == "rrr3") {
    return std::make_unique<Rrr3Model>(Rrr3Model::default_geometry());
  }
  throw ConfigError("unknown robot '" + name + "' (expected \"diamond\" or \"3rrr\")");
}

std::unique_ptr<RobotModel> model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("robot config: ") + e.what());
  }
  if (!j.contains("type")) throw ConfigError("robot config: missing field 'type'");
  const std::string type = j["type"].get<std::string>();

  if (type == "diamond") {
    DiamondGeometry geom = DiamondModel::default_geometry();
    if (j.contains("alpha_deg")) geom.alpha = j["alpha_deg"].get<double>() * kDeg;
    if (j.contains("beta_deg")) geom.beta = j["beta_deg"].get<double>() * kDeg;
    if (j.contains("gravity")) geom.gravity = to_vec3(j["gravity"], "gravity");
    if (j.contains("bodies")) apply_body_overrides(j["bodies"], geom.links);
    return std::make_unique<DiamondModel>(std::move(geom));
  }
  if (type == "rrr3" || type == "3rrr") {
    Rrr3Geometry geom = Rrr3Model::default_geometry();
    auto angles3 = [&](const char* field, std::array<double, 3>& out) {
      if (!j.contains(field)) return;
      const VecX v = to_vecx(j[field], field);
      if (v.size() != 3) throw ConfigError(std::string("field '") + field + "' must have 3 entries");
      for (int i = 0; i < 3; ++i) out[i] = v(i) * kDeg;
    };
    angles3("lambda_deg", geom.lambda);
    angles3("eta_deg", geom.eta);
    if (j.contains("gamma_base_deg")) geom.gamma_base = j["gamma_base_deg"].get<double>() * kDeg;
    if (j.contains("beta_plat_deg")) geom.beta_plat = j["beta_plat_deg"].get<double>() * kDeg;
    angles3("alpha1_deg", geom.alpha1);
    angles3("alpha2_deg", geom.alpha2);
    if (j.contains("gravity")) geom.gravity = to_vec3(j["gravity"], "gravity");
    if (j.contains("bodies")) apply_body_overrides(j["bodies"], geom.bodies);
    return std::make_unique<Rrr3Model>(std::move(geom));
  }
  throw ConfigError("robot config: unknown type '" + type + "'");
}

std::unique_ptr<RobotModel> model_from_file(const std::string& path) {
  return model_from_json(read_text_file(path));
}

Trajectory trajectory_from_json(const std::string& text, const RobotModel& model) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("trajectory config: ") + e.what());
  }
  const std::string kind = j.value("kind", "cubic");
  const double duration = j.value("duration_s", 1.0);
  const double rate = j.value("rate_hz", 1000.0);
  const int m = model.dof();

  if (kind == "cubic") {
    if (!j.contains("from_deg") || !j.contains("to_deg")) {
      throw ConfigError("trajectory config: cubic needs 'from_deg' and 'to_deg'");
    }
    const VecX from = to_vecx(j["from_deg"], "from_deg") * kDeg;
    const VecX to = to_vecx(j["to_deg"], "to_deg") * kDeg;
    if (from.size() != m || to.size() != m) {
      throw ConfigError("trajectory config: endpoint dimension must equal robot dof");
    }
    return cubic_trajectory(from, to, duration, rate);
  }
  if (kind == "multisine") {
    if (!j.contains("center_deg")) {
      throw ConfigError("trajectory config: multisine needs 'center_deg'");
    }
    const VecX center = to_vecx(j["center_deg"], "center_deg") * kDeg;
    if (center.size() != m) {
      throw ConfigError("trajectory config: 'center_deg' dimension must equal robot dof");
    }
    auto to_matrix = [&](const char* field, double scale) {
      if (!j.contains(field)) throw ConfigError(std::string("multisine needs '") + field + "'");
      const json& rows = j[field];
      if (!rows.is_array() || static_cast<int>(rows.size()) != m) {
        throw ConfigError(std::string("field '") + field + "' must have one row per dof");
      }
      const size_t cols = rows[0].size();
      MatX mat(m, cols);
      for (int r = 0; r < m; ++r) {
        if (rows[r].size() != cols) {
          throw ConfigError(std::string("field '") + field + "' rows must be equal length");
        }
        for (size_t c = 0; c < cols; ++c) mat(r, static_cast<Eigen::Index>(c)) =
            rows[r][c].get<double>() * scale;
      }
      return mat;
    };
    const MatX amp = to_matrix("amplitudes_deg", kDeg);
    const MatX freq = to_matrix("frequencies_hz", 1.0);
    const MatX phase = to_matrix("phases_rad", 1.0);
    return multisine_trajectory(center, amp, freq, phase, duration, rate, &model);
  }
  if (kind == "random") {
    const std::uint64_t seed = j.value("seed", 1ull);
    Trajectory traj;
    traj.kind = "random";
    traj.seed = seed;
    StateSampler sampler(model, seed);
    const int n = static_cast<int>(std::llround(duration * rate));
    for (int i = 0; i <= n; ++i) {
      const TaskState s = sampler.next();
      traj.t.push_back(duration * static_cast<double>(i) / n);
      traj.theta.push_back(s.theta);
      traj.theta_dot.push_back(s.theta_dot);
      traj.theta_ddot.push_back(s.theta_ddot);
    }
    return traj;
  }
  throw ConfigError("trajectory config: unknown kind '" + kind + "'");
}

Trajectory trajectory_from_file(const std::string& path, const RobotModel& model) {
  return trajectory_from_json(read_text_file(path), model);
}

std::string reduction_to_json(const ReductionMap& map, std::uint64_t seed) {
  json j;
  j["p"] = map.p;
  j["pivot_columns"] = map.pivot_columns;
  j["tolerance"] = map.tolerance;
  j["pivot_gap"] = map.pivot_gap;
  j["seed"] = seed;
  json rows = json::array();
  for (Eigen::Index r = 0; r < map.B.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < map.B.cols(); ++c) row.push_back(map.B(r, c));
    rows.push_back(std::move(row));
  }
  j["B"] = std::move(rows);
  return j.dump(2);
}

ReductionMap reduction_from_json(const std::string& text) {
  const json j = json::parse(text);
  ReductionMap map;
  map.p = j.at("p").get<int>();
  map.pivot_columns = j.at("pivot_columns").get<std::vector<int>>();
  map.tolerance = j.at("tolerance").get<double>();
  map.pivot_gap = j.value("pivot_gap", 0.0);
  const json& rows = j.at("B");
  map.B = MatX(rows.size(), rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < rows[r].size(); ++c) {
      map.B(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c].get<double>();
    }
  }
  map.B_dagger = map.B.transpose() *
                 (map.B * map.B.transpose()).ldlt().solve(MatX::Identity(map.p, map.p));
  return map;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file: " + tmp);
    out << content;
    if (!out.good()) throw ConfigError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw ConfigError("rename failed: " + path);
  }
}

void write_csv_atomic(const std::string& path, const std::vector<std::string>& comments,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (const auto& line : comments) {
    std::string flat = line;
    for (char& c : flat) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    out << "# " << flat << "\n";
  }
  for (size_t i = 0; i < columns.size(); ++i) {
    out << columns[i] << (i + 1 < columns.size() ? "," : "");
  }
  out << "\n";
  char buf[40];
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      out << buf << (i + 1 < row.size() ? "," : "");
    }
    out << "\n";
  }
  write_text_atomic(path, out.str());
}

}  // namespace spr
