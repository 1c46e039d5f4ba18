#pragma once

#include <memory>
#include <string>
#include <vector>

#include "model.hpp"
#include "regressor.hpp"
#include "trajectory.hpp"

namespace spr {

/// Built-in robots by name: "diamond", "3rrr".
std::unique_ptr<RobotModel> make_builtin(const std::string& name);

/// Robot from JSON: {"type":"diamond"|"rrr3", ...geometry overrides...,
/// "gravity":[3], "bodies":[{"name","mass_kg","cm_m":[3],"inertia_cg":[6]}]}.
/// Angles in config are degrees; anything omitted keeps the built-in value.
std::unique_ptr<RobotModel> model_from_json(const std::string& text);
std::unique_ptr<RobotModel> model_from_file(const std::string& path);

/// Trajectory from JSON: {"kind":"cubic"|"multisine"|"random", "from_deg",
/// "to_deg", "duration_s", "rate_hz", "seed", ...}. The model supplies
/// workspace checks, dimensions, and the sampler for "random".
Trajectory trajectory_from_json(const std::string& text, const RobotModel& model);
Trajectory trajectory_from_file(const std::string& path, const RobotModel& model);

std::string reduction_to_json(const ReductionMap& map, std::uint64_t seed);
ReductionMap reduction_from_json(const std::string& text);

std::string read_text_file(const std::string& path);

/// Atomic write: temp file in the same directory, then rename.
void write_text_atomic(const std::string& path, const std::string& content);

/// CSV with "#"-prefixed provenance/comment lines, a column-name row, and
/// rows printed with 17 significant digits.
void write_csv_atomic(const std::string& path, const std::vector<std::string>& comments,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

}  // namespace spr
