// Command-line frontend for the SPR dynamics library. Thin wrapper over the
// C API: every subcommand maps to one spr_cmd_* call and its status becomes
// the exit code (0 ok, 1 check failure, 2 usage/config, 3 numerical).
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spr/spr.h"

namespace {

// Robot arguments accept a built-in name or a JSON file path.
std::string resolve_robot_arg(const std::string& arg) {
  if (arg == "diamond" || arg == "3rrr" || arg == "rrr3") return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot open robot file '%s'\n", arg.c_str());
    std::exit(SPR_CONFIG_ERROR);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string read_file_or_die(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot open %s file '%s'\n", what, path.c_str());
    std::exit(SPR_CONFIG_ERROR);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int finish(spr_status status) {
  if (status != SPR_OK) {
    std::fprintf(stderr, "error: %s\n", spr_last_error());
  }
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical parallel robot dynamics: torque, verification, "
               "base-parameter reduction, identification, and control simulation"};
  app.require_subcommand(1);

  std::string robot = "diamond";
  std::string trajectory_path;
  std::string gains_path;
  std::string out_path;
  std::string out_metrics;
  std::string controller = "idc";
  int samples = 0;
  unsigned long long seed = 1;
  double tol = 1e-8;
  double tol_scale = 1.0;
  double noise = 0.0;

  auto add_robot = [&](CLI::App* cmd) {
    cmd->add_option("-r,--robot", robot, "built-in name (diamond|3rrr) or robot JSON file");
  };
  auto add_trajectory = [&](CLI::App* cmd) {
    cmd->add_option("-t,--trajectory", trajectory_path,
                    "trajectory JSON file (omit for the robot's default)");
  };

  CLI::App* torque = app.add_subcommand("torque", "inverse-dynamics torques along a trajectory");
  add_robot(torque);
  add_trajectory(torque);
  torque->add_option("-o,--out", out_path, "output CSV path")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the verification property suite");
  add_robot(verify);
  verify->add_option("-n,--samples", samples, "random states per check (0 = defaults)");
  verify->add_option("-s,--seed", seed, "RNG seed");
  verify->add_option("--tol-scale", tol_scale, "multiply every check tolerance");
  verify->add_option("-o,--out", out_path, "report JSON path");

  CLI::App* reduce = app.add_subcommand("reduce", "base-parameter reduction map");
  add_robot(reduce);
  reduce->add_option("-n,--samples", samples, "observation-matrix sample count")
      ->default_val(60);
  reduce->add_option("--tol", tol, "relative pivot tolerance");
  reduce->add_option("-s,--seed", seed, "RNG seed");
  reduce->add_option("-o,--out", out_path, "reduction JSON path");

  CLI::App* identify = app.add_subcommand("identify", "base-parameter identification");
  add_robot(identify);
  add_trajectory(identify);
  identify->add_option("--noise", noise, "torque noise sigma (N·m)");
  identify->add_option("-s,--seed", seed, "RNG seed");
  identify->add_option("-o,--out", out_path, "recovery report JSON path");

  CLI::App* simulate = app.add_subcommand("simulate", "closed-loop control simulation");
  add_robot(simulate);
  add_trajectory(simulate);
  simulate->add_option("-c,--controller", controller, "idc | slotine-li");
  simulate->add_option("-g,--gains", gains_path, "gains JSON file");
  simulate->add_option("-o,--out", out_path, "run record CSV path");
  simulate->add_option("--metrics", out_metrics, "metrics JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : SPR_CONFIG_ERROR;
  }

  const std::string robot_arg = resolve_robot_arg(robot);
  std::string trajectory_json;
  if (!trajectory_path.empty()) {
    trajectory_json = read_file_or_die(trajectory_path, "trajectory");
  }

  if (torque->parsed()) {
    return finish(spr_cmd_torque(robot_arg.c_str(),
                                 trajectory_json.empty() ? nullptr : trajectory_json.c_str(),
                                 out_path.c_str()));
  }
  if (verify->parsed()) {
    return finish(spr_cmd_verify(robot_arg.c_str(), samples, seed, tol_scale,
                                 out_path.empty() ? nullptr : out_path.c_str()));
  }
  if (reduce->parsed()) {
    return finish(spr_cmd_reduce(robot_arg.c_str(), samples, tol, seed,
                                 out_path.empty() ? nullptr : out_path.c_str()));
  }
  if (identify->parsed()) {
    return finish(spr_cmd_identify(robot_arg.c_str(),
                                   trajectory_json.empty() ? nullptr
                                                           : trajectory_json.c_str(),
                                   noise, seed,
                                   out_path.empty() ? nullptr : out_path.c_str()));
  }
  if (simulate->parsed()) {
    std::string gains_json;
    if (!gains_path.empty()) gains_json = read_file_or_die(gains_path, "gains");
    return finish(spr_cmd_simulate(
        robot_arg.c_str(), controller.c_str(),
        trajectory_json.empty() ? nullptr : trajectory_json.c_str(),
        gains_json.empty() ? nullptr : gains_json.c_str(),
        out_path.empty() ? nullptr : out_path.c_str(),
        out_metrics.empty() ? nullptr : out_metrics.c_str()));
  }
  return SPR_CONFIG_ERROR;
}
