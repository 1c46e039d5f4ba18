#include "spr/spr.h"

#include <cstring>
#include <string>

#include "control.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "identify.hpp"
#include "io.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "regressor.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

spr_status classify(const std::exception& e, spr_status fallback) {
  set_error(e.what());
  if (dynamic_cast<const spr::ConfigError*>(&e) != nullptr ||
      dynamic_cast<const spr::DimensionMismatch*>(&e) != nullptr) {
    return SPR_CONFIG_ERROR;
  }
  if (dynamic_cast<const spr::SingularConfiguration*>(&e) != nullptr ||
      dynamic_cast<const spr::UnreachablePose*>(&e) != nullptr ||
      dynamic_cast<const spr::WorkspaceViolation*>(&e) != nullptr ||
      dynamic_cast<const spr::BranchJump*>(&e) != nullptr ||
      dynamic_cast<const spr::InsufficientSamples*>(&e) != nullptr ||
      dynamic_cast<const spr::RankDeficient*>(&e) != nullptr) {
    return SPR_NUMERICAL_ERROR;
  }
  return fallback;
}

template <typename Fn>
spr_status wrap(spr_status fallback, Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const std::exception& e) {
    return classify(e, fallback);
  } catch (...) {
    set_error("unknown error");
    return fallback;
  }
}

const spr::RobotModel& unwrap(const spr_model* model) {
  return *reinterpret_cast<const spr::RobotModel*>(model);
}

spr::VecX to_vec(const double* data, int n) {
  return Eigen::Map<const spr::VecX>(data, n);
}

void from_mat(const spr::MatX& m, double* out) {
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out, m.rows(), m.cols()) = m;
}

std::unique_ptr<spr::RobotModel> resolve_robot(const char* robot) {
  if (robot == nullptr) throw spr::ConfigError("robot argument is required");
  const std::string text(robot);
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return spr::model_from_json(text);
  }
  return spr::make_builtin(text);
}

std::string resolved_robot_comment(const char* robot) {
  const std::string text(robot ? robot : "");
  std::string flat;
  for (char c : text) flat += (c == '\n') ? ' ' : c;
  return "robot: " + flat;
}

spr::MatX gain_matrix(const nlohmann::json& j, const char* field, int dim,
                      double default_scalar) {
  if (!j.contains(field)) {
    return default_scalar * spr::MatX::Identity(dim, dim);
  }
  const auto& g = j[field];
  if (g.is_number()) return g.get<double>() * spr::MatX::Identity(dim, dim);
  if (g.is_array() && static_cast<int>(g.size()) == dim && g[0].is_number()) {
    spr::MatX m = spr::MatX::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = g[i].get<double>();
    return m;
  }
  throw spr::ConfigError(std::string("gain '") + field +
                         "' must be a scalar or a diagonal array of length " +
                         std::to_string(dim));
}

}  // namespace

extern "C" {

const char* spr_last_error(void) { return g_last_error.c_str(); }

spr_model* spr_model_create_builtin(const char* name) {
  try {
    g_last_error.clear();
    return reinterpret_cast<spr_model*>(spr::make_builtin(name ? name : "").release());
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

spr_model* spr_model_create_json(const char* json_text) {
  try {
    g_last_error.clear();
    return reinterpret_cast<spr_model*>(
        spr::model_from_json(json_text ? json_text : "").release());
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

void spr_model_destroy(spr_model* model) {
  delete reinterpret_cast<spr::RobotModel*>(model);
}

int spr_model_dof(const spr_model* model) { return unwrap(model).dof(); }
int spr_model_actuators(const spr_model* model) { return unwrap(model).actuators(); }
int spr_model_body_count(const spr_model* model) { return unwrap(model).body_count(); }

spr_status spr_mass_matrix(const spr_model* model, const double* theta, double* out) {
  return wrap(SPR_NUMERICAL_ERROR, [&] {
    const auto& m = unwrap(model);
    from_mat(spr::mass_matrix(m, to_vec(theta, m.dof())), out);
    return SPR_OK;
  });
}

spr_status spr_coriolis_matrix(const spr_model* model, const double* theta,
                               const double* theta_dot, double* out) {
  return wrap(SPR_NUMERICAL_ERROR, [&] {
    const auto& m = unwrap(model);
    from_mat(spr::coriolis_matrix(m, to_vec(theta, m.dof()), to_vec(theta_dot, m.dof())),
             out);
    return SPR_OK;
  });
}

spr_status spr_gravity_vector(const spr_model* model, const double* theta, double* out) {
  return wrap(SPR_NUMERICAL_ERROR, [&] {
    const auto& m = unwrap(model);
    Eigen::Map<spr::VecX>(out, m.dof()) = spr::gravity_vector(m, to_vec(theta, m.dof()));
    return SPR_OK;
  });
}

spr_status spr_inverse_dynamics(const spr_model* model, const double* theta,
                                const double* theta_dot, const double* theta_ddot,
                                double* out) {
  return wrap(SPR_NUMERICAL_ERROR, [&] {
    const auto& m = unwrap(model);
    const int n = m.dof();
    Eigen::Map<spr::VecX>(out, m.actuators()) = spr::inverse_dynamics(
        m, to_vec(theta, n), to_vec(theta_dot, n), to_vec(theta_ddot, n));
    return SPR_OK;
  });
}

spr_status spr_forward_dynamics(const spr_model* model, const double* theta,
                                const double* theta_dot, const double* tau, double* out) {
  return wrap(SPR_NUMERICAL_ERROR, [&] {
    const auto& m = unwrap(model);
    Eigen::Map<spr::VecX>(out, m.dof()) =
        spr::forward_dynamics(m, to_vec(theta, m.dof()), to_vec(theta_dot, m.dof()),
                              to_vec(tau, m.actuators()));
    return SPR_OK;
  });
}

spr_status spr_linear_regressor(const spr_model* model, const double* theta,
                                const double* theta_dot, const double* theta_ddot,
                                double* out) {
  return wrap(SPR_NUMERICAL_ERROR, [&] {
    const auto& m = unwrap(model);
    const int n = m.dof();
    from_mat(spr::linear_regressor(m, to_vec(theta, n), to_vec(theta_dot, n),
                                   to_vec(theta_ddot, n)),
             out);
    return SPR_OK;
  });
}

spr_status spr_slotine_li_regressor(const spr_model* model, const double* theta,
                                    const double* theta_dot, const double* theta_r_dot,
                                    const double* theta_r_ddot, double* out) {
  return wrap(SPR_NUMERICAL_ERROR, [&] {
    const auto& m = unwrap(model);
    const int n = m.dof();
    from_mat(spr::slotine_li_regressor(m, to_vec(theta, n), to_vec(theta_dot, n),
                                       to_vec(theta_r_dot, n), to_vec(theta_r_ddot, n)),
             out);
    return SPR_OK;
  });
}

spr_status spr_pi_vector(const spr_model* model, double* out) {
  return wrap(SPR_NUMERICAL_ERROR, [&] {
    const auto& m = unwrap(model);
    Eigen::Map<spr::VecX>(out, 9 * m.body_count()) = spr::assemble_pi(m);
    return SPR_OK;
  });
}

spr_status spr_cmd_torque(const char* robot, const char* trajectory_json,
                          const char* out_csv_path) {
  return wrap(SPR_CONFIG_ERROR, [&] {
    if (out_csv_path == nullptr) throw spr::ConfigError("output path is required");
    const auto model = resolve_robot(robot);
    const spr::Trajectory traj =
        trajectory_json ? spr::trajectory_from_json(trajectory_json, *model)
                        : spr::default_verification_trajectory(*model);

    std::vector<std::string> columns{"t"};
    for (int i = 1; i <= model->dof(); ++i) columns.push_back("q" + std::to_string(i));
    for (int i = 1; i <= model->actuators(); ++i)
      columns.push_back("tau" + std::to_string(i));

    std::vector<std::vector<double>> rows;
    for (int s = 0; s < traj.samples(); ++s) {
      const spr::VecX tau = spr::inverse_dynamics(*model, traj.theta[s],
                                                  traj.theta_dot[s], traj.theta_ddot[s]);
      std::vector<double> row{traj.t[s]};
      for (int i = 0; i < model->dof(); ++i) row.push_back(traj.theta[s](i));
      for (int i = 0; i < model->actuators(); ++i) row.push_back(tau(i));
      rows.push_back(std::move(row));
    }
    spr::write_csv_atomic(
        out_csv_path,
        {"units: rad, N·m", resolved_robot_comment(robot),
         "trajectory: " + std::string(trajectory_json ? trajectory_json : "(default)"),
         "kind: " + traj.kind},
        columns, rows);
    return SPR_OK;
  });
}

spr_status spr_cmd_verify(const char* robot, int samples, unsigned long long seed,
                          double tolerance_scale, const char* out_json_path) {
  return wrap(SPR_CONFIG_ERROR, [&] {
    if (tolerance_scale <= 0.0) throw spr::ConfigError("tolerance scale must be positive");
    const auto model = resolve_robot(robot);
    spr::PropertyConfig config;
    config.seed = seed;
    if (samples > 0) {
      config.regressor_samples = samples;
      config.jacobian_samples = samples;
      config.antisymmetry_samples = samples;
      config.mass_scan_samples = 10 * samples;
    }
    config.regressor_tol *= tolerance_scale;
    config.antisymmetry_tol *= tolerance_scale;
    config.jacobian_tol *= tolerance_scale;
    config.gravity_tol *= tolerance_scale;
    config.lagrange_tol *= tolerance_scale;
    config.energy_tol *= tolerance_scale;

    const spr::VerificationReport report = spr::property_suite(*model, config);
    if (out_json_path != nullptr) {
      spr::write_text_atomic(out_json_path, spr::report_to_json(report) + "\n");
    }
    if (!report.all_pass()) {
      std::string failing = "verification failed:";
      for (const auto& c : report.checks) {
        if (!c.pass) {
          failing += " " + c.name + " (max_err " + std::to_string(c.max_err) + " vs tol " +
                     std::to_string(c.tolerance) + ")";
        }
      }
      set_error(failing);
      return SPR_CHECK_FAILED;
    }
    return SPR_OK;
  });
}

spr_status spr_cmd_reduce(const char* robot, int samples, double tolerance,
                          unsigned long long seed, const char* out_json_path) {
  return wrap(SPR_CONFIG_ERROR, [&] {
    const auto model = resolve_robot(robot);
    const spr::ObservationMatrix obs = spr::observation_matrix(*model, samples, seed);
    const spr::ReductionMap map = spr::reduction_map(obs.W, tolerance);
    if (out_json_path != nullptr) {
      spr::write_text_atomic(out_json_path, spr::reduction_to_json(map, seed) + "\n");
    }
    return SPR_OK;
  });
}

spr_status spr_cmd_identify(const char* robot, const char* trajectory_json,
                            double noise_sigma, unsigned long long seed,
                            const char* out_json_path) {
  return wrap(SPR_CONFIG_ERROR, [&] {
    if (noise_sigma < 0.0) throw spr::ConfigError("noise sigma must be nonnegative");
    const auto model = resolve_robot(robot);
    const spr::Trajectory traj = trajectory_json
                                     ? spr::trajectory_from_json(trajectory_json, *model)
                                     : spr::default_excitation(*model);

    const int min_samples =
        (9 * model->body_count() + model->dof() - 1) / model->dof();
    const spr::ObservationMatrix obs =
        spr::observation_matrix(*model, min_samples + 30, seed + 77);
    const spr::ReductionMap map = spr::reduction_map(obs.W);

    const spr::MeasurementSet set =
        spr::synthesize_measurements(*model, traj, map, noise_sigma, seed);
    const spr::LeastSquaresResult solution = spr::solve_base_params(set.W_r, set.n_meas);
    spr::RecoveryReport report = spr::recovery_report(solution, *model, map);
    report.noise_sigma = noise_sigma;
    report.seed = seed;
    if (out_json_path != nullptr) {
      spr::write_text_atomic(out_json_path, spr::recovery_to_json(report) + "\n");
    }
    return SPR_OK;
  });
}

spr_status spr_cmd_simulate(const char* robot, const char* controller,
                            const char* trajectory_json, const char* gains_json,
                            const char* out_csv_path, const char* out_metrics_json_path) {
  return wrap(SPR_CONFIG_ERROR, [&] {
    const auto model = resolve_robot(robot);
    const spr::Trajectory traj = trajectory_json
                                     ? spr::trajectory_from_json(trajectory_json, *model)
                                     : spr::default_verification_trajectory(*model);
    nlohmann::json gains = nlohmann::json::object();
    if (gains_json != nullptr) {
      try {
        gains = nlohmann::json::parse(gains_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw spr::ConfigError(std::string("gains config: ") + e.what());
      }
    }

    const std::string kind = controller ? controller : "";
    const int m = model->dof();
    spr::ControlRun run;
    spr::VecX pi_true = spr::assemble_pi(*model);
    if (kind == "idc") {
      const spr::MatX kp = gain_matrix(gains, "kp", m, 100.0);
      const spr::MatX kd = gain_matrix(gains, "kd", m, 20.0);
      const double scale = gains.value("mass_scale", 1.0);
      run = spr::simulate_idc(*model, traj, kp, kd, scale);
    } else if (kind == "slotine-li") {
      // Defaults sized for the shipped robots' mass-matrix scale (~1e-2):
      // the sliding gain acts directly as torque per unit s.
      const spr::MatX k = gain_matrix(gains, "k", m, 1.0);
      const spr::MatX lambda = gain_matrix(gains, "lambda", m, 5.0);
      const int full = 9 * model->body_count();
      const spr::MatX gamma = gain_matrix(gains, "gamma", full, 0.1);
      const double pi_scale = gains.value("pi_scale", 1.0);
      const spr::VecX pi_hat0 = pi_scale * pi_true;
      std::unique_ptr<spr::ReductionMap> map;
      if (gains.value("reduced", false)) {
        const int min_samples = (full + m - 1) / m;
        const std::uint64_t seed = gains.value("seed", 1ull);
        const spr::ObservationMatrix obs = spr::observation_matrix(
            *model, min_samples + 30, seed, /*slotine_li_rows=*/true);
        map = std::make_unique<spr::ReductionMap>(spr::reduction_map(obs.W));
        pi_true = spr::reduce_pi(pi_true, *map);
      }
      run = spr::simulate_slotine_li(*model, traj, k, lambda, gamma, pi_hat0, map.get());
    } else {
      throw spr::ConfigError("controller must be \"idc\" or \"slotine-li\"");
    }

    if (out_csv_path != nullptr) {
      std::vector<std::string> columns{"t"};
      for (int i = 1; i <= m; ++i) columns.push_back("e" + std::to_string(i));
      for (int i = 1; i <= m; ++i) columns.push_back("s" + std::to_string(i));
      for (int i = 1; i <= model->actuators(); ++i)
        columns.push_back("tau" + std::to_string(i));
      columns.push_back("pihat_norm");
      std::vector<std::vector<double>> rows;
      for (size_t s = 0; s < run.t.size(); ++s) {
        std::vector<double> row{run.t[s]};
        for (int i = 0; i < m; ++i) row.push_back(run.e[s](i));
        for (int i = 0; i < m; ++i) row.push_back(run.s[s](i));
        for (int i = 0; i < model->actuators(); ++i) row.push_back(run.tau[s](i));
        row.push_back(s < run.pi_hat.size() ? run.pi_hat[s].norm() : 0.0);
        rows.push_back(std::move(row));
      }
      spr::write_csv_atomic(
          out_csv_path,
          {"units: rad, N·m", resolved_robot_comment(robot), "controller: " + kind,
           "gains: " + (gains_json ? std::string(gains_json) : "(defaults)")},
          columns, rows);
    }
    if (out_metrics_json_path != nullptr) {
      const spr::RunMetrics metrics = spr::run_metrics(run, pi_true);
      spr::write_text_atomic(out_metrics_json_path,
                             spr::metrics_to_json(metrics, run.completed) + "\n");
    }
    if (!run.completed) {
      set_error("simulation halted: " + run.halt_reason);
      return SPR_NUMERICAL_ERROR;
    }
    return SPR_OK;
  });
}

}  // extern "C"
