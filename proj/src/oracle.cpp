#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <limits>

#include "dynamics.hpp"
#include "errors.hpp"
#include "json.hpp"

namespace spr {

namespace {

std::string iso_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double rel_denominator(const VecX& reference) {
  return std::max(1.0, reference.cwiseAbs().maxCoeff());
}

/// Kinetic-energy metric Sigma W_b^T (R I R^T) W_b built from FD angular
/// maps; depends on position-level rotations only.
MatX oracle_mass_matrix(const RobotModel& model, const VecX& theta, double step = 1e-6) {
  const int m = model.dof();
  const int k = model.body_count();
  const std::vector<Mat3> r0 = model.body_rotations(theta);

  std::vector<MatX> w_maps(k, MatX::Zero(3, m));
  for (int i = 0; i < m; ++i) {
    VecX tp = theta, tm = theta;
    tp(i) += step;
    tm(i) -= step;
    const std::vector<Mat3> rp = model.body_rotations(tp);
    const std::vector<Mat3> rm = model.body_rotations(tm);
    for (int b = 0; b < k; ++b) {
      const Mat3 dr = (rp[b] - rm[b]) / (2.0 * step);
      w_maps[b].col(i) = unskew(dr * r0[b].transpose());
    }
  }
  MatX mass = MatX::Zero(m, m);
  const auto& bodies = model.bodies();
  for (int b = 0; b < k; ++b) {
    const Mat3 inertia = r0[b] * bodies[b].i_pivot_body() * r0[b].transpose();
    mass += w_maps[b].transpose() * inertia * w_maps[b];
  }
  return mass;
}

double oracle_potential(const RobotModel& model, const VecX& theta) {
  const std::vector<Mat3> r = model.body_rotations(theta);
  const auto& bodies = model.bodies();
  double v = 0.0;
  for (size_t b = 0; b < bodies.size(); ++b) {
    v -= bodies[b].mass * model.gravity().dot(r[b] * bodies[b].cm_body);
  }
  return v;
}

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["robot"] = report.robot;
  j["timestamp"] = report.timestamp;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"check", c.name},
                           {"max_err", c.max_err},
                           {"tol", c.tolerance},
                           {"pass", c.pass},
                           {"n", c.sample_count},
                           {"seed", c.seed},
                           {"note", c.note}});
  }
  return j.dump(2);
}

VerificationReport report_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  VerificationReport report;
  report.robot = j.at("robot").get<std::string>();
  report.timestamp = j.at("timestamp").get<std::string>();
  for (const auto& cj : j.at("checks")) {
    CheckResult c;
    c.name = cj.at("check").get<std::string>();
    c.max_err = cj.at("max_err").get<double>();
    c.tolerance = cj.at("tol").get<double>();
    c.pass = cj.at("pass").get<bool>();
    c.sample_count = cj.at("n").get<int>();
    c.seed = cj.at("seed").get<std::uint64_t>();
    c.note = cj.value("note", "");
    report.checks.push_back(std::move(c));
  }
  return report;
}

MatX fd_body_angular_map(const RobotModel& model, int body, const VecX& theta, double step) {
  const int m = model.dof();
  const Mat3 r0 = model.body_rotations(theta)[body];
  MatX w(3, m);
  for (int i = 0; i < m; ++i) {
    VecX tp = theta, tm = theta;
    tp(i) += step;
    tm(i) -= step;
    const Mat3 dr =
        (model.body_rotations(tp)[body] - model.body_rotations(tm)[body]) / (2.0 * step);
    w.col(i) = unskew(dr * r0.transpose());
  }
  return w;
}

CheckResult fd_jacobian_check(const RobotModel& model, int sample_count, std::uint64_t seed,
                              double tol) {
  CheckResult result;
  result.name = "fd-jacobian";
  result.tolerance = tol;
  result.sample_count = sample_count;
  result.seed = seed;

  const int m = model.dof();
  const double step = 1e-6;
  StateSampler sampler(model, seed);
  double max_err = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    const TaskState st = sampler.next();
    const KinematicsEval kin = model.eval_kinematics(st.theta, st.theta_dot);
    for (int b = 0; b < model.body_count(); ++b) {
      const MatX w_fd = fd_body_angular_map(model, b, st.theta, step);
      const Vec3 omega_err = w_fd * st.theta_dot - kin.body[b].Jw * st.theta_dot;
      max_err = std::max(max_err, omega_err.cwiseAbs().maxCoeff());
    }
    // Jw depends on theta only, so its rate is a directional derivative.
    const VecX zero = VecX::Zero(m);
    for (int b = 0; b < model.body_count(); ++b) {
      MatX jdot_fd = MatX::Zero(3, m);
      for (int i = 0; i < m; ++i) {
        VecX tp = st.theta, tm = st.theta;
        tp(i) += step;
        tm(i) -= step;
        jdot_fd += st.theta_dot(i) / (2.0 * step) *
                   (model.eval_kinematics(tp, zero).body[b].Jw -
                    model.eval_kinematics(tm, zero).body[b].Jw);
      }
      max_err = std::max(max_err, (jdot_fd - kin.body[b].Jw_dot).cwiseAbs().maxCoeff());
    }
  }
  result.max_err = max_err;
  result.pass = max_err < tol;
  return result;
}

CheckResult lagrange_oracle_check(const RobotModel& model, const Trajectory& trajectory,
                                  double tol, int stride) {
  CheckResult result;
  result.name = "lagrange-oracle";
  result.tolerance = tol;

  const int m = model.dof();
  const double outer = 1e-4;  // nested second-derivative step
  double max_err = 0.0;
  int n = 0;
  for (int idx = 0; idx < trajectory.samples(); idx += stride) {
    const VecX& th = trajectory.theta[idx];
    const VecX& thd = trajectory.theta_dot[idx];
    const VecX& thdd = trajectory.theta_ddot[idx];

    const VecX n_closed = generalized_force(model, th, thd, thdd);

    const MatX mass = oracle_mass_matrix(model, th);
    std::vector<MatX> dmass(m);
    VecX dv(m);
    for (int i = 0; i < m; ++i) {
      VecX tp = th, tm = th;
      tp(i) += outer;
      tm(i) -= outer;
      dmass[i] = (oracle_mass_matrix(model, tp) - oracle_mass_matrix(model, tm)) /
                 (2.0 * outer);
      VecX vp = th, vm = th;
      vp(i) += 1e-6;
      vm(i) -= 1e-6;
      dv(i) = (oracle_potential(model, vp) - oracle_potential(model, vm)) / 2e-6;
    }
    MatX mdot = MatX::Zero(m, m);
    VecX dt_dtheta(m);
    for (int i = 0; i < m; ++i) {
      mdot += thd(i) * dmass[i];
      dt_dtheta(i) = 0.5 * thd.dot(dmass[i] * thd);
    }
    const VecX n_oracle = mdot * thd + mass * thdd - dt_dtheta + dv;
    max_err = std::max(max_err, (n_closed - n_oracle).cwiseAbs().maxCoeff());
    ++n;
  }
  result.max_err = max_err;
  result.sample_count = n;
  result.pass = max_err < tol;
  return result;
}

std::vector<CheckResult> regressor_equivalence_check(const RobotModel& model,
                                                     int sample_count, std::uint64_t seed,
                                                     double tol) {
  const int m = model.dof();
  const int min_samples = (9 * model.body_count() + m - 1) / m;
  // S-L rows span the linear ones too, so one map serves all four checks.
  const ObservationMatrix obs =
      observation_matrix(model, min_samples + 30, seed + 1000, /*slotine_li_rows=*/true);
  const ReductionMap map = reduction_map(obs.W);
  const VecX pi = assemble_pi(model);
  const VecX pi_r = reduce_pi(pi, map);

  double err_lin_full = 0.0, err_lin_red = 0.0, err_sl_full = 0.0, err_sl_red = 0.0;
  StateSampler sampler(model, seed);
  std::mt19937_64 ref_rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (int s = 0; s < sample_count; ++s) {
    const TaskState st = sampler.next();
    const DynamicsMatrices dyn = dynamics_matrices(model, st.theta, st.theta_dot);

    const VecX n_exp = dyn.M * st.theta_ddot + dyn.C * st.theta_dot + dyn.g;
    const MatX y = linear_regressor(model, st.theta, st.theta_dot, st.theta_ddot);
    const double den = rel_denominator(n_exp);
    err_lin_full = std::max(err_lin_full, (n_exp - y * pi).cwiseAbs().maxCoeff() / den);
    err_lin_red = std::max(
        err_lin_red, (n_exp - reduce_regressor(y, map) * pi_r).cwiseAbs().maxCoeff() / den);

    VecX thr_dot(m), thr_ddot(m);
    for (int i = 0; i < m; ++i) {
      thr_dot(i) = uniform(ref_rng, -2.0, 2.0);
      thr_ddot(i) = uniform(ref_rng, -10.0, 10.0);
    }
    const VecX n_sl = dyn.M * thr_ddot + dyn.C * thr_dot + dyn.g;
    const MatX ys = slotine_li_regressor(model, st.theta, st.theta_dot, thr_dot, thr_ddot);
    const double den_sl = rel_denominator(n_sl);
    err_sl_full = std::max(err_sl_full, (n_sl - ys * pi).cwiseAbs().maxCoeff() / den_sl);
    err_sl_red = std::max(
        err_sl_red,
        (n_sl - reduce_regressor(ys, map) * pi_r).cwiseAbs().maxCoeff() / den_sl);
  }

  auto make = [&](const std::string& name, double err) {
    CheckResult c;
    c.name = name;
    c.max_err = err;
    c.tolerance = tol;
    c.pass = err < tol;
    c.sample_count = sample_count;
    c.seed = seed;
    return c;
  };
  return {make("regressor-linear-full", err_lin_full),
          make("regressor-linear-reduced", err_lin_red),
          make("regressor-slotine-li-full", err_sl_full),
          make("regressor-slotine-li-reduced", err_sl_red)};
}

Trajectory default_verification_trajectory(const RobotModel& model) {
  const double deg = M_PI / 180.0;
  if (model.name() == "diamond") {
    VecX from(2), to(2);
    from << 0.0, 70.0 * deg;
    to << 120.0 * deg, 10.0 * deg;
    return cubic_trajectory(from, to, 1.0);
  }
  if (model.name() == "3rrr") {
    VecX from = VecX::Zero(3), to(3);
    to << 10.0 * deg, 30.0 * deg, 20.0 * deg;
    return cubic_trajectory(from, to, 1.0);
  }
  const VecX lo = model.workspace_lower();
  const VecX hi = model.workspace_upper();
  return cubic_trajectory(lo + 0.25 * (hi - lo), lo + 0.75 * (hi - lo), 1.0);
}

VerificationReport property_suite(const RobotModel& model, const PropertyConfig& config) {
  VerificationReport report;
  report.robot = model.name();
  report.timestamp = iso_now();

  const int m = model.dof();

  {  // Positive definiteness of M (reported as -min eigenvalue).
    CheckResult c;
    c.name = "mass-positive-definite";
    c.tolerance = 0.0;
    c.sample_count = config.mass_scan_samples;
    c.seed = config.seed;
    c.note = "value is -min(eig M); negative means positive definite";
    StateSampler sampler(model, config.seed);
    double worst = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < config.mass_scan_samples; ++s) {
      const TaskState st = sampler.next();
      const MatX mass = mass_matrix(model, st.theta);
      Eigen::SelfAdjointEigenSolver<MatX> eig(mass);
      worst = std::max(worst, -eig.eigenvalues().minCoeff());
    }
    c.max_err = worst;
    c.pass = worst < 0.0;
    report.checks.push_back(std::move(c));
  }

  {  // Antisymmetry of Mdot - 2C, with Mdot from a directional FD of M.
    CheckResult c;
    c.name = "coriolis-antisymmetry";
    c.tolerance = config.antisymmetry_tol;
    c.sample_count = config.antisymmetry_samples;
    c.seed = config.seed + 1;
    StateSampler sampler(model, c.seed);
    const double h = 1e-5;
    double worst = 0.0;
    for (int s = 0; s < config.antisymmetry_samples; ++s) {
      const TaskState st = sampler.next();
      // Fourth-order directional difference keeps the FD noise well under
      // the 1e-10 acceptance band.
      const VecX& d = st.theta_dot;
      const MatX mdot = (mass_matrix(model, st.theta - 2.0 * h * d) -
                         8.0 * mass_matrix(model, st.theta - h * d) +
                         8.0 * mass_matrix(model, st.theta + h * d) -
                         mass_matrix(model, st.theta + 2.0 * h * d)) /
                        (12.0 * h);
      const MatX a = mdot - 2.0 * coriolis_matrix(model, st.theta, st.theta_dot);
      worst = std::max(worst, (a + a.transpose()).cwiseAbs().maxCoeff());
    }
    c.max_err = worst;
    c.pass = worst < c.tolerance;
    report.checks.push_back(std::move(c));
  }

  {  // Gravity vector equals the gradient of the FD potential.
    CheckResult c;
    c.name = "gravity-gradient";
    c.tolerance = config.gravity_tol;
    c.sample_count = config.antisymmetry_samples;
    c.seed = config.seed + 2;
    StateSampler sampler(model, c.seed);
    double worst = 0.0;
    for (int s = 0; s < config.antisymmetry_samples; ++s) {
      const TaskState st = sampler.next();
      const VecX g = gravity_vector(model, st.theta);
      for (int i = 0; i < m; ++i) {
        VecX tp = st.theta, tm = st.theta;
        tp(i) += 1e-6;
        tm(i) -= 1e-6;
        const double grad =
            (oracle_potential(model, tp) - oracle_potential(model, tm)) / 2e-6;
        worst = std::max(worst, std::abs(g(i) - grad));
      }
    }
    c.max_err = worst;
    c.pass = worst < c.tolerance;
    report.checks.push_back(std::move(c));
  }

  {  // Conservative free rotation: zero gravity, zero torque, energy constant.
    CheckResult c;
    c.name = "energy-conservation";
    c.tolerance = config.energy_tol;
    c.seed = config.seed;
    const auto free_model = model.clone_with_gravity(Vec3::Zero());
    const VecX theta0 = 0.5 * (model.workspace_lower() + model.workspace_upper());
    VecX theta_dot0(m);
    for (int i = 0; i < m; ++i) theta_dot0(i) = (i % 2 == 0) ? 0.1 : -0.1;
    const TorquePolicy zero_torque = [&](double, const VecX&, const VecX&) {
      return VecX::Zero(model.actuators()).eval();
    };
    const IntegratedTrajectory run =
        integrate_rk4(*free_model, theta0, theta_dot0, zero_torque, 1e-4, 1.0);
    c.sample_count = static_cast<int>(run.t.size());
    if (!run.completed) {
      c.max_err = std::numeric_limits<double>::infinity();
      c.pass = false;
      c.note = "integration halted: " + run.halt_reason;
    } else {
      const double e0 = kinetic_energy(*free_model, run.theta.front(), run.theta_dot.front());
      double worst = 0.0;
      for (size_t i = 0; i < run.t.size(); ++i) {
        const double e = kinetic_energy(*free_model, run.theta[i], run.theta_dot[i]);
        worst = std::max(worst, std::abs(e - e0));
      }
      c.max_err = worst / std::max(std::abs(e0), 1e-12);
      c.pass = c.max_err < c.tolerance;
    }
    report.checks.push_back(std::move(c));
  }

  report.checks.push_back(
      fd_jacobian_check(model, config.jacobian_samples, config.seed + 3, config.jacobian_tol));

  {
    Trajectory fallback;
    const Trajectory* traj = config.trajectory;
    if (traj == nullptr) {
      fallback = default_verification_trajectory(model);
      traj = &fallback;
    }
    report.checks.push_back(lagrange_oracle_check(model, *traj, config.lagrange_tol));
  }

  for (auto& c : regressor_equivalence_check(model, config.regressor_samples,
                                             config.seed + 4, config.regressor_tol)) {
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace spr
