#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <spr/spr.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {
struct ModelGuard {
  spr_model* m;
  explicit ModelGuard(spr_model* p) : m(p) {}
  ~ModelGuard() { spr_model_destroy(m); }
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path tmp(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("model creation and dimension queries") {
  spr_model* diamond = spr_model_create_builtin("diamond");
  REQUIRE(diamond != nullptr);
  ModelGuard g1(diamond);
  CHECK(spr_model_dof(diamond) == 2);
  CHECK(spr_model_actuators(diamond) == 2);
  CHECK(spr_model_body_count(diamond) == 4);

  spr_model* rrr3 = spr_model_create_builtin("3rrr");
  REQUIRE(rrr3 != nullptr);
  ModelGuard g2(rrr3);
  CHECK(spr_model_dof(rrr3) == 3);
  CHECK(spr_model_body_count(rrr3) == 7);
}

TEST_CASE("bad model name returns NULL and sets the error string") {
  spr_model* m = spr_model_create_builtin("delta");
  CHECK(m == nullptr);
  CHECK(std::strlen(spr_last_error()) > 0);
  spr_model* ok = spr_model_create_builtin("diamond");
  REQUIRE(ok != nullptr);
  spr_model_destroy(ok);
}

TEST_CASE("model from JSON") {
  spr_model* m = spr_model_create_json("{\"type\": \"rrr3\"}");
  REQUIRE(m != nullptr);
  CHECK(spr_model_dof(m) == 3);
  spr_model_destroy(m);
  CHECK(spr_model_create_json("{\"type\": \"unknown\"}") == nullptr);
  CHECK(spr_model_create_json("garbage") == nullptr);
}

TEST_CASE("mass matrix is symmetric positive on the diagonal") {
  spr_model* m = spr_model_create_builtin("diamond");
  REQUIRE(m != nullptr);
  ModelGuard g(m);
  const double theta[2] = {0.3, 0.9};
  double mm[4];
  REQUIRE(spr_mass_matrix(m, theta, mm) == SPR_OK);
  CHECK(mm[1] == doctest::Approx(mm[2]).epsilon(1e-12));
  CHECK(mm[0] > 0.0);
  CHECK(mm[3] > 0.0);
}

TEST_CASE("inverse and forward dynamics round trip") {
  spr_model* m = spr_model_create_builtin("3rrr");
  REQUIRE(m != nullptr);
  ModelGuard g(m);
  const double theta[3] = {0.1, -0.12, 0.2};
  const double theta_dot[3] = {0.4, -0.3, 0.2};
  const double theta_ddot[3] = {1.0, 0.5, -0.8};
  double tau[3], acc[3];
  REQUIRE(spr_inverse_dynamics(m, theta, theta_dot, theta_ddot, tau) == SPR_OK);
  REQUIRE(spr_forward_dynamics(m, theta, theta_dot, tau, acc) == SPR_OK);
  for (int i = 0; i < 3; ++i) CHECK(acc[i] == doctest::Approx(theta_ddot[i]).epsilon(1e-9));
}

TEST_CASE("regressor times pi matches M qdd + C qd + g") {
  spr_model* m = spr_model_create_builtin("diamond");
  REQUIRE(m != nullptr);
  ModelGuard g(m);
  const double theta[2] = {0.4, 0.8};
  const double theta_dot[2] = {0.5, -0.2};
  const double theta_ddot[2] = {1.0, 2.0};
  const int cols = 9 * spr_model_body_count(m);
  std::vector<double> y(2 * cols), pi(cols);
  double mm[4], cm[4], gv[2];
  REQUIRE(spr_linear_regressor(m, theta, theta_dot, theta_ddot, y.data()) == SPR_OK);
  REQUIRE(spr_pi_vector(m, pi.data()) == SPR_OK);
  REQUIRE(spr_mass_matrix(m, theta, mm) == SPR_OK);
  REQUIRE(spr_coriolis_matrix(m, theta, theta_dot, cm) == SPR_OK);
  REQUIRE(spr_gravity_vector(m, theta, gv) == SPR_OK);
  for (int r = 0; r < 2; ++r) {
    double lhs = gv[r];
    for (int c = 0; c < 2; ++c)
      lhs += mm[2 * r + c] * theta_ddot[c] + cm[2 * r + c] * theta_dot[c];
    double rhs = 0.0;
    for (int c = 0; c < cols; ++c) rhs += y[r * cols + c] * pi[c];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("singular pose maps to the numerical-error status") {
  spr_model* m = spr_model_create_builtin("diamond");
  REQUIRE(m != nullptr);
  ModelGuard g(m);
  const double theta[2] = {0.0, 1e-13};
  const double zero[2] = {0.0, 0.0};
  double tau[2];
  CHECK(spr_inverse_dynamics(m, theta, zero, zero, tau) == SPR_NUMERICAL_ERROR);
  CHECK(std::strlen(spr_last_error()) > 0);
}

TEST_CASE("torque command writes the expected CSV") {
  const auto path = tmp("spr_capi_torque.csv");
  REQUIRE(spr_cmd_torque("diamond", nullptr, path.string().c_str()) == SPR_OK);
  const std::string text = slurp(path);
  // 1001 samples at 1 kHz plus header; comment lines start with '#'.
  size_t data_rows = 0, comments = 0;
  bool header_seen = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0)
      ++comments;
    else if (!header_seen)
      header_seen = true;
    else
      ++data_rows;
  }
  CHECK(header_seen);
  CHECK(comments >= 1);
  CHECK(data_rows == 1001);
  std::filesystem::remove(path);
}

TEST_CASE("verify command passes at default tolerances and fails at absurd ones") {
  const auto path = tmp("spr_capi_verify.json");
  REQUIRE(spr_cmd_verify("diamond", 20, 1, 1.0, path.string().c_str()) == SPR_OK);
  CHECK(slurp(path).find("\"pass\"") != std::string::npos);
  CHECK(spr_cmd_verify("diamond", 20, 1, 1e-12, path.string().c_str()) ==
        SPR_CHECK_FAILED);
  std::filesystem::remove(path);
}

TEST_CASE("reduce command is seed-stable in the base dimension") {
  const auto a = tmp("spr_capi_reduce_a.json");
  const auto b = tmp("spr_capi_reduce_b.json");
  REQUIRE(spr_cmd_reduce("3rrr", 60, 1e-8, 1, a.string().c_str()) == SPR_OK);
  REQUIRE(spr_cmd_reduce("3rrr", 60, 1e-8, 2, b.string().c_str()) == SPR_OK);
  const std::string ja = slurp(a), jb = slurp(b);
  const auto dim = [](const std::string& s) {
    const auto pos = s.find("\"p\"");
    REQUIRE(pos != std::string::npos);
    return std::stoi(s.substr(s.find(':', pos) + 1));
  };
  CHECK(dim(ja) == 33);
  CHECK(dim(jb) == 33);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("identify command recovers the base parameters") {
  const auto path = tmp("spr_capi_identify.json");
  REQUIRE(spr_cmd_identify("diamond", nullptr, 0.0, 1, path.string().c_str()) == SPR_OK);
  const std::string json = slurp(path);
  const auto pos = json.find("\"max_rel_error\"");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(json.substr(json.find(':', pos) + 1)) < 1e-8);
  std::filesystem::remove(path);
}

TEST_CASE("simulate command config errors") {
  const auto path = tmp("spr_capi_sim.csv");
  CHECK(spr_cmd_simulate("diamond", "pid", nullptr, nullptr, path.string().c_str(),
                         nullptr) == SPR_CONFIG_ERROR);
  CHECK(spr_cmd_simulate("diamond", "idc", nullptr, "{not json", path.string().c_str(),
                         nullptr) == SPR_CONFIG_ERROR);
}

TEST_CASE("simulate command runs the computed-torque controller") {
  const auto csv = tmp("spr_capi_sim_run.csv");
  const auto metrics = tmp("spr_capi_sim_metrics.json");
  REQUIRE(spr_cmd_simulate("diamond", "idc", nullptr, nullptr, csv.string().c_str(),
                           metrics.string().c_str()) == SPR_OK);
  const std::string json = slurp(metrics);
  const auto pos = json.find("\"terminal_error\"");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(json.substr(json.find(':', pos) + 1)) < 1e-4);
  std::filesystem::remove(csv);
  std::filesystem::remove(metrics);
}
