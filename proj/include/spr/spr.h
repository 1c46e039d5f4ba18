/* C interface to the spherical-parallel-robot dynamics library.
 *
 * All functions are thread-compatible: distinct models may be used from
 * distinct threads; the error string is thread-local. Matrices are row-major
 * dense doubles sized by the model queries below.
 */
#ifndef SPR_SPR_H
#define SPR_SPR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spr_status {
  SPR_OK = 0,              /* success / all checks passed */
  SPR_CHECK_FAILED = 1,    /* a verification or acceptance check failed */
  SPR_CONFIG_ERROR = 2,    /* bad usage, malformed or inconsistent config */
  SPR_NUMERICAL_ERROR = 3  /* singularity, rank deficiency, unreachable pose */
} spr_status;

typedef struct spr_model spr_model;

/* Last error message for the calling thread; empty string when none. */
const char* spr_last_error(void);

/* "diamond" or "3rrr". NULL on failure (see spr_last_error). */
spr_model* spr_model_create_builtin(const char* name);

/* Robot JSON: {"type":"diamond"|"rrr3", ...overrides...}. NULL on failure. */
spr_model* spr_model_create_json(const char* json_text);

void spr_model_destroy(spr_model* model);

int spr_model_dof(const spr_model* model);        /* m */
int spr_model_actuators(const spr_model* model);  /* j */
int spr_model_body_count(const spr_model* model); /* k */

/* out: m*m row-major. */
spr_status spr_mass_matrix(const spr_model* model, const double* theta, double* out);
spr_status spr_coriolis_matrix(const spr_model* model, const double* theta,
                               const double* theta_dot, double* out);
/* out: m. */
spr_status spr_gravity_vector(const spr_model* model, const double* theta, double* out);
/* out: j actuator torques. */
spr_status spr_inverse_dynamics(const spr_model* model, const double* theta,
                                const double* theta_dot, const double* theta_ddot,
                                double* out);
/* out: m accelerations. */
spr_status spr_forward_dynamics(const spr_model* model, const double* theta,
                                const double* theta_dot, const double* tau, double* out);
/* out: m x 9k row-major. */
spr_status spr_linear_regressor(const spr_model* model, const double* theta,
                                const double* theta_dot, const double* theta_ddot,
                                double* out);
spr_status spr_slotine_li_regressor(const spr_model* model, const double* theta,
                                    const double* theta_dot, const double* theta_r_dot,
                                    const double* theta_r_ddot, double* out);
/* out: 9k stacked inertial parameters. */
spr_status spr_pi_vector(const spr_model* model, double* out);

/* Command-level entry points (the CLI is a thin wrapper over these).
 * `robot` is a built-in name or robot-JSON text (detected by leading '{').
 * Trajectory/gain arguments are JSON text; NULL selects defaults.
 */
spr_status spr_cmd_torque(const char* robot, const char* trajectory_json,
                          const char* out_csv_path);
spr_status spr_cmd_verify(const char* robot, int samples, unsigned long long seed,
                          double tolerance_scale, const char* out_json_path);
spr_status spr_cmd_reduce(const char* robot, int samples, double tolerance,
                          unsigned long long seed, const char* out_json_path);
spr_status spr_cmd_identify(const char* robot, const char* trajectory_json,
                            double noise_sigma, unsigned long long seed,
                            const char* out_json_path);
spr_status spr_cmd_simulate(const char* robot, const char* controller,
                            const char* trajectory_json, const char* gains_json,
                            const char* out_csv_path, const char* out_metrics_json_path);

#ifdef __cplusplus
}
#endif

#endif /* SPR_SPR_H */
