/* C API for the double-tripod optical torque library.
 *
 * All functions return DTT_OK (0) on success or a DTT_ERR_* code; the last
 * error message for the calling thread is available via dtt_last_error().
 * Parameter sets are opaque handles created with dtt_params_create() and
 * released with dtt_params_destroy().
 *
 * Units: frequencies in Gamma, lengths in the beam waist w.
 */

#ifndef DTTORQUE_H
#define DTTORQUE_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DTT_API __declspec(dllexport)
#else
#define DTT_API __attribute__((visibility("default")))
#endif

/* Error codes. The CLI maps PARTIAL -> exit 2, INVALID -> 3, TIMEOUT -> 4. */
#define DTT_OK 0
#define DTT_ERR_DOMAIN 1
#define DTT_ERR_PARTIAL 2
#define DTT_ERR_INVALID 3
#define DTT_ERR_TIMEOUT 4
#define DTT_ERR_POLE 5
#define DTT_ERR_SINGULAR 6
#define DTT_ERR_PRECONDITION 7
#define DTT_ERR_IO 8
#define DTT_ERR_DEGENERATE 9

/* Sweep axes */
#define DTT_AXIS_DELTA 0
#define DTT_AXIS_PHI 1
#define DTT_AXIS_THETA 2
#define DTT_AXIS_DELTA2 3

/* Solvers */
#define DTT_SOLVER_CLOSED 0
#define DTT_SOLVER_GENERAL 1
#define DTT_SOLVER_AUTO 2

/* Output formats */
#define DTT_FORMAT_CSV 0
#define DTT_FORMAT_JSON 1

/* Regime labels */
#define DTT_REGIME_COUPLED_LAMBDA 0
#define DTT_REGIME_DOUBLE_LAMBDA 1
#define DTT_REGIME_DECOUPLED_LAMBDAS 2
#define DTT_REGIME_GENERIC 3

typedef struct dtt_params dtt_params;

/* Last error message of the calling thread ("" when none). */
DTT_API const char* dtt_last_error(void);

DTT_API const char* dtt_regime_name(int regime);

/* --- parameter handle ------------------------------------------------- */

/* Defaults: Omega = 1 with all phases zero, probes 0.1, l = 1, k = 1,
 * w = 1, Delta = 0, delta = 0, Gamma = 1. */
DTT_API dtt_params* dtt_params_create(void);
DTT_API void dtt_params_destroy(dtt_params* p);
DTT_API dtt_params* dtt_params_clone(const dtt_params* p);

/* Equal-amplitude control fields Omega_i = omega exp(i phi_i). */
DTT_API int dtt_params_set_controls(dtt_params* p, double omega,
                                    double phi_a1, double phi_b1,
                                    double phi_a2, double phi_b2);
/* Four independent complex control Rabi frequencies. */
DTT_API int dtt_params_set_controls_complex(dtt_params* p, double a1_re,
                                            double a1_im, double a2_re,
                                            double a2_im, double b1_re,
                                            double b1_im, double b2_re,
                                            double b2_im);
DTT_API int dtt_params_set_probes(dtt_params* p, double amp_a, double amp_b);
DTT_API int dtt_params_set_beam(dtt_params* p, int l, double k, double waist);
DTT_API int dtt_params_set_detuning(dtt_params* p, double delta,
                                    double delta2, double gamma);

/* Readback: out = (Re,Im) of Omega_A1, Omega_A2, Omega_B1, Omega_B2. */
DTT_API int dtt_params_get_controls(const dtt_params* p, double out[8]);
DTT_API int dtt_params_get_probes(const dtt_params* p, double* amp_a,
                                  double* amp_b);
DTT_API int dtt_params_get_beam(const dtt_params* p, int* l, double* k,
                                double* waist);
DTT_API int dtt_params_get_detuning(const dtt_params* p, double* delta,
                                    double* delta2, double* gamma);

/* Derived phases phi, theta, wrapped into (-pi, pi]. */
DTT_API int dtt_reduce_phases(const dtt_params* p, double* phi, double* theta);

/* --- point evaluation -------------------------------------------------- */

/* Laguerre-Gaussian radial profile G(r). */
DTT_API int dtt_lg_profile(int l, double waist, double r, double* out);

/* Steady state via the general 4x4 solve; out = (Re,Im) of
 * rho_a, rho_b, rho_1, rho_2. Probe amplitudes are taken at unit G. */
DTT_API int dtt_steady_state(const dtt_params* p, double out[8]);

/* Closed-form optical coherences; out = (Re,Im) of rho_a, rho_b. */
DTT_API int dtt_closed_form(const dtt_params* p, double out[4]);

/* Torque function tau (radial profile divided out). */
DTT_API int dtt_torque_function(const dtt_params* p, double* tau);

/* Axial torque T_z and force components at radius r. */
DTT_API int dtt_torque_at(const dtt_params* p, double r, double* t_z);
DTT_API int dtt_force_at(const dtt_params* p, double r, double* f_phi,
                         double* f_z);

/* Regime classification; any output pointer may be NULL. */
DTT_API int dtt_classify(const dtt_params* p, int* regime, double* c_b,
                         double* c_d, double* c_x, double* bright_overlap);

/* --- batch operations -------------------------------------------------- */

/* Sweeps tau over the axis and writes CSV/JSON to path.
 * Returns DTT_ERR_PARTIAL when some rows failed (written as NaN). */
DTT_API int dtt_spectrum_run(const dtt_params* p, int axis, double start,
                             double stop, int count, int solver, int format,
                             const char* path);

/* Loads a figure preset (fig2a..fig6b) into the handle; optionally returns
 * the preset's sweep axis/range. Outputs may be NULL. */
DTT_API int dtt_params_load_preset(dtt_params* p, const char* id, int* axis,
                                   double* start, double* stop, int* count);
/* Number of known presets and the id of preset #i. */
DTT_API int dtt_preset_count(void);
DTT_API const char* dtt_preset_id(int index);

/* Spatial map (r, azimuth, F_phi, F_z, T_z) as CSV. */
DTT_API int dtt_map_run(const dtt_params* p, double r_start, double r_stop,
                        int r_count, int azimuth_count, const char* path);

/* Integrates the Bloch equations to steady state; optional trajectory CSV.
 * out_state = (Re,Im) x (rho_a, rho_b, rho_1, rho_2); outputs may be NULL.
 * deviation is the max componentwise distance to the algebraic steady
 * state. Returns DTT_ERR_TIMEOUT when not converged by t_max. */
DTT_API int dtt_evolve(const dtt_params* p, double tol, double t_max,
                       const char* trajectory_path_or_null,
                       double out_state[8], double* t_final,
                       double* deviation);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DTTORQUE_H */
