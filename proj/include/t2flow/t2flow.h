/* t2flow.h - C interface to the t2flow areal-gauge T^2-symmetric
 * vacuum Einstein flow simulator.
 *
 * The library evolves the first-order system for (V, Q, rho, l) on a
 * periodic grid, generates constraint-satisfying initial data, computes
 * the monitored scalar diagnostics (conserved quantities, energy
 * hierarchy, corrected energy, attractor variables), integrates the
 * closed-form/ODE reference models, and fits asymptotic rates and limits
 * from diagnostic time series.
 *
 * All functions are thread-safe as long as no two threads touch the same
 * t2f_state. Error details for the calling thread are available from
 * t2f_last_error().
 */
#ifndef T2FLOW_H
#define T2FLOW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define T2F_API __declspec(dllexport)
#else
#  define T2F_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The CLI maps these directly onto process exit codes. */
typedef enum t2f_status {
    T2F_OK             = 0,
    T2F_ERR_USAGE      = 2,   /* precondition / invalid argument */
    T2F_ERR_CONSTRAINT = 3,   /* momentum constraint not solvable */
    T2F_ERR_EVOLUTION  = 4,   /* non-finite field, step cap, range overflow */
    T2F_ERR_ANALYSIS   = 5,   /* fit/oracle failure */
    T2F_ERR_IO         = 6    /* file not readable/writable, bad format */
} t2f_status;

/* Initial data families. */
typedef enum t2f_mode {
    T2F_MODE_KASNER             = 0,
    T2F_MODE_POLARISED_RANDOM   = 1,
    T2F_MODE_B0_RANDOM          = 2,
    T2F_MODE_GENERIC_RANDOM     = 3,
    T2F_MODE_PSEUDO_HOMOGENEOUS = 4,
    T2F_MODE_NEAR_ATTRACTOR     = 5
} t2f_mode;

typedef enum t2f_field {
    T2F_FIELD_V    = 0,
    T2F_FIELD_Q    = 1,
    T2F_FIELD_RHO  = 2,
    T2F_FIELD_ELL  = 3,
    T2F_FIELD_PI_V = 4,
    T2F_FIELD_PI_Q = 5
} t2f_field;

/* Opaque PDE state: tau, twist flag and the six grid arrays. */
typedef struct t2f_state t2f_state;

/* Recipe for random constraint-satisfying initial data. */
typedef struct t2f_sampler_spec {
    int      mode;       /* t2f_mode */
    uint64_t seed;
    int      m_max;      /* highest Fourier mode; must be < N/4 */
    double   amplitude;  /* RMS scale of sampled fields */
    double   target_b;   /* desired conserved B; forced 0 for polarised/b0 */
    double   ell_mean;   /* additive constant of l */
    double   rho0;       /* constant initial rho profile value */
    double   kasner_a, kasner_b, kasner_c;
} t2f_sampler_spec;

T2F_API void t2f_sampler_spec_defaults(t2f_sampler_spec* spec);

typedef struct t2f_evolve_config {
    double cfl_lambda;      /* Courant factor in (0,1], default 0.5 */
    double output_interval; /* tau spacing of diagnostic records, > 0 */
    long   max_steps;       /* safety cap on total steps */
    int    filter_enabled;  /* spectral low-pass (zero top 1/3 modes) */
} t2f_evolve_config;

T2F_API void t2f_evolve_config_defaults(t2f_evolve_config* cfg);

/* One time slice of every monitored scalar. */
typedef struct t2f_diagnostics {
    double tau;
    double a_const;             /* A = <pi_V - pi_Q Q> */
    double b_const;             /* B = <pi_Q> */
    double energy;              /* E = <e^{rho-2tau} J> */
    double volume;              /* Pi = <e^rho> */
    double twist_y;             /* Y = <e^{l+rho+2tau}> */
    double correction;          /* Lambda */
    double corrected_h;         /* H = Pi (E + Lambda) */
    double c_var, d_var;        /* attractor variables; NaN if H <= 0 */
    double omega;               /* Omega error term */
    double f_bound;             /* F of the bootstrap */
    double f_tilde_bound;       /* F-tilde of the bootstrap */
    double s_diag, t_diag;      /* S, T phase-plot variables */
    double ev_diag, eq_diag;    /* E_V, E_Q weighted energies */
    double w_diag;              /* W = log|<V_tau e^{rho-tau/2}>| */
    double constraint_residual; /* max-norm momentum constraint defect */
    double rho_min;             /* min_theta rho */
    double el_wmean;            /* normalized e^{rho-tau/2}-weighted <e^l> */
    double j_wmean;             /* <e^{rho-2tau}J> / <e^{rho-2tau}> */
    double v_mean;              /* <V> */
    int    cd_valid;            /* 0 when corrected_h <= 0 */
    int    omega_bound_ok;      /* |Omega| <= e^tau E <e^{l+rho+2tau}J> ? */
} t2f_diagnostics;

typedef void (*t2f_record_cb)(const t2f_diagnostics* rec, void* user);

/* -------- state lifecycle -------- */

/* Generate initial data on an n_points grid (even, >= 16). */
T2F_API t2f_status t2f_state_generate(const t2f_sampler_spec* spec,
                                      uint32_t n_points, t2f_state** out);

/* Build a state directly from arrays (each of length n_points). */
T2F_API t2f_status t2f_state_make(uint32_t n_points, double tau, int twist,
                                  const double* v, const double* q,
                                  const double* rho, const double* ell,
                                  const double* pi_v, const double* pi_q,
                                  t2f_state** out);

T2F_API t2f_state* t2f_state_clone(const t2f_state* s);
T2F_API void       t2f_state_free(t2f_state* s);

T2F_API uint32_t t2f_state_n(const t2f_state* s);
T2F_API double   t2f_state_tau(const t2f_state* s);
T2F_API int      t2f_state_twist(const t2f_state* s);
T2F_API t2f_status t2f_state_get_field(const t2f_state* s, t2f_field which,
                                       double* buf);

/* Full diagnostics record. rho0_ref is the run's initial min-rho entering
 * the F bound; pass NaN to use the state's own rho_min. */
T2F_API t2f_status t2f_state_diagnostics(const t2f_state* s, double rho0_ref,
                                         t2f_diagnostics* out);

/* CFL-limited timestep lambda * spacing / max_j e^{tau - rho_j}. */
T2F_API t2f_status t2f_cfl_dt(const t2f_state* s, double cfl_lambda,
                              double* dt);

/* -------- checkpoints (binary, bit-exact round trip) -------- */

T2F_API t2f_status t2f_state_save(const t2f_state* s, const char* path);
T2F_API t2f_status t2f_state_load(const char* path, t2f_state** out);

/* -------- evolution -------- */

/* Advance the state to tau_end with RK4 under CFL control, invoking
 * on_record (may be NULL) at each output time. On error the state holds
 * the last completed step. */
T2F_API t2f_status t2f_evolve(t2f_state* s, double tau_end,
                              const t2f_evolve_config* cfg,
                              t2f_record_cb on_record, void* user);

/* -------- smallness report (bootstrap hypotheses) -------- */

typedef enum t2f_condition {
    T2F_COND_A_SMALL = 0,   /* |A| < 1 */
    T2F_COND_RHO0_POSITIVE, /* min rho > 0 */
    T2F_COND_C_SMALL,       /* |c| < eps */
    T2F_COND_D_SMALL,       /* |d| < eps */
    T2F_COND_PIEH_NEAR_ONE, /* |Pi E / H - 1| < 1 */
    T2F_COND_S0_WINDOW,     /* eps^-1 / 2 < e^{s0} < 2 eps^-1 */
    T2F_COND_H_UPPER,       /* e^{s0} H + C1 sqrt(eps) < M eps e^{s0} */
    T2F_COND_H_LOWER,       /* 1/M < e^{s0} H - C1 sqrt(eps) */
    T2F_COND_COUNT
} t2f_condition;

typedef struct t2f_smallness_report {
    double eps, m_cap, c1;
    double value[T2F_COND_COUNT]; /* measured quantity per condition */
    int    ok[T2F_COND_COUNT];
    int    evaluable[T2F_COND_COUNT];
} t2f_smallness_report;

T2F_API t2f_status t2f_check_smallness(const t2f_state* s, double eps,
                                       double m_cap, double c1,
                                       t2f_smallness_report* out);
T2F_API const char* t2f_condition_name(int cond);

/* -------- reference models -------- */

/* Polarised Kasner closed form: V = a tau + b, lhat = (a^2/2 - 2) tau + c. */
T2F_API void t2f_kasner_exact(double a, double b, double c, double tau,
                              double* v, double* lhat);

/* Trajectory sample callback: y has ny components at time tau. */
typedef void (*t2f_ode_cb)(double tau, const double* y, int ny, void* user);

/* Pseudo-homogeneous reduction. init = [V, V_tau, Q, pi_Q, rho, l] at
 * tau = 0 implicit start time init_tau; samples are 6-tuples
 * [V, V_tau, Q, Q_tau, rho, l] every sample_interval. */
T2F_API t2f_status t2f_ph_ode(const double init[6], double init_tau,
                              double tau_end, double tol,
                              double sample_interval,
                              t2f_ode_cb cb, void* user);

/* (c-bar, d-bar) attractor ODE; samples are pairs [c, d]. */
T2F_API t2f_status t2f_cd_ode(double c0, double d0, double tau_end,
                              double tol, double sample_interval,
                              t2f_ode_cb cb, void* user);

/* Linearization of the cd system at its fixed point: row-major 2x2 matrix
 * and the complex eigenvalue pair re +- i*im. */
T2F_API void t2f_cd_linearization(double matrix[4], double* eig_re,
                                  double* eig_im);
T2F_API void t2f_cd_fixed_point(double* c_star, double* d_star);

/* -------- analysis / fitting -------- */

typedef struct t2f_rate_fit {
    double exponent;     /* fitted log-slope (or C_V for t2f_fit_cv) */
    double amplitude;
    double limit;        /* fitted asymptotic constant when applicable */
    double tau_lo, tau_hi;
    double residual_rms;
    int    converged;
} t2f_rate_fit;

/* Default fit window: last half of [tau_first, tau_last] minus the
 * final 2 percent. */
T2F_API void t2f_default_window(double tau_first, double tau_last,
                                double* tau_lo, double* tau_hi);

T2F_API t2f_status t2f_fit_log_slope(const double* taus, const double* values,
                                     size_t n, double tau_lo, double tau_hi,
                                     t2f_rate_fit* out);
T2F_API t2f_status t2f_estimate_limit(const double* taus, const double* values,
                                      size_t n, double tau_lo, double tau_hi,
                                      t2f_rate_fit* out);
T2F_API t2f_status t2f_fit_cv(const double* taus, const double* values,
                              size_t n, double tau_lo, double tau_hi,
                              t2f_rate_fit* out);
T2F_API t2f_status t2f_oscillation_period(const double* taus,
                                          const double* values, size_t n,
                                          double tau_lo, double tau_hi,
                                          double* period);

/* Observed order p = log2(||a-b|| / ||b-c||) in discrete L2. Inputs may
 * be equal-length series or fields of lengths N, 2N, 4N (finer fields are
 * restricted to the coarse points). roundoff_limited is set when a
 * difference norm sits at rounding level and p is not meaningful. */
T2F_API t2f_status t2f_convergence_order(const double* coarse, size_t n_coarse,
                                         const double* mid, size_t n_mid,
                                         const double* fine, size_t n_fine,
                                         double* order, int* roundoff_limited);

/* Last Pi^{-1} e^rho profile of the sequence (buffer of n_points) plus the
 * fitted decay rate of successive max-norm profile differences. */
T2F_API t2f_status t2f_rho_profile_limit(const t2f_state* const* states,
                                         size_t count, double* profile,
                                         t2f_rate_fit* cauchy_rate);

/* -------- misc -------- */

T2F_API const char* t2f_last_error(void);
T2F_API const char* t2f_version(void);

#ifdef __cplusplus
}
#endif

#endif /* T2FLOW_H */
