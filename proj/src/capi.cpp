// extern-C surface over the C++ core. Every entry point catches, records
// the message in a thread-local slot and returns a status code.

#include "t2flow/t2flow.h"

#include "analysis.hpp"
#include "checkpoint.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "evolution.hpp"
#include "initial_data.hpp"
#include "reference.hpp"
#include "state.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

using namespace t2flow;

struct t2f_state {
    FieldState impl;
};

namespace {

thread_local std::string g_last_error;

t2f_status record_error(const std::exception& e, t2f_status code) {
    g_last_error = e.what();
    return code;
}

template <typename Fn>
t2f_status guarded(Fn&& fn) {
    try {
        fn();
        return T2F_OK;
    } catch (const UsageError& e) {
        return record_error(e, T2F_ERR_USAGE);
    } catch (const ConstraintError& e) {
        return record_error(e, T2F_ERR_CONSTRAINT);
    } catch (const EvolutionError& e) {
        g_last_error = std::string(e.what()) + " (tau=" + std::to_string(e.tau) + ")";
        return T2F_ERR_EVOLUTION;
    } catch (const AnalysisError& e) {
        return record_error(e, T2F_ERR_ANALYSIS);
    } catch (const IoError& e) {
        return record_error(e, T2F_ERR_IO);
    } catch (const std::exception& e) {
        return record_error(e, T2F_ERR_USAGE);
    }
}

} // namespace

extern "C" {

void t2f_sampler_spec_defaults(t2f_sampler_spec* spec) {
    if (!spec) return;
    spec->mode = T2F_MODE_GENERIC_RANDOM;
    spec->seed = 1;
    spec->m_max = 8;
    spec->amplitude = 0.1;
    spec->target_b = 0.0;
    spec->ell_mean = std::log(0.5);
    spec->rho0 = 1.0;
    spec->kasner_a = 1.0;
    spec->kasner_b = 0.0;
    spec->kasner_c = 0.0;
}

void t2f_evolve_config_defaults(t2f_evolve_config* cfg) {
    if (!cfg) return;
    cfg->cfl_lambda = 0.5;
    cfg->output_interval = 0.1;
    cfg->max_steps = 200'000'000;
    cfg->filter_enabled = 0;
}

t2f_status t2f_state_generate(const t2f_sampler_spec* spec, uint32_t n_points,
                              t2f_state** out) {
    return guarded([&] {
        if (!spec || !out) throw UsageError("null argument");
        PeriodicGrid grid(static_cast<int>(n_points));
        *out = new t2f_state{make_initial_data(*spec, grid)};
    });
}

t2f_status t2f_state_make(uint32_t n_points, double tau, int twist,
                          const double* v, const double* q, const double* rho,
                          const double* ell, const double* pi_v, const double* pi_q,
                          t2f_state** out) {
    return guarded([&] {
        if (!v || !q || !rho || !ell || !pi_v || !pi_q || !out)
            throw UsageError("null argument");
        FieldState s{PeriodicGrid(static_cast<int>(n_points))};
        s.tau = tau;
        s.twist = twist ? 1 : 0;
        const size_t n = n_points;
        s.v.assign(v, v + n);
        s.q.assign(q, q + n);
        s.rho.assign(rho, rho + n);
        s.ell.assign(ell, ell + n);
        s.pi_v.assign(pi_v, pi_v + n);
        s.pi_q.assign(pi_q, pi_q + n);
        s.validate();
        *out = new t2f_state{std::move(s)};
    });
}

t2f_state* t2f_state_clone(const t2f_state* s) {
    return s ? new t2f_state{s->impl} : nullptr;
}

void t2f_state_free(t2f_state* s) { delete s; }

uint32_t t2f_state_n(const t2f_state* s) {
    return s ? static_cast<uint32_t>(s->impl.grid.n) : 0;
}

double t2f_state_tau(const t2f_state* s) {
    return s ? s->impl.tau : std::numeric_limits<double>::quiet_NaN();
}

int t2f_state_twist(const t2f_state* s) { return s ? s->impl.twist : -1; }

t2f_status t2f_state_get_field(const t2f_state* s, t2f_field which, double* buf) {
    return guarded([&] {
        if (!s || !buf) throw UsageError("null argument");
        const std::vector<double>* src = nullptr;
        switch (which) {
            case T2F_FIELD_V: src = &s->impl.v; break;
            case T2F_FIELD_Q: src = &s->impl.q; break;
            case T2F_FIELD_RHO: src = &s->impl.rho; break;
            case T2F_FIELD_ELL: src = &s->impl.ell; break;
            case T2F_FIELD_PI_V: src = &s->impl.pi_v; break;
            case T2F_FIELD_PI_Q: src = &s->impl.pi_q; break;
            default: throw UsageError("unknown field id");
        }
        std::memcpy(buf, src->data(), src->size() * sizeof(double));
    });
}

t2f_status t2f_state_diagnostics(const t2f_state* s, double rho0_ref,
                                 t2f_diagnostics* out) {
    return guarded([&] {
        if (!s || !out) throw UsageError("null argument");
        *out = compute_diagnostics(s->impl, rho0_ref);
    });
}

t2f_status t2f_cfl_dt(const t2f_state* s, double cfl_lambda, double* dt) {
    return guarded([&] {
        if (!s || !dt) throw UsageError("null argument");
        if (!(cfl_lambda > 0.0 && cfl_lambda <= 1.0))
            throw UsageError("cfl_lambda must lie in (0, 1]");
        *dt = cfl_dt(s->impl, cfl_lambda);
    });
}

t2f_status t2f_state_save(const t2f_state* s, const char* path) {
    return guarded([&] {
        if (!s || !path) throw UsageError("null argument");
        save_checkpoint(s->impl, path);
    });
}

t2f_status t2f_state_load(const char* path, t2f_state** out) {
    return guarded([&] {
        if (!path || !out) throw UsageError("null argument");
        *out = new t2f_state{load_checkpoint(path)};
    });
}

t2f_status t2f_evolve(t2f_state* s, double tau_end, const t2f_evolve_config* cfg,
                      t2f_record_cb on_record, void* user) {
    return guarded([&] {
        if (!s || !cfg) throw UsageError("null argument");
        EvolutionConfig c;
        c.cfl_lambda = cfg->cfl_lambda;
        c.output_interval = cfg->output_interval;
        c.max_steps = cfg->max_steps;
        c.filter_enabled = cfg->filter_enabled != 0;
        RecordCallback cb;
        if (on_record)
            cb = [on_record, user](const t2f_diagnostics& rec) { on_record(&rec, user); };
        try {
            s->impl = evolve(s->impl, tau_end, c, cb);
        } catch (const EvolutionError&) {
            throw; // state keeps the last completed step by value semantics
        }
    });
}

t2f_status t2f_check_smallness(const t2f_state* s, double eps, double m_cap,
                               double c1, t2f_smallness_report* out) {
    return guarded([&] {
        if (!s || !out) throw UsageError("null argument");
        *out = check_smallness(s->impl, eps, m_cap, c1);
    });
}

const char* t2f_condition_name(int cond) { return smallness_condition_name(cond); }

void t2f_kasner_exact(double a, double b, double c, double tau, double* v,
                      double* lhat) {
    const KasnerPoint p = kasner_exact(a, b, c, tau);
    if (v) *v = p.v;
    if (lhat) *lhat = p.lhat;
}

t2f_status t2f_ph_ode(const double init[6], double init_tau, double tau_end,
                      double tol, double sample_interval, t2f_ode_cb cb, void* user) {
    return guarded([&] {
        if (!init) throw UsageError("null argument");
        PhInitial pi{init[0], init[1], init[2], init[3], init[4], init[5]};
        const Trajectory<6> traj = ph_ode(pi, init_tau, tau_end, tol, sample_interval);
        if (cb)
            for (size_t i = 0; i < traj.taus.size(); ++i)
                cb(traj.taus[i], traj.values[i].data(), 6, user);
    });
}

t2f_status t2f_cd_ode(double c0, double d0, double tau_end, double tol,
                      double sample_interval, t2f_ode_cb cb, void* user) {
    return guarded([&] {
        const Trajectory<2> traj = cd_ode(c0, d0, tau_end, tol, sample_interval);
        if (cb)
            for (size_t i = 0; i < traj.taus.size(); ++i)
                cb(traj.taus[i], traj.values[i].data(), 2, user);
    });
}

void t2f_cd_linearization(double matrix[4], double* eig_re, double* eig_im) {
    std::array<double, 4> m{};
    double re = 0.0, im = 0.0;
    cd_linearization(m, re, im);
    if (matrix) std::memcpy(matrix, m.data(), sizeof(m));
    if (eig_re) *eig_re = re;
    if (eig_im) *eig_im = im;
}

void t2f_cd_fixed_point(double* c_star, double* d_star) {
    if (c_star) *c_star = cd_fixed_c;
    if (d_star) *d_star = cd_fixed_d;
}

void t2f_default_window(double tau_first, double tau_last, double* tau_lo,
                        double* tau_hi) {
    const auto [lo, hi] = default_window(tau_first, tau_last);
    if (tau_lo) *tau_lo = lo;
    if (tau_hi) *tau_hi = hi;
}

t2f_status t2f_fit_log_slope(const double* taus, const double* values, size_t n,
                             double tau_lo, double tau_hi, t2f_rate_fit* out) {
    return guarded([&] {
        if (!taus || !values || !out) throw UsageError("null argument");
        *out = fit_log_slope({taus, n}, {values, n}, tau_lo, tau_hi);
    });
}

t2f_status t2f_estimate_limit(const double* taus, const double* values, size_t n,
                              double tau_lo, double tau_hi, t2f_rate_fit* out) {
    return guarded([&] {
        if (!taus || !values || !out) throw UsageError("null argument");
        *out = estimate_limit({taus, n}, {values, n}, tau_lo, tau_hi);
    });
}

t2f_status t2f_fit_cv(const double* taus, const double* values, size_t n,
                      double tau_lo, double tau_hi, t2f_rate_fit* out) {
    return guarded([&] {
        if (!taus || !values || !out) throw UsageError("null argument");
        *out = fit_cv({taus, n}, {values, n}, tau_lo, tau_hi);
    });
}

t2f_status t2f_oscillation_period(const double* taus, const double* values,
                                  size_t n, double tau_lo, double tau_hi,
                                  double* period) {
    return guarded([&] {
        if (!taus || !values || !period) throw UsageError("null argument");
        *period = oscillation_period({taus, n}, {values, n}, tau_lo, tau_hi);
    });
}

t2f_status t2f_convergence_order(const double* coarse, size_t n_coarse,
                                 const double* mid, size_t n_mid,
                                 const double* fine, size_t n_fine,
                                 double* order, int* roundoff_limited) {
    return guarded([&] {
        if (!coarse || !mid || !fine || !order) throw UsageError("null argument");
        const ConvergenceOrder co =
            convergence_order({coarse, n_coarse}, {mid, n_mid}, {fine, n_fine});
        *order = co.order;
        if (roundoff_limited) *roundoff_limited = co.roundoff_limited ? 1 : 0;
    });
}

t2f_status t2f_rho_profile_limit(const t2f_state* const* states, size_t count,
                                 double* profile, t2f_rate_fit* cauchy_rate) {
    return guarded([&] {
        if (!states || !profile || !cauchy_rate) throw UsageError("null argument");
        std::vector<const FieldState*> ptrs;
        ptrs.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            if (!states[i]) throw UsageError("null state in sequence");
            ptrs.push_back(&states[i]->impl);
        }
        const RhoProfileLimit r = rho_profile_limit(ptrs);
        std::memcpy(profile, r.profile.data(), r.profile.size() * sizeof(double));
        *cauchy_rate = r.cauchy_rate;
    });
}

const char* t2f_last_error(void) { return g_last_error.c_str(); }

const char* t2f_version(void) { return "t2flow 1.0.0"; }

} // extern "C"
