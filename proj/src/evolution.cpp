#include "evolution.hpp"

#include "diagnostics.hpp"
#include "errors.hpp"

#include <cmath>
#include <string>

namespace t2flow {

namespace {

void check_finite(const std::vector<double>& a, const char* name, double tau) {
    for (double x : a)
        if (!std::isfinite(x))
            throw EvolutionError(std::string("non-finite ") + name +
                                 " in evolution right-hand side", tau);
}

} // namespace

StateDerivative rhs(const FieldState& state) {
    const int n = state.grid.n;
    StateDerivative d(n);

    // range guard: e^{2(tau - rho)} is the largest exponential in play
    const double max_exp_arg = 2.0 * (state.tau - state.rho_min());
    if (max_exp_arg > 690.0)
        throw EvolutionError("e^{2(tau-rho)} out of double range", state.tau);

    std::vector<double> v_th(n), q_th(n);
    deriv_theta_into(state.v, state.grid, v_th);
    deriv_theta_into(state.q, state.grid, q_th);

    const double e_tau = std::exp(state.tau);
    const double e_m2tau = std::exp(-2.0 * state.tau);

    std::vector<double> flux_v(n), flux_q(n), src_v(n);
    for (int j = 0; j < n; ++j) {
        const double e_rho = std::exp(state.rho[j]);
        const double inv_e_rho = 1.0 / e_rho;
        const double ea = e_tau * inv_e_rho;   // e^{tau - rho}
        const double e2tmr = ea * ea;          // e^{2(tau - rho)}
        const double e2vmt = std::exp(2.0 * state.v[j]) * e_m2tau; // e^{2(V - tau)}

        const double vt = state.pi_v[j] * inv_e_rho;
        const double qt = state.pi_q[j] * inv_e_rho / e2vmt;

        d.d_v[j] = vt;
        d.d_q[j] = qt;

        flux_v[j] = e2tmr * e_rho * v_th[j];          // e^{2tau - rho} V_theta
        flux_q[j] = e2vmt * e2tmr * e_rho * q_th[j];  // e^{2V - rho} Q_theta
        src_v[j] = e2vmt * e_rho * (qt * qt - e2tmr * q_th[j] * q_th[j]);

        const double jdens = 0.5 * (vt * vt + e2tmr * v_th[j] * v_th[j] +
                                    e2vmt * (qt * qt + e2tmr * q_th[j] * q_th[j]));
        const double rho_t = state.twist ? std::exp(state.ell[j]) : 0.0;
        d.d_rho[j] = rho_t;
        d.d_ell[j] = jdens - rho_t - 2.0;
    }

    deriv_theta_into(flux_v, state.grid, d.d_pi_v);
    for (int j = 0; j < n; ++j) d.d_pi_v[j] += src_v[j];
    deriv_theta_into(flux_q, state.grid, d.d_pi_q);

    check_finite(d.d_v, "V_tau", state.tau);
    check_finite(d.d_q, "Q_tau", state.tau);
    check_finite(d.d_rho, "rho_tau", state.tau);
    check_finite(d.d_ell, "l_tau", state.tau);
    check_finite(d.d_pi_v, "pi_V flux", state.tau);
    check_finite(d.d_pi_q, "pi_Q flux", state.tau);
    return d;
}

double cfl_dt(const FieldState& state, double cfl_lambda) {
    // max coordinate wave speed over the grid is e^{tau - min rho}
    return cfl_lambda * state.grid.h * std::exp(state.rho_min() - state.tau);
}

namespace {

FieldState advanced(const FieldState& s, const StateDerivative& d, double dt) {
    FieldState out = s;
    out.tau = s.tau + dt;
    const int n = s.grid.n;
    for (int j = 0; j < n; ++j) {
        out.v[j] += dt * d.d_v[j];
        out.q[j] += dt * d.d_q[j];
        out.rho[j] += dt * d.d_rho[j];
        out.ell[j] += dt * d.d_ell[j];
        out.pi_v[j] += dt * d.d_pi_v[j];
        out.pi_q[j] += dt * d.d_pi_q[j];
    }
    return out;
}

} // namespace

FieldState step_rk4(const FieldState& state, double dt, bool filter) {
    if (!(dt > 0.0))
        throw UsageError("step_rk4: dt must be positive");

    const StateDerivative k1 = rhs(state);
    const StateDerivative k2 = rhs(advanced(state, k1, 0.5 * dt));
    const StateDerivative k3 = rhs(advanced(state, k2, 0.5 * dt));
    const StateDerivative k4 = rhs(advanced(state, k3, dt));

    FieldState out = state;
    out.tau = state.tau + dt;
    const double w = dt / 6.0;
    const int n = state.grid.n;
    for (int j = 0; j < n; ++j) {
        out.v[j] += w * (k1.d_v[j] + 2.0 * k2.d_v[j] + 2.0 * k3.d_v[j] + k4.d_v[j]);
        out.q[j] += w * (k1.d_q[j] + 2.0 * k2.d_q[j] + 2.0 * k3.d_q[j] + k4.d_q[j]);
        out.rho[j] += w * (k1.d_rho[j] + 2.0 * k2.d_rho[j] + 2.0 * k3.d_rho[j] + k4.d_rho[j]);
        out.ell[j] += w * (k1.d_ell[j] + 2.0 * k2.d_ell[j] + 2.0 * k3.d_ell[j] + k4.d_ell[j]);
        out.pi_v[j] += w * (k1.d_pi_v[j] + 2.0 * k2.d_pi_v[j] + 2.0 * k3.d_pi_v[j] + k4.d_pi_v[j]);
        out.pi_q[j] += w * (k1.d_pi_q[j] + 2.0 * k2.d_pi_q[j] + 2.0 * k3.d_pi_q[j] + k4.d_pi_q[j]);
    }

    if (filter) {
        lowpass_filter(out.v);
        lowpass_filter(out.q);
        lowpass_filter(out.rho);
        lowpass_filter(out.ell);
        lowpass_filter(out.pi_v);
        lowpass_filter(out.pi_q);
    }
    return out;
}

FieldState evolve(const FieldState& state, double tau_end,
                  const EvolutionConfig& config, const RecordCallback& on_record) {
    if (!(tau_end > state.tau))
        throw UsageError("evolve: tau_end must exceed the state's tau");
    if (!(config.cfl_lambda > 0.0 && config.cfl_lambda <= 1.0))
        throw UsageError("evolve: cfl_lambda must lie in (0, 1]");
    if (!(config.output_interval > 0.0))
        throw UsageError("evolve: output_interval must be positive");

    FieldState cur = state;
    cur.validate();
    const double rho0_ref = cur.rho_min();
    const double tau_start = cur.tau;

    const auto emit = [&](const FieldState& s) {
        if (on_record) on_record(compute_diagnostics(s, rho0_ref));
    };
    emit(cur);

    long out_index = 1;
    double next_out = tau_start + config.output_interval;
    long steps = 0;
    // snapping tolerance for landing on output times
    const double tiny = 1e-12 * std::max(1.0, std::abs(tau_end));

    while (cur.tau < tau_end - tiny) {
        if (++steps > config.max_steps)
            throw EvolutionError("evolve: max_steps exceeded with partial results", cur.tau);

        const double t_target = std::min(next_out, tau_end);
        double dt = cfl_dt(cur, config.cfl_lambda);
        bool hit = false;
        if (cur.tau + dt >= t_target - tiny) {
            dt = t_target - cur.tau;
            hit = true;
        }
        cur = step_rk4(cur, dt, config.filter_enabled);
        if (hit) {
            cur.tau = t_target; // keep output times exact
            if (t_target == next_out || std::abs(t_target - next_out) <= tiny) {
                emit(cur);
                ++out_index;
                next_out = tau_start + config.output_interval * static_cast<double>(out_index);
            } else {
                emit(cur); // landed on tau_end between output times
            }
        }
    }
    return cur;
}

} // namespace t2flow
