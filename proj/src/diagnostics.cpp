#include "diagnostics.hpp"

#include <cmath>
#include <limits>

namespace t2flow {

namespace {

constexpr double kInvSqrt10 = 0.31622776601683793;   // 1/sqrt(10)
constexpr double kTwoInvSqrt10 = 0.6324555320336759; // 2/sqrt(10)

// pointwise quantities shared by the suites
struct Pointwise {
    std::vector<double> vt, qt, v_th, q_th, l_th, e_rho, e_ell, e2tmr, e2vmt, jdens;
    explicit Pointwise(const FieldState& s) {
        const int n = s.grid.n;
        vt.resize(n); qt.resize(n); e_rho.resize(n); e_ell.resize(n);
        e2tmr.resize(n); e2vmt.resize(n); jdens.resize(n);
        v_th = deriv_theta(s.v, s.grid);
        q_th = deriv_theta(s.q, s.grid);
        l_th = deriv_theta(s.ell, s.grid);
        const double e_tau = std::exp(s.tau);
        const double e_m2tau = std::exp(-2.0 * s.tau);
        for (int j = 0; j < n; ++j) {
            e_rho[j] = std::exp(s.rho[j]);
            e_ell[j] = std::exp(s.ell[j]);
            const double inv = 1.0 / e_rho[j];
            const double ea = e_tau * inv;
            e2tmr[j] = ea * ea;
            e2vmt[j] = std::exp(2.0 * s.v[j]) * e_m2tau;
            vt[j] = s.pi_v[j] * inv;
            qt[j] = s.pi_q[j] * inv / e2vmt[j];
            jdens[j] = 0.5 * (vt[j] * vt[j] + e2tmr[j] * v_th[j] * v_th[j] +
                              e2vmt[j] * (qt[j] * qt[j] + e2tmr[j] * q_th[j] * q_th[j]));
        }
    }
};

} // namespace

ConservedAB conserved_ab(const FieldState& state) {
    const int n = state.grid.n;
    double a = 0.0, b = 0.0;
    for (int j = 0; j < n; ++j) {
        a += state.pi_v[j] - state.pi_q[j] * state.q[j];
        b += state.pi_q[j];
    }
    return {a / n, b / n};
}

EnergySuite energy_suite(const FieldState& state) {
    const Pointwise p(state);
    const int n = state.grid.n;
    const double e_m2tau = std::exp(-2.0 * state.tau);
    const double e_2tau = std::exp(2.0 * state.tau);

    double sum_rho = 0.0, sum_rho_j = 0.0, sum_lrho = 0.0, sum_lrho_j = 0.0, sum_v = 0.0;
    for (int j = 0; j < n; ++j) {
        sum_rho += p.e_rho[j];
        sum_rho_j += p.e_rho[j] * p.jdens[j];
        sum_lrho += p.e_ell[j] * p.e_rho[j];
        sum_lrho_j += p.e_ell[j] * p.e_rho[j] * p.jdens[j];
        sum_v += state.v[j];
    }
    const double volume = sum_rho / n;
    const double energy = e_m2tau * sum_rho_j / n;
    const double twist_y = e_2tau * sum_lrho / n;
    const double yj = e_2tau * sum_lrho_j / n;
    const double v_mean = sum_v / n;

    // Lambda = (1/2) e^{-2tau} < pi_V (V - <V> - 1) >   (pi_V = e^rho V_tau)
    double sum_corr = 0.0;
    for (int j = 0; j < n; ++j)
        sum_corr += state.pi_v[j] * (state.v[j] - v_mean - 1.0);
    const double correction = 0.5 * e_m2tau * sum_corr / n;

    const double corrected_h = volume * (energy + correction);

    EnergySuite out{};
    out.energy = energy;
    out.volume = volume;
    out.twist_y = twist_y;
    out.correction = correction;
    out.corrected_h = corrected_h;
    out.yj = yj;
    out.omega = yj - e_2tau * energy * twist_y / volume;
    out.cd_valid = corrected_h > 0.0;
    if (out.cd_valid) {
        const double sqrt_h = std::sqrt(corrected_h);
        out.c_var = volume / (std::exp(state.tau) * sqrt_h) - kTwoInvSqrt10;
        out.d_var = twist_y / (std::exp(3.0 * state.tau) * sqrt_h) - kInvSqrt10;
    } else {
        out.c_var = std::numeric_limits<double>::quiet_NaN();
        out.d_var = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

BergerSuite berger_suite(const FieldState& state) {
    const Pointwise p(state);
    const int n = state.grid.n;
    const double e_mtau2 = std::exp(-0.5 * state.tau);

    double s_sum = 0.0, t_sum = 0.0, ev_sum = 0.0, eq_sum = 0.0, w_sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = p.e_rho[j] * e_mtau2; // e^{rho - tau/2}
        const double rho_t = state.twist ? p.e_ell[j] : 0.0;
        const double l_t = p.jdens[j] - rho_t - 2.0;
        s_sum += (l_t + state.ell[j] * (rho_t - 0.5)) * w;
        t_sum += (rho_t + state.rho[j] * (rho_t - 0.5)) * w;
        ev_sum += (p.vt[j] * p.vt[j] + p.e2tmr[j] * p.v_th[j] * p.v_th[j]) * w;
        eq_sum += p.e2vmt[j] * (p.qt[j] * p.qt[j] + p.e2tmr[j] * p.q_th[j] * p.q_th[j]) * w;
        w_sum += p.vt[j] * w;
    }
    BergerSuite out{};
    out.s_diag = s_sum / n;
    out.t_diag = t_sum / n;
    out.ev_diag = ev_sum / n;
    out.eq_diag = eq_sum / n;
    out.w_diag = std::log(std::abs(w_sum / n)); // -inf when the mean vanishes
    return out;
}

double constraint_residual(const FieldState& state) {
    const Pointwise p(state);
    double worst = 0.0;
    for (int j = 0; j < state.grid.n; ++j) {
        const double rhs = p.v_th[j] * p.vt[j] + p.e2vmt[j] * p.q_th[j] * p.qt[j];
        worst = std::max(worst, std::abs(p.l_th[j] - rhs));
    }
    return worst;
}

BootstrapBounds bootstrap_bounds(const FieldState& state, double rho0_ref) {
    const Pointwise p(state);
    const EnergySuite e = energy_suite(state);
    const int n = state.grid.n;
    const double e_mtau = std::exp(-state.tau);

    // <e^{rho - tau} rho_tau J> with rho_tau = kappa e^l
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double rho_t = state.twist ? p.e_ell[j] : 0.0;
        sum += p.e_rho[j] * rho_t * p.jdens[j];
    }
    const double rho_term = e_mtau * sum / n;

    const double pi_tau = state.twist ? std::exp(-2.0 * state.tau) * e.twist_y : 0.0;
    const double pie = e.volume * e.energy;
    const double boost = std::exp(2.0 * std::sqrt(std::max(0.0, pie)));
    const double sqrt_e = std::sqrt(std::max(0.0, e.energy));

    BootstrapBounds out{};
    out.f_bound = rho_term + e_mtau * (1.0 + boost) * (e.volume + pi_tau) +
                  std::sqrt(std::max(0.0, pie)) +
                  std::exp(-0.5 * rho0_ref) * boost * e.volume * sqrt_e;

    const ConservedAB ab = conserved_ab(state);
    const double rho_min = state.rho_min();
    out.f_tilde_bound = std::abs(ab.a) * e.volume *
                        (e_mtau * (1.0 + pi_tau / e.volume) +
                         std::exp(-0.5 * rho_min) * sqrt_e);

    const double bound = std::exp(state.tau) * e.energy * e.yj;
    out.omega_bound_ok = std::abs(e.omega) <= bound + 1e-9 * (1.0 + std::abs(bound));
    return out;
}

t2f_diagnostics compute_diagnostics(const FieldState& state, double rho0_ref) {
    t2f_diagnostics rec{};
    rec.tau = state.tau;

    const ConservedAB ab = conserved_ab(state);
    rec.a_const = ab.a;
    rec.b_const = ab.b;

    const EnergySuite e = energy_suite(state);
    rec.energy = e.energy;
    rec.volume = e.volume;
    rec.twist_y = e.twist_y;
    rec.correction = e.correction;
    rec.corrected_h = e.corrected_h;
    rec.c_var = e.c_var;
    rec.d_var = e.d_var;
    rec.omega = e.omega;
    rec.cd_valid = e.cd_valid ? 1 : 0;

    const double rho_min = state.rho_min();
    if (!std::isfinite(rho0_ref)) rho0_ref = rho_min;
    const BootstrapBounds b = bootstrap_bounds(state, rho0_ref);
    rec.f_bound = b.f_bound;
    rec.f_tilde_bound = b.f_tilde_bound;
    rec.omega_bound_ok = b.omega_bound_ok ? 1 : 0;

    const BergerSuite bs = berger_suite(state);
    rec.s_diag = bs.s_diag;
    rec.t_diag = bs.t_diag;
    rec.ev_diag = bs.ev_diag;
    rec.eq_diag = bs.eq_diag;
    rec.w_diag = bs.w_diag;

    rec.constraint_residual = constraint_residual(state);
    rec.rho_min = rho_min;

    // normalized weighted means; the raw weighted integrals are the
    // S/T/E_V/E_Q/W columns above
    const int n = state.grid.n;
    const double e_mtau2 = std::exp(-0.5 * state.tau);
    const double e_m2tau = std::exp(-2.0 * state.tau);
    double el_num = 0.0, el_den = 0.0, j_num = 0.0, j_den = 0.0, v_sum = 0.0;
    const Pointwise p(state);
    for (int j = 0; j < n; ++j) {
        const double w1 = p.e_rho[j] * e_mtau2;
        const double w2 = p.e_rho[j] * e_m2tau;
        el_num += p.e_ell[j] * w1;
        el_den += w1;
        j_num += p.jdens[j] * w2;
        j_den += w2;
        v_sum += state.v[j];
    }
    rec.el_wmean = el_num / el_den;
    rec.j_wmean = j_num / j_den;
    rec.v_mean = v_sum / n;
    return rec;
}

} // namespace t2flow
