#include "initial_data.hpp"

#include "diagnostics.hpp"
#include "errors.hpp"
#include "rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace t2flow {

std::vector<double> sample_fourier(uint64_t seed, int m_max, double amplitude,
                                   const PeriodicGrid& grid, uint64_t substream) {
    if (m_max < 1)
        throw UsageError("sample_fourier: m_max must be positive");
    if (m_max >= grid.n / 4)
        throw UsageError("sample_fourier: m_max must be < N/4 (got m_max=" +
                         std::to_string(m_max) + ", N=" + std::to_string(grid.n) + ")");
    GaussianStream gs(field_stream(seed, substream));
    std::vector<double> out(grid.n, 0.0);
    for (int m = 1; m <= m_max; ++m) {
        const double scale = amplitude / static_cast<double>(m); // mild red spectrum
        const double am = scale * gs.next();
        const double bm = scale * gs.next();
        for (int j = 0; j < grid.n; ++j) {
            const double ang = 2.0 * std::numbers::pi * m * grid.theta(j);
            out[j] += am * std::cos(ang) + bm * std::sin(ang);
        }
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>>
solve_constraint(const std::vector<double>& v, const std::vector<double>& q,
                 const std::vector<double>& pi_v, const std::vector<double>& pi_q,
                 const std::vector<double>& rho, double ell0,
                 const PeriodicGrid& grid, bool spectral) {
    const int n = grid.n;
    const auto v_th = deriv_theta(v, grid);
    const auto q_th = deriv_theta(q, grid);

    std::vector<double> inv_e_rho(n);
    for (int j = 0; j < n; ++j) inv_e_rho[j] = std::exp(-rho[j]);

    // periodicity obstruction <g> with g = e^{-rho}(V_theta pi_V + Q_theta pi_Q)
    double obstruction = 0.0, proj_den = 0.0;
    for (int j = 0; j < n; ++j) {
        obstruction += inv_e_rho[j] * (v_th[j] * pi_v[j] + q_th[j] * pi_q[j]);
        proj_den += inv_e_rho[j] * v_th[j] * v_th[j];
    }
    obstruction /= n;
    proj_den /= n;

    std::vector<double> pv = pi_v;
    if (std::abs(obstruction) > 0.0) {
        if (proj_den <= 0.0) {
            if (std::abs(obstruction) > 1e-14)
                throw ConstraintError(
                    "constraint unsolvable: V_theta vanishes but the periodicity "
                    "obstruction is nonzero");
        } else {
            const double mu = obstruction / proj_den;
            for (int j = 0; j < n; ++j) pv[j] -= mu * v_th[j];
        }
    }

    std::vector<double> g(n);
    for (int j = 0; j < n; ++j)
        g[j] = inv_e_rho[j] * (v_th[j] * pv[j] + q_th[j] * pi_q[j]);
    const double residue = mean(g); // rounding residue after projection
    for (int j = 0; j < n; ++j) g[j] -= residue;

    std::vector<double> prim =
        spectral ? spectral_antiderivative(g, grid) : cumtrapz_periodic(g, grid);
    std::vector<double> ell(n);
    for (int j = 0; j < n; ++j) ell[j] = ell0 + prim[j];
    return {std::move(ell), std::move(pv)};
}

namespace {

constexpr double kInvSqrt10 = 0.31622776601683793;
constexpr double kTwoInvSqrt10 = 0.6324555320336759;

// substream ids of the sampler fields
enum : uint64_t { kStreamV = 0, kStreamQ = 1, kStreamPiV = 2, kStreamPiQ = 3, kStreamHomog = 4 };

void subtract_mean(std::vector<double>& a) {
    const double m = mean(a);
    for (double& x : a) x -= m;
}

FieldState assemble(const PeriodicGrid& grid, double tau, int twist,
                    std::vector<double> v, std::vector<double> q,
                    std::vector<double> rho, std::vector<double> ell,
                    std::vector<double> pi_v, std::vector<double> pi_q) {
    FieldState s(grid);
    s.tau = tau;
    s.twist = twist;
    s.v = std::move(v);
    s.q = std::move(q);
    s.rho = std::move(rho);
    s.ell = std::move(ell);
    s.pi_v = std::move(pi_v);
    s.pi_q = std::move(pi_q);
    s.validate();
    return s;
}

FieldState make_kasner(const t2f_sampler_spec& spec, const PeriodicGrid& grid) {
    const int n = grid.n;
    return assemble(grid, 0.0, 0,
                    std::vector<double>(n, spec.kasner_b),
                    std::vector<double>(n, 0.0),
                    std::vector<double>(n, spec.rho0),
                    std::vector<double>(n, spec.kasner_c),
                    std::vector<double>(n, spec.kasner_a * std::exp(spec.rho0)),
                    std::vector<double>(n, 0.0));
}

FieldState make_pseudo_homogeneous(const t2f_sampler_spec& spec, const PeriodicGrid& grid) {
    GaussianStream gs(field_stream(spec.seed, kStreamHomog));
    const double v0 = spec.amplitude * gs.next();
    const double vt0 = spec.amplitude * gs.next();
    const double q0 = spec.amplitude * gs.next();
    const int n = grid.n;
    return assemble(grid, 0.0, 1,
                    std::vector<double>(n, v0),
                    std::vector<double>(n, q0),
                    std::vector<double>(n, spec.rho0),
                    std::vector<double>(n, spec.ell_mean),
                    std::vector<double>(n, vt0 * std::exp(spec.rho0)),
                    std::vector<double>(n, spec.target_b));
}

FieldState make_random(const t2f_sampler_spec& spec, const PeriodicGrid& grid,
                       bool polarised, double target_b) {
    const int n = grid.n;
    auto v = sample_fourier(spec.seed, spec.m_max, spec.amplitude, grid, kStreamV);
    auto pi_v = sample_fourier(spec.seed, spec.m_max, spec.amplitude, grid, kStreamPiV);
    std::vector<double> q(n, 0.0), pi_q(n, 0.0);
    if (!polarised) {
        q = sample_fourier(spec.seed, spec.m_max, spec.amplitude, grid, kStreamQ);
        pi_q = sample_fourier(spec.seed, spec.m_max, spec.amplitude, grid, kStreamPiQ);
        subtract_mean(pi_q);
        for (double& x : pi_q) x += target_b;
    }
    std::vector<double> rho(n, spec.rho0);
    auto [ell, pv] = solve_constraint(v, q, pi_v, pi_q, rho, spec.ell_mean, grid);
    return assemble(grid, 0.0, 1, std::move(v), std::move(q), std::move(rho),
                    std::move(ell), std::move(pv), std::move(pi_q));
}

// Rescale a generic/b0 sample so the initial diagnostics sit near the
// attractor: |c|, |d| < 0.1 and e^{tau0} H in [0.5, 2]. The construction
// pins c = c_off and d = d_off exactly up to the H bisection tolerance.
FieldState make_near_attractor(const t2f_sampler_spec& spec, const PeriodicGrid& grid) {
    const int n = grid.n;
    const double c_off = 0.05;
    const double d_off = 0.0;
    const double tau0 = 2.0 * (spec.rho0 - std::log(kTwoInvSqrt10 + c_off));
    const double h_target = std::exp(-tau0); // => e^{tau0} H = 1
    const double r_target = (d_off + kInvSqrt10) / (c_off + kTwoInvSqrt10);

    auto dv = sample_fourier(spec.seed, spec.m_max, spec.amplitude, grid, kStreamV);
    auto dq = sample_fourier(spec.seed, spec.m_max, spec.amplitude, grid, kStreamQ);
    auto dpv = sample_fourier(spec.seed, spec.m_max, spec.amplitude, grid, kStreamPiV);
    auto dpq = sample_fourier(spec.seed, spec.m_max, spec.amplitude, grid, kStreamPiQ);
    subtract_mean(dpq);
    const std::vector<double> rho(n, spec.rho0);

    const auto build = [&](double alpha) {
        std::vector<double> v(n), q(n), pv(n), pq(n);
        for (int j = 0; j < n; ++j) {
            v[j] = alpha * dv[j];
            q[j] = alpha * dq[j];
            pv[j] = alpha * dpv[j];
            pq[j] = alpha * dpq[j] + spec.target_b;
        }
        auto [ell, pv_adj] = solve_constraint(v, q, pv, pq, rho, 0.0, grid);
        // shift l so the e^rho-weighted mean of e^l equals r_target exactly;
        // a constant shift leaves the constraint untouched
        double num = 0.0, den = 0.0;
        for (int j = 0; j < n; ++j) {
            num += std::exp(ell[j] + rho[j]);
            den += std::exp(rho[j]);
        }
        const double shift = std::log(r_target * den / num);
        for (double& x : ell) x += shift;
        return assemble(grid, tau0, 1, v, q,
                        std::vector<double>(rho), std::move(ell),
                        std::move(pv_adj), std::move(pq));
    };
    const auto h_of = [&](double alpha) {
        return energy_suite(build(alpha)).corrected_h;
    };

    if (h_of(0.0) > h_target)
        throw UsageError("near_attractor: the target_b energy floor already exceeds "
                         "the corrected-energy target; reduce |target_b|");
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (h_of(hi) < h_target) {
        hi *= 2.0;
        if (++guard > 60)
            throw UsageError("near_attractor: could not bracket the energy target");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h_of(mid) < h_target) lo = mid; else hi = mid;
        if ((hi - lo) < 1e-12 * std::max(1.0, hi)) break;
    }
    FieldState out = build(0.5 * (lo + hi));
    const double h = energy_suite(out).corrected_h;
    if (!(std::abs(std::exp(tau0) * h - 1.0) < 0.05))
        throw UsageError("near_attractor: corrected-energy target missed");
    return out;
}

} // namespace

FieldState make_initial_data(const t2f_sampler_spec& spec, const PeriodicGrid& grid) {
    t2f_sampler_spec sp = spec;
    switch (sp.mode) {
        case T2F_MODE_KASNER:
            return make_kasner(sp, grid);
        case T2F_MODE_PSEUDO_HOMOGENEOUS:
            return make_pseudo_homogeneous(sp, grid);
        case T2F_MODE_POLARISED_RANDOM:
            sp.target_b = 0.0;
            return make_random(sp, grid, true, 0.0);
        case T2F_MODE_B0_RANDOM:
            sp.target_b = 0.0;
            return make_random(sp, grid, false, 0.0);
        case T2F_MODE_GENERIC_RANDOM:
            return make_random(sp, grid, false, sp.target_b);
        case T2F_MODE_NEAR_ATTRACTOR:
            return make_near_attractor(sp, grid);
        default:
            throw UsageError("unknown sampler mode " + std::to_string(sp.mode));
    }
}

t2f_smallness_report check_smallness(const FieldState& state, double eps,
                                     double m_cap, double c1) {
    if (!(eps > 0.0) || !(m_cap > 1.0) || !(c1 > 0.0))
        throw UsageError("check_smallness: need eps > 0, M > 1, C1 > 0");

    t2f_smallness_report rep{};
    rep.eps = eps;
    rep.m_cap = m_cap;
    rep.c1 = c1;
    for (int i = 0; i < T2F_COND_COUNT; ++i) rep.evaluable[i] = 1;

    const ConservedAB ab = conserved_ab(state);
    const EnergySuite e = energy_suite(state);
    const double s0 = state.tau;
    const double es0 = std::exp(s0);
    const double rho_min = state.rho_min();

    rep.value[T2F_COND_A_SMALL] = std::abs(ab.a);
    rep.ok[T2F_COND_A_SMALL] = std::abs(ab.a) < 1.0;

    rep.value[T2F_COND_RHO0_POSITIVE] = rho_min;
    rep.ok[T2F_COND_RHO0_POSITIVE] = rho_min > 0.0;

    if (e.cd_valid) {
        rep.value[T2F_COND_C_SMALL] = std::abs(e.c_var);
        rep.ok[T2F_COND_C_SMALL] = std::abs(e.c_var) < eps;
        rep.value[T2F_COND_D_SMALL] = std::abs(e.d_var);
        rep.ok[T2F_COND_D_SMALL] = std::abs(e.d_var) < eps;
    } else {
        rep.value[T2F_COND_C_SMALL] = std::numeric_limits<double>::quiet_NaN();
        rep.value[T2F_COND_D_SMALL] = std::numeric_limits<double>::quiet_NaN();
        rep.evaluable[T2F_COND_C_SMALL] = 0;
        rep.evaluable[T2F_COND_D_SMALL] = 0;
    }

    if (e.corrected_h != 0.0) {
        const double ratio = e.volume * e.energy / e.corrected_h;
        rep.value[T2F_COND_PIEH_NEAR_ONE] = std::abs(ratio - 1.0);
        rep.ok[T2F_COND_PIEH_NEAR_ONE] = std::abs(ratio - 1.0) < 1.0;
    } else {
        rep.value[T2F_COND_PIEH_NEAR_ONE] = std::numeric_limits<double>::quiet_NaN();
        rep.evaluable[T2F_COND_PIEH_NEAR_ONE] = 0;
    }

    rep.value[T2F_COND_S0_WINDOW] = es0;
    rep.ok[T2F_COND_S0_WINDOW] = (0.5 / eps < es0) && (es0 < 2.0 / eps);

    const double margin = c1 * std::sqrt(eps);
    rep.value[T2F_COND_H_UPPER] = es0 * e.corrected_h + margin;
    rep.ok[T2F_COND_H_UPPER] = rep.value[T2F_COND_H_UPPER] < m_cap * eps * es0;

    rep.value[T2F_COND_H_LOWER] = es0 * e.corrected_h - margin;
    rep.ok[T2F_COND_H_LOWER] = (rep.value[T2F_COND_H_LOWER] > 1.0 / m_cap) &&
                               (rep.value[T2F_COND_H_LOWER] > 0.0);
    return rep;
}

const char* smallness_condition_name(int cond) {
    switch (cond) {
        case T2F_COND_A_SMALL: return "|A| < 1";
        case T2F_COND_RHO0_POSITIVE: return "rho0 > 0";
        case T2F_COND_C_SMALL: return "|c| < eps";
        case T2F_COND_D_SMALL: return "|d| < eps";
        case T2F_COND_PIEH_NEAR_ONE: return "|Pi E / H - 1| < 1";
        case T2F_COND_S0_WINDOW: return "eps^-1/2 < e^{s0} < 2 eps^-1";
        case T2F_COND_H_UPPER: return "e^{s0} H + C1 sqrt(eps) < M eps e^{s0}";
        case T2F_COND_H_LOWER: return "1/M < e^{s0} H - C1 sqrt(eps)";
        default: return "unknown";
    }
}

} // namespace t2flow
