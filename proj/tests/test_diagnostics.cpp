#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "diagnostics.hpp"
#include "errors.hpp"
#include "evolution.hpp"
#include "initial_data.hpp"
#include "rng.hpp"

#include <cmath>
#include <numbers>

using namespace t2flow;

namespace {

// arbitrary bounded state, not constraint-solved; identities are algebraic
FieldState random_state(uint64_t seed, int n = 64, int twist = 1) {
    FieldState s{PeriodicGrid(n)};
    SplitMix64 rng(seed);
    auto u = [&] { return 2.0 * rng.uniform01() - 1.0; };
    s.tau = 2.0 * rng.uniform01();
    s.twist = twist;
    for (int j = 0; j < n; ++j) {
        s.v[j] = u();
        s.q[j] = u();
        s.rho[j] = u();
        s.ell[j] = u();
        s.pi_v[j] = u();
        s.pi_q[j] = u();
    }
    return s;
}

FieldState homogeneous_state(uint64_t seed) {
    FieldState s{PeriodicGrid(64)};
    SplitMix64 rng(seed);
    auto u = [&] { return 2.0 * rng.uniform01() - 1.0; };
    s.tau = 2.0 * rng.uniform01();
    const double v = u(), q = u(), rho = u(), ell = u(), pv = u(), pq = u();
    for (int j = 0; j < 64; ++j) {
        s.v[j] = v; s.q[j] = q; s.rho[j] = rho;
        s.ell[j] = ell; s.pi_v[j] = pv; s.pi_q[j] = pq;
    }
    return s;
}

FieldState kasner_state(double a, double rho0) {
    t2f_sampler_spec sp{};
    sp.mode = T2F_MODE_KASNER;
    sp.kasner_a = a;
    sp.rho0 = rho0;
    sp.m_max = 1;
    sp.amplitude = 0.0;
    return make_initial_data(sp, PeriodicGrid(64));
}

} // namespace

TEST_CASE("conserved quantities on closed forms") {
    const double rho0 = 0.4;
    const FieldState s = kasner_state(1.0, rho0);
    const ConservedAB ab = conserved_ab(s);
    CHECK(ab.a == doctest::Approx(std::exp(rho0)).epsilon(1e-15));
    CHECK(ab.b == 0.0);
}

TEST_CASE("energy suite on the a=1 Kasner closed form at tau=0") {
    const double rho0 = 0.7;
    const FieldState s = kasner_state(1.0, rho0);
    const EnergySuite e = energy_suite(s);
    const double er = std::exp(rho0);
    CHECK(e.energy == doctest::Approx(0.5 * er).epsilon(1e-14));
    CHECK(e.volume == doctest::Approx(er).epsilon(1e-14));
    CHECK(e.correction == doctest::Approx(-0.5 * er).epsilon(1e-14));
    CHECK(e.corrected_h == doctest::Approx(0.0).epsilon(1e-13));
    CHECK_FALSE(e.cd_valid); // H = 0: c, d are flagged
    CHECK(std::isnan(e.c_var));
}

TEST_CASE("c and d satisfy their defining relations on random states") {
    for (uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        const FieldState s = random_state(seed);
        const EnergySuite e = energy_suite(s);
        if (!e.cd_valid) continue;
        const double sq = std::sqrt(e.corrected_h);
        CHECK(e.c_var + 2.0 / std::sqrt(10.0) ==
              doctest::Approx(e.volume / (std::exp(s.tau) * sq)).epsilon(1e-13));
        CHECK(e.d_var + 1.0 / std::sqrt(10.0) ==
              doctest::Approx(e.twist_y / (std::exp(3.0 * s.tau) * sq)).epsilon(1e-13));
    }
}

TEST_CASE("Omega vanishes on homogeneous states") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const FieldState s = homogeneous_state(seed);
        const EnergySuite e = energy_suite(s);
        CHECK(std::abs(e.omega) < 1e-12 * (1.0 + std::abs(e.yj)));
    }
}

TEST_CASE("H = Pi (E + Lambda) as computed") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const FieldState s = random_state(seed);
        const EnergySuite e = energy_suite(s);
        CHECK(e.corrected_h == e.volume * (e.energy + e.correction));
    }
}

TEST_CASE("Lambda rearrangement identity holds to rounding") {
    // Lambda + <e^{rho-2tau} V_tau>/2 = e^{-2tau} <V_tau (V - <V>) e^rho>/2
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const FieldState s = random_state(seed);
        const EnergySuite e = energy_suite(s);
        const double e_m2t = std::exp(-2.0 * s.tau);
        const double vbar = mean(s.v);
        double lhs_term = 0.0, rhs = 0.0;
        for (int j = 0; j < s.grid.n; ++j) {
            lhs_term += 0.5 * e_m2t * s.pi_v[j];
            rhs += 0.5 * e_m2t * s.pi_v[j] * (s.v[j] - vbar);
        }
        lhs_term /= s.grid.n;
        rhs /= s.grid.n;
        CHECK(e.correction + lhs_term == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("A/B identity holds to rounding") {
    // <e^rho V_tau> = A + B <Q> + <e^{2(V-tau)} Q_tau (Q - <Q>) e^rho>
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const FieldState s = random_state(seed);
        const ConservedAB ab = conserved_ab(s);
        const double qbar = mean(s.q);
        double lhs = 0.0, corr = 0.0;
        for (int j = 0; j < s.grid.n; ++j) {
            lhs += s.pi_v[j]; // e^rho V_tau = pi_V
            corr += s.pi_q[j] * (s.q[j] - qbar);
        }
        lhs /= s.grid.n;
        corr /= s.grid.n;
        CHECK(lhs == doctest::Approx(ab.a + ab.b * qbar + corr).epsilon(1e-12));
    }
}

TEST_CASE("berger suite closed-form values") {
    const double rho0 = 0.9;
    const FieldState s = kasner_state(1.0, rho0);
    const BergerSuite b = berger_suite(s);
    CHECK(b.w_diag == doctest::Approx(rho0).epsilon(1e-13)); // log|1 * e^{rho0}|
    CHECK(b.eq_diag == 0.0);
    CHECK(b.ev_diag == doctest::Approx(std::exp(rho0)).epsilon(1e-13));

    const FieldState h = homogeneous_state(3);
    const BergerSuite bh = berger_suite(h);
    const double vt = h.pi_v[0] * std::exp(-h.rho[0]);
    const double w = std::exp(h.rho[0] - 0.5 * h.tau);
    CHECK(bh.ev_diag == doctest::Approx(vt * vt * w).epsilon(1e-12));
}

TEST_CASE("polarised states have exactly zero E_Q") {
    t2f_sampler_spec sp{};
    sp.mode = T2F_MODE_POLARISED_RANDOM;
    sp.seed = 31;
    sp.m_max = 8;
    sp.amplitude = 0.1;
    sp.ell_mean = std::log(0.5);
    sp.rho0 = 1.0;
    const FieldState s = make_initial_data(sp, PeriodicGrid(64));
    CHECK(berger_suite(s).eq_diag == 0.0);
}

TEST_CASE("constraint residual diagnostics") {
    FieldState h = homogeneous_state(11);
    CHECK(constraint_residual(h) < 1e-13);

    // perturbing l by sin(2 pi theta) shows up as a residual of about 2 pi
    for (int j = 0; j < h.grid.n; ++j)
        h.ell[j] += std::sin(2.0 * std::numbers::pi * h.grid.theta(j));
    CHECK(constraint_residual(h) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("Young pointwise bound |l_theta| <= e^{rho-tau} J on solved data") {
    t2f_sampler_spec sp{};
    sp.mode = T2F_MODE_GENERIC_RANDOM;
    sp.seed = 19;
    sp.m_max = 8;
    sp.amplitude = 0.2;
    sp.target_b = 0.2;
    sp.ell_mean = std::log(0.5);
    sp.rho0 = 1.0;
    const FieldState s = make_initial_data(sp, PeriodicGrid(128));
    const auto l_th = deriv_theta(s.ell, s.grid);
    const auto v_th = deriv_theta(s.v, s.grid);
    const auto q_th = deriv_theta(s.q, s.grid);
    const double slack = constraint_residual(s) + 1e-12;
    for (int j = 0; j < s.grid.n; ++j) {
        const double e_rho = std::exp(s.rho[j]);
        const double vt = s.pi_v[j] / e_rho;
        const double e2vmt = std::exp(2.0 * (s.v[j] - s.tau));
        const double qt = s.pi_q[j] / (e_rho * e2vmt);
        const double ea = std::exp(s.tau - s.rho[j]);
        const double jd = 0.5 * (vt * vt + ea * ea * v_th[j] * v_th[j] +
                                 e2vmt * (qt * qt + ea * ea * q_th[j] * q_th[j]));
        CHECK(std::abs(l_th[j]) <= e_rho / std::exp(s.tau) * jd + slack);
    }
}

TEST_CASE("sup-norm chain max|V - <V>| <= <|V_theta|> <= sqrt(2 Pi E)") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const FieldState s = random_state(seed, 128);
        const EnergySuite e = energy_suite(s);
        const auto v_th = deriv_theta(s.v, s.grid);
        const double vbar = mean(s.v);
        double sup = 0.0, tv = 0.0;
        for (int j = 0; j < s.grid.n; ++j) {
            sup = std::max(sup, std::abs(s.v[j] - vbar));
            tv += std::abs(v_th[j]);
        }
        tv /= s.grid.n;
        // e^{rho-2tau} J already contains e^{-rho} V_theta^2 / 2
        const double bound = std::sqrt(2.0 * e.volume * e.energy);
        CHECK(sup <= tv * (1.0 + 1e-8) + 1e-8);
        CHECK(tv <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("bootstrap bounds are nonnegative and the Omega bound holds") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const FieldState s = random_state(seed);
        const BootstrapBounds b = bootstrap_bounds(s, s.rho_min());
        CHECK(b.f_bound >= 0.0);
        CHECK(b.f_tilde_bound >= 0.0);
    }
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const FieldState h = homogeneous_state(seed);
        const BootstrapBounds b = bootstrap_bounds(h, h.rho_min());
        CHECK(b.omega_bound_ok);
    }
}

TEST_CASE("Omega bound holds along an evolved run") {
    t2f_sampler_spec sp{};
    sp.mode = T2F_MODE_B0_RANDOM;
    sp.seed = 8;
    sp.m_max = 8;
    sp.amplitude = 0.1;
    sp.ell_mean = std::log(0.5);
    sp.rho0 = 1.0;
    const FieldState s = make_initial_data(sp, PeriodicGrid(64));
    EvolutionConfig cfg;
    cfg.output_interval = 0.5;
    evolve(s, 3.0, cfg, [&](const t2f_diagnostics& r) {
        CHECK(r.omega_bound_ok == 1);
        CHECK(r.f_bound >= 0.0);
        CHECK(r.f_tilde_bound >= 0.0);
    });
}

TEST_CASE("record invariants: H column equals Pi(E+Lambda), weighted means normalize") {
    const FieldState s = random_state(42);
    const t2f_diagnostics r = compute_diagnostics(s, s.rho_min());
    CHECK(r.corrected_h == r.volume * (r.energy + r.correction));
    CHECK(r.j_wmean == doctest::Approx(std::exp(2.0 * s.tau) * r.energy / r.volume).epsilon(1e-12));
    CHECK(r.energy >= 0.0);
    CHECK(r.volume > 0.0);
    CHECK(r.twist_y > 0.0);
}
