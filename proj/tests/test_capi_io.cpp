#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// exercises the public C surface only
#include "t2flow/t2flow.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

std::string tmp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::vector<char> slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("version and defaults") {
    CHECK(std::string(t2f_version()).find("t2flow") != std::string::npos);
    t2f_sampler_spec sp;
    t2f_sampler_spec_defaults(&sp);
    CHECK(sp.m_max == 8);
    CHECK(sp.ell_mean == doctest::Approx(std::log(0.5)));
    t2f_evolve_config cfg;
    t2f_evolve_config_defaults(&cfg);
    CHECK(cfg.cfl_lambda == 0.5);
}

TEST_CASE("generate, evolve, diagnose through the C API") {
    t2f_sampler_spec sp;
    t2f_sampler_spec_defaults(&sp);
    sp.mode = T2F_MODE_B0_RANDOM;
    sp.seed = 3;

    t2f_state* s = nullptr;
    REQUIRE(t2f_state_generate(&sp, 64, &s) == T2F_OK);
    REQUIRE(s != nullptr);
    CHECK(t2f_state_n(s) == 64);
    CHECK(t2f_state_tau(s) == 0.0);
    CHECK(t2f_state_twist(s) == 1);

    t2f_diagnostics d0;
    REQUIRE(t2f_state_diagnostics(s, NAN, &d0) == T2F_OK);
    CHECK(std::abs(d0.b_const) < 1e-15);

    t2f_evolve_config cfg;
    t2f_evolve_config_defaults(&cfg);
    cfg.output_interval = 0.25;

    struct Acc {
        int rows = 0;
        double b_worst = 0.0, b0 = 0.0;
    } acc;
    const auto cb = [](const t2f_diagnostics* rec, void* user) {
        Acc* a = static_cast<Acc*>(user);
        if (a->rows == 0) a->b0 = rec->b_const;
        a->b_worst = std::max(a->b_worst, std::abs(rec->b_const - a->b0));
        ++a->rows;
    };
    REQUIRE(t2f_evolve(s, 1.0, &cfg, cb, &acc) == T2F_OK);
    CHECK(acc.rows == 5);
    CHECK(acc.b_worst < 1e-12);
    CHECK(t2f_state_tau(s) == doctest::Approx(1.0).epsilon(1e-12));

    double dt = 0.0;
    REQUIRE(t2f_cfl_dt(s, 0.5, &dt) == T2F_OK);
    CHECK(dt > 0.0);

    t2f_state_free(s);
}

TEST_CASE("checkpoint round trip is bit-identical") {
    t2f_sampler_spec sp;
    t2f_sampler_spec_defaults(&sp);
    sp.mode = T2F_MODE_GENERIC_RANDOM;
    sp.target_b = 0.2;
    sp.seed = 11;

    t2f_state* s = nullptr;
    REQUIRE(t2f_state_generate(&sp, 64, &s) == T2F_OK);

    const std::string p1 = tmp_path("t2f_rt1.ckpt");
    const std::string p2 = tmp_path("t2f_rt2.ckpt");
    REQUIRE(t2f_state_save(s, p1.c_str()) == T2F_OK);

    t2f_state* loaded = nullptr;
    REQUIRE(t2f_state_load(p1.c_str(), &loaded) == T2F_OK);
    REQUIRE(t2f_state_save(loaded, p2.c_str()) == T2F_OK);

    CHECK(slurp(p1) == slurp(p2));
    CHECK(t2f_state_tau(loaded) == t2f_state_tau(s));

    std::vector<double> a(64), b(64);
    REQUIRE(t2f_state_get_field(s, T2F_FIELD_PI_Q, a.data()) == T2F_OK);
    REQUIRE(t2f_state_get_field(loaded, T2F_FIELD_PI_Q, b.data()) == T2F_OK);
    for (int j = 0; j < 64; ++j) CHECK(a[j] == b[j]);

    t2f_state_free(s);
    t2f_state_free(loaded);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("load failures carry status codes and messages") {
    t2f_state* s = nullptr;
    CHECK(t2f_state_load("/nonexistent/path/x.ckpt", &s) == T2F_ERR_IO);
    CHECK(std::string(t2f_last_error()).size() > 0);

    const std::string bad = tmp_path("t2f_bad.ckpt");
    std::ofstream(bad, std::ios::binary) << "not a checkpoint";
    CHECK(t2f_state_load(bad.c_str(), &s) == T2F_ERR_IO);
    std::filesystem::remove(bad);
}

TEST_CASE("usage errors map to T2F_ERR_USAGE") {
    t2f_sampler_spec sp;
    t2f_sampler_spec_defaults(&sp);
    t2f_state* s = nullptr;
    CHECK(t2f_state_generate(&sp, 17, &s) == T2F_ERR_USAGE); // odd grid
    sp.m_max = 40;
    CHECK(t2f_state_generate(&sp, 64, &s) == T2F_ERR_USAGE); // spectrum too wide
}

TEST_CASE("state_make validates and round-trips fields") {
    const uint32_t n = 64;
    std::vector<double> v(n, 0.1), q(n, 0.0), rho(n, 1.0), ell(n, -0.7),
        pv(n, 0.3), pq(n, 0.2);
    t2f_state* s = nullptr;
    REQUIRE(t2f_state_make(n, 1.5, 1, v.data(), q.data(), rho.data(), ell.data(),
                           pv.data(), pq.data(), &s) == T2F_OK);
    t2f_diagnostics d;
    REQUIRE(t2f_state_diagnostics(s, NAN, &d) == T2F_OK);
    CHECK(d.b_const == doctest::Approx(0.2).epsilon(1e-15));
    t2f_state_free(s);

    v[3] = std::nan("");
    CHECK(t2f_state_make(n, 1.5, 1, v.data(), q.data(), rho.data(), ell.data(),
                         pv.data(), pq.data(), &s) == T2F_ERR_EVOLUTION);
}

TEST_CASE("smallness report through the C API") {
    t2f_sampler_spec sp;
    t2f_sampler_spec_defaults(&sp);
    sp.mode = T2F_MODE_NEAR_ATTRACTOR;
    sp.seed = 9;
    t2f_state* s = nullptr;
    REQUIRE(t2f_state_generate(&sp, 128, &s) == T2F_OK);
    t2f_smallness_report rep;
    REQUIRE(t2f_check_smallness(s, 0.1, 10.0, 1.0, &rep) == T2F_OK);
    for (int cond = 0; cond < T2F_COND_COUNT; ++cond) {
        INFO(t2f_condition_name(cond));
        CHECK(rep.ok[cond] == 1);
    }
    t2f_state_free(s);
}

TEST_CASE("reference and analysis entry points") {
    double v = 0.0, lhat = 0.0;
    t2f_kasner_exact(1.0, 0.0, 0.0, 2.0, &v, &lhat);
    CHECK(v == 2.0);
    CHECK(lhat == -3.0);

    double cs = 0.0, ds = 0.0;
    t2f_cd_fixed_point(&cs, &ds);
    struct Acc {
        double worst = 0.0;
        double cstar, dstar;
    } acc{0.0, cs, ds};
    const auto cb = [](double, const double* y, int ny, void* user) {
        Acc* a = static_cast<Acc*>(user);
        REQUIRE(ny == 2);
        a->worst = std::max(a->worst, std::hypot(y[0] - a->cstar, y[1] - a->dstar));
    };
    REQUIRE(t2f_cd_ode(cs, ds, 20.0, 1e-10, 0.5, cb, &acc) == T2F_OK);
    CHECK(acc.worst < 1e-8);

    // windowed fit over a synthetic series
    std::vector<double> taus, ys;
    for (double t = 0.0; t <= 12.0; t += 0.1) {
        taus.push_back(t);
        ys.push_back(2.5 + 0.5 * std::exp(-t / 4.0));
    }
    double lo = 0.0, hi = 0.0;
    t2f_default_window(taus.front(), taus.back(), &lo, &hi);
    CHECK(lo == doctest::Approx(6.0));
    CHECK(hi == doctest::Approx(11.76));
    t2f_rate_fit fit;
    REQUIRE(t2f_estimate_limit(taus.data(), ys.data(), taus.size(), lo, hi, &fit) == T2F_OK);
    CHECK(fit.limit == doctest::Approx(2.5).epsilon(1e-5));

    t2f_rate_fit bad;
    CHECK(t2f_fit_log_slope(taus.data(), ys.data(), 4, lo, hi, &bad) == T2F_ERR_ANALYSIS);
}
