#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grid.hpp"
#include "errors.hpp"
#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace t2flow;

namespace {

std::vector<double> sampled(const PeriodicGrid& g, double (*f)(double)) {
    std::vector<double> out(g.n);
    for (int j = 0; j < g.n; ++j) out[j] = f(g.theta(j));
    return out;
}

double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("grid invariants") {
    PeriodicGrid g(64);
    CHECK(g.h * g.n == 1.0);
    CHECK_THROWS_AS(PeriodicGrid(8), UsageError);
    CHECK_THROWS_AS(PeriodicGrid(65), UsageError);
}

TEST_CASE("derivative of a constant is exactly zero") {
    PeriodicGrid g(64);
    std::vector<double> f(g.n, 3.7251);
    const auto d = deriv_theta(f, g);
    for (double x : d) CHECK(x == 0.0);
}

TEST_CASE("derivative matches analytic sin on N=64") {
    PeriodicGrid g(64);
    const auto f = sampled(g, [](double th) { return std::sin(2.0 * std::numbers::pi * th); });
    const auto d = deriv_theta(f, g);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double exact = 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * g.theta(j));
        worst = std::max(worst, std::abs(d[j] - exact));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("derivative error shrinks x16 on grid doubling") {
    auto err_at = [](int n) {
        PeriodicGrid g(n);
        std::vector<double> f(g.n), dex(g.n);
        for (int j = 0; j < g.n; ++j) {
            const double th = g.theta(j);
            f[j] = std::sin(2.0 * std::numbers::pi * th) +
                   3.0 * std::cos(2.0 * std::numbers::pi * 2.0 * th);
            dex[j] = 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * th) -
                     3.0 * 2.0 * 2.0 * std::numbers::pi * std::sin(2.0 * std::numbers::pi * 2.0 * th);
        }
        const auto d = deriv_theta(f, g);
        double worst = 0.0;
        for (int j = 0; j < g.n; ++j) worst = std::max(worst, std::abs(d[j] - dex[j]));
        return worst;
    };
    const double e64 = err_at(64);
    const double e128 = err_at(128);
    const double ratio = e64 / e128;
    CHECK(ratio > 16.0 * 0.8);
    CHECK(ratio < 16.0 * 1.2);
}

TEST_CASE("observed convergence order is 4.0 +- 0.3 over three levels") {
    auto err_at = [](int n) {
        PeriodicGrid g(n);
        std::vector<double> f(g.n), dex(g.n);
        for (int j = 0; j < g.n; ++j) {
            const double th = 2.0 * std::numbers::pi * g.theta(j);
            f[j] = std::exp(std::sin(th));
            dex[j] = 2.0 * std::numbers::pi * std::cos(th) * std::exp(std::sin(th));
        }
        const auto d = deriv_theta(f, g);
        double worst = 0.0;
        for (int j = 0; j < g.n; ++j) worst = std::max(worst, std::abs(d[j] - dex[j]));
        return worst;
    };
    const double p1 = std::log2(err_at(32) / err_at(64));
    const double p2 = std::log2(err_at(64) / err_at(128));
    CHECK(p1 == doctest::Approx(4.0).epsilon(0.3 / 4.0));
    CHECK(p2 == doctest::Approx(4.0).epsilon(0.3 / 4.0));
}

TEST_CASE("derivative sum telescopes to rounding level") {
    PeriodicGrid g(64);
    GaussianStream gs(field_stream(99, 0));
    std::vector<double> f(g.n);
    for (double& x : f) x = gs.next();
    const auto d = deriv_theta(f, g);
    double sum = 0.0;
    for (double x : d) sum += x;
    CHECK(std::abs(sum) < 1e-13 * g.n * max_abs(d) + 1e-300);
}

TEST_CASE("length mismatch is a usage error") {
    PeriodicGrid g(64);
    std::vector<double> f(32, 1.0);
    CHECK_THROWS_AS(deriv_theta(f, g), UsageError);
}

TEST_CASE("mean basics") {
    std::vector<double> ones(48, 1.0);
    CHECK(mean(ones) == 1.0);
    std::vector<double> twos(48, 2.0);
    CHECK(mean(twos) == 2.0);

    PeriodicGrid g(64);
    const auto s = sampled(g, [](double th) { return std::sin(2.0 * std::numbers::pi * th); });
    CHECK(std::abs(mean(s)) < 1e-14);

    std::vector<double> empty;
    CHECK_THROWS_AS(mean(empty), UsageError);
}

TEST_CASE("mean is linear") {
    PeriodicGrid g(64);
    GaussianStream gs(field_stream(3, 1));
    std::vector<double> f(g.n), h(g.n), combo(g.n);
    for (int j = 0; j < g.n; ++j) {
        f[j] = gs.next();
        h[j] = gs.next();
        combo[j] = 2.5 * f[j] - 1.25 * h[j];
    }
    CHECK(mean(combo) == doctest::Approx(2.5 * mean(f) - 1.25 * mean(h)).epsilon(1e-13));
}

TEST_CASE("weighted mean basics") {
    std::vector<double> f(32, 1.0), w(32, 1.0);
    CHECK(weighted_mean(f, w) == 1.0);

    PeriodicGrid g(64);
    GaussianStream gs(field_stream(4, 2));
    std::vector<double> wr(g.n);
    for (double& x : wr) x = std::exp(0.3 * gs.next());
    std::vector<double> c(g.n, 1.7);
    CHECK(weighted_mean(c, wr) == doctest::Approx(1.7 * mean(wr)).epsilon(1e-14));

    std::vector<double> bad(10, 0.0);
    CHECK_THROWS_AS(weighted_mean(c, bad), UsageError);
}

TEST_CASE("low-pass filter zeroes the top third of modes") {
    PeriodicGrid g(64);
    std::vector<double> f(g.n);
    // mode 5 survives (5 <= 21), mode 30 is removed
    for (int j = 0; j < g.n; ++j) {
        const double th = 2.0 * std::numbers::pi * g.theta(j);
        f[j] = std::cos(5.0 * th) + 0.5 * std::sin(30.0 * th);
    }
    lowpass_filter(f);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double th = 2.0 * std::numbers::pi * g.theta(j);
        worst = std::max(worst, std::abs(f[j] - std::cos(5.0 * th)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("spectral antiderivative inverts the derivative on band-limited data") {
    PeriodicGrid g(64);
    std::vector<double> f(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double th = 2.0 * std::numbers::pi * g.theta(j);
        f[j] = 2.0 * std::numbers::pi * 3.0 * std::cos(3.0 * th);
    }
    const auto prim = spectral_antiderivative(f, g);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double th = 2.0 * std::numbers::pi * g.theta(j);
        worst = std::max(worst, std::abs(prim[j] - std::sin(3.0 * th)));
    }
    CHECK(worst < 1e-12);
}
