#include "analysis.hpp"

#include "diagnostics.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace t2flow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct WindowData {
    std::vector<double> t, y;
};

WindowData select_window(std::span<const double> taus, std::span<const double> values,
                         double tau_lo, double tau_hi) {
    if (taus.size() != values.size())
        throw UsageError("fit: tau/value length mismatch");
    WindowData w;
    for (size_t i = 0; i < taus.size(); ++i) {
        if (taus[i] >= tau_lo && taus[i] <= tau_hi) {
            w.t.push_back(taus[i]);
            w.y.push_back(values[i]);
        }
    }
    return w;
}

struct LineFit {
    double slope, intercept, residual_rms;
};

LineFit least_squares_line(const std::vector<double>& t, const std::vector<double>& y) {
    const size_t n = t.size();
    double tbar = 0.0, ybar = 0.0;
    for (size_t i = 0; i < n; ++i) { tbar += t[i]; ybar += y[i]; }
    tbar /= n; ybar /= n;
    double stt = 0.0, sty = 0.0;
    for (size_t i = 0; i < n; ++i) {
        stt += (t[i] - tbar) * (t[i] - tbar);
        sty += (t[i] - tbar) * (y[i] - ybar);
    }
    LineFit f{};
    f.slope = (stt > 0.0) ? sty / stt : 0.0;
    f.intercept = ybar - f.slope * tbar;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * t[i]);
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / n);
    return f;
}

} // namespace

std::pair<double, double> default_window(double tau_first, double tau_last) {
    const double span = tau_last - tau_first;
    return {tau_first + 0.5 * span, tau_last - 0.02 * span};
}

t2f_rate_fit fit_log_slope(std::span<const double> taus, std::span<const double> values,
                           double tau_lo, double tau_hi) {
    WindowData w = select_window(taus, values, tau_lo, tau_hi);
    if (w.t.size() < 8)
        throw AnalysisError("fit_log_slope: fewer than 8 samples in window");
    for (double& y : w.y) {
        if (!(y > 0.0))
            throw AnalysisError("fit_log_slope: non-positive value in window");
        y = std::log(y);
    }
    const LineFit f = least_squares_line(w.t, w.y);
    t2f_rate_fit out{};
    out.exponent = f.slope;
    out.amplitude = std::exp(f.intercept);
    out.limit = 0.0; // pure exponential model decays to zero
    out.tau_lo = tau_lo;
    out.tau_hi = tau_hi;
    out.residual_rms = f.residual_rms;
    out.converged = 1;
    return out;
}

t2f_rate_fit estimate_limit(std::span<const double> taus, std::span<const double> values,
                            double tau_lo, double tau_hi) {
    WindowData w = select_window(taus, values, tau_lo, tau_hi);
    const size_t n = w.t.size();
    if (n < 8)
        throw AnalysisError("estimate_limit: fewer than 8 samples in window");

    // normal equations for value = L + A phi, phi = e^{-tau/4}
    double sp = 0.0, spp = 0.0, sy = 0.0, spy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double phi = std::exp(-0.25 * w.t[i]);
        sp += phi;
        spp += phi * phi;
        sy += w.y[i];
        spy += phi * w.y[i];
    }
    const double det = n * spp - sp * sp;
    const double phi_var = spp / n - (sp / n) * (sp / n);

    t2f_rate_fit out{};
    out.exponent = -0.25;
    out.tau_lo = tau_lo;
    out.tau_hi = tau_hi;

    // tail-mean seed doubles as the fallback when the basis is degenerate
    double tail = 0.0;
    size_t tail_n = std::max<size_t>(1, n / 4);
    for (size_t i = n - tail_n; i < n; ++i) tail += w.y[i];
    tail /= tail_n;

    if (phi_var < 1e-300 || std::abs(det) < 1e-300) {
        out.limit = tail;
        out.amplitude = 0.0;
        out.converged = 0;
        out.residual_rms = kNaN;
        return out;
    }
    const double limit = (spp * sy - sp * spy) / det;
    const double ampl = (n * spy - sp * sy) / det;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = w.y[i] - (limit + ampl * std::exp(-0.25 * w.t[i]));
        ss += r * r;
    }
    out.limit = limit;
    out.amplitude = ampl;
    out.residual_rms = std::sqrt(ss / n);
    out.converged = std::isfinite(limit) && std::isfinite(ampl);
    if (!out.converged) {
        out.limit = tail;
        out.amplitude = 0.0;
    }
    return out;
}

t2f_rate_fit fit_cv(std::span<const double> taus, std::span<const double> values,
                    double tau_lo, double tau_hi) {
    WindowData w = select_window(taus, values, tau_lo, tau_hi);
    if (w.t.size() < 8)
        throw AnalysisError("fit_cv: fewer than 8 samples in window");
    const LineFit f = least_squares_line(w.t, w.y);
    t2f_rate_fit out{};
    out.exponent = f.slope; // C_V
    out.amplitude = f.intercept;
    out.limit = kNaN;
    out.tau_lo = tau_lo;
    out.tau_hi = tau_hi;
    out.residual_rms = f.residual_rms;
    out.converged = 1;
    return out;
}

double oscillation_period(std::span<const double> taus, std::span<const double> values,
                          double tau_lo, double tau_hi) {
    WindowData w = select_window(taus, values, tau_lo, tau_hi);
    const size_t n = w.t.size();
    if (n < 8)
        throw AnalysisError("oscillation_period: fewer than 8 samples in window");

    // moving-mean trend; the edge samples have one-sided windows and are
    // excluded from crossing detection
    const int hw = std::max<int>(2, static_cast<int>(n) / 16);
    std::vector<double> det(n);
    double scale = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const int lo = std::max<int>(0, static_cast<int>(i) - hw);
        const int hi = std::min<int>(static_cast<int>(n) - 1, static_cast<int>(i) + hw);
        double m = 0.0;
        for (int k = lo; k <= hi; ++k) m += w.y[k];
        m /= (hi - lo + 1);
        det[i] = w.y[i] - m;
        scale = std::max(scale, std::abs(w.y[i]));
    }
    const double floor = 1e-12 * std::max(1.0, scale);

    std::vector<double> crossings;
    const size_t first = static_cast<size_t>(hw) + 1;
    const size_t last = n - static_cast<size_t>(hw);
    for (size_t i = first; i < last; ++i) {
        const double a = det[i - 1], b = det[i];
        if (std::abs(a) < floor || std::abs(b) < floor) continue;
        if ((a < 0.0) != (b < 0.0)) {
            const double frac = a / (a - b);
            crossings.push_back(w.t[i - 1] + frac * (w.t[i] - w.t[i - 1]));
        }
    }
    if (crossings.size() < 4)
        throw AnalysisError("oscillation_period: series crosses its trend fewer than 4 times");
    double spacing = (crossings.back() - crossings.front()) /
                     static_cast<double>(crossings.size() - 1);
    return 2.0 * spacing;
}

namespace {

std::vector<double> restrict_to(std::span<const double> fine, size_t n_coarse) {
    if (fine.size() == n_coarse) return {fine.begin(), fine.end()};
    if (fine.size() == 2 * n_coarse) {
        std::vector<double> out(n_coarse);
        for (size_t j = 0; j < n_coarse; ++j) out[j] = fine[2 * j];
        return out;
    }
    if (fine.size() == 4 * n_coarse) {
        std::vector<double> out(n_coarse);
        for (size_t j = 0; j < n_coarse; ++j) out[j] = fine[4 * j];
        return out;
    }
    throw AnalysisError("convergence_order: series lengths are not aligned "
                        "(need equal or N/2N/4N)");
}

double l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double ss = 0.0;
    for (size_t j = 0; j < a.size(); ++j) ss += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(ss / a.size());
}

} // namespace

ConvergenceOrder convergence_order(std::span<const double> coarse,
                                   std::span<const double> mid,
                                   std::span<const double> fine) {
    if (coarse.empty())
        throw AnalysisError("convergence_order: empty series");
    const std::vector<double> a(coarse.begin(), coarse.end());
    const std::vector<double> b = restrict_to(mid, a.size());
    const std::vector<double> c = restrict_to(fine, a.size());

    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    const double floor = 1e-13 * std::max(1.0, scale);

    const double d_ab = l2_diff(a, b);
    const double d_bc = l2_diff(b, c);
    ConvergenceOrder out{};
    if (d_ab < floor || d_bc < floor) {
        out.order = kNaN;
        out.roundoff_limited = true;
        return out;
    }
    out.order = std::log2(d_ab / d_bc);
    out.roundoff_limited = false;
    return out;
}

RhoProfileLimit rho_profile_limit(std::span<const FieldState* const> states) {
    if (states.size() < 3)
        throw AnalysisError("rho_profile_limit: need at least 3 states");
    const int n = states[0]->grid.n;
    std::vector<std::vector<double>> profiles;
    std::vector<double> taus;
    double prev_tau = -std::numeric_limits<double>::infinity();
    for (const FieldState* s : states) {
        if (s->grid.n != n)
            throw AnalysisError("rho_profile_limit: states on different grids");
        if (!(s->tau > prev_tau))
            throw AnalysisError("rho_profile_limit: states must have increasing tau");
        prev_tau = s->tau;
        const EnergySuite e = energy_suite(*s);
        std::vector<double> p(n);
        for (int j = 0; j < n; ++j) p[j] = std::exp(s->rho[j]) / e.volume;
        profiles.push_back(std::move(p));
        taus.push_back(s->tau);
    }

    std::vector<double> diff_tau, diff_val;
    for (size_t i = 1; i < profiles.size(); ++i) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(profiles[i][j] - profiles[i - 1][j]));
        diff_tau.push_back(taus[i]);
        diff_val.push_back(worst);
    }

    RhoProfileLimit out;
    out.profile = profiles.back();
    t2f_rate_fit& fit = out.cauchy_rate;
    fit = t2f_rate_fit{};
    fit.tau_lo = diff_tau.front();
    fit.tau_hi = diff_tau.back();

    const bool degenerate =
        std::all_of(diff_val.begin(), diff_val.end(), [](double d) { return d < 1e-14; });
    if (degenerate) {
        fit.exponent = -std::numeric_limits<double>::infinity();
        fit.amplitude = 0.0;
        fit.limit = 0.0;
        fit.residual_rms = 0.0;
        fit.converged = 1;
        return out;
    }
    std::vector<double> lt, lv;
    for (size_t i = 0; i < diff_val.size(); ++i) {
        if (diff_val[i] > 0.0) {
            lt.push_back(diff_tau[i]);
            lv.push_back(std::log(diff_val[i]));
        }
    }
    if (lt.size() < 2)
        throw AnalysisError("rho_profile_limit: not enough nonzero differences to fit");
    const LineFit f = least_squares_line(lt, lv);
    fit.exponent = f.slope;
    fit.amplitude = std::exp(f.intercept);
    fit.limit = 0.0;
    fit.residual_rms = f.residual_rms;
    fit.converged = 1;
    return out;
}

} // namespace t2flow
