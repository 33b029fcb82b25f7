#include "reference.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace t2flow {

KasnerPoint kasner_exact(double a, double b, double c, double tau) {
    return {a * tau + b, (0.5 * a * a - 2.0) * tau + c};
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// difference between 5th and embedded 4th order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <int Dim>
using Rhs = std::function<void(double, const std::array<double, Dim>&,
                               std::array<double, Dim>&)>;

// Integrate to each sample time exactly (steps are clipped, no dense output).
template <int Dim>
Trajectory<Dim> integrate_dp54(const Rhs<Dim>& f, std::array<double, Dim> y,
                               double t, double t_end, double rtol,
                               double sample_interval) {
    if (!(rtol > 0.0))
        throw AnalysisError("ode oracle: tolerance must be positive");
    if (!(t_end > t))
        throw AnalysisError("ode oracle: tau_end must exceed the start time");
    if (!(sample_interval > 0.0))
        throw AnalysisError("ode oracle: sample interval must be positive");

    const double atol = rtol;
    Trajectory<Dim> traj;
    traj.taus.push_back(t);
    traj.values.push_back(y);

    const double t_start = t;
    long sample_index = 1;
    double next_sample = t_start + sample_interval;
    double dt = std::min(1e-3, t_end - t);

    std::array<double, Dim> k1, k2, k3, k4, k5, k6, k7, yt, y5;
    f(t, y, k1);

    const double tiny = 1e-12 * std::max(1.0, std::abs(t_end));
    while (t < t_end - tiny) {
        const double t_target = std::min(next_sample, t_end);
        bool clipped = false;
        if (t + dt >= t_target - tiny) {
            dt = t_target - t;
            clipped = true;
        }
        if (dt < 1e-14 * std::max(1.0, std::abs(t)))
            throw AnalysisError("ode oracle: step size underflow at tau=" + std::to_string(t));

        for (int i = 0; i < Dim; ++i) yt[i] = y[i] + dt * a21 * k1[i];
        f(t + c2 * dt, yt, k2);
        for (int i = 0; i < Dim; ++i) yt[i] = y[i] + dt * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * dt, yt, k3);
        for (int i = 0; i < Dim; ++i)
            yt[i] = y[i] + dt * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * dt, yt, k4);
        for (int i = 0; i < Dim; ++i)
            yt[i] = y[i] + dt * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * dt, yt, k5);
        for (int i = 0; i < Dim; ++i)
            yt[i] = y[i] + dt * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                 a64 * k4[i] + a65 * k5[i]);
        f(t + dt, yt, k6);
        for (int i = 0; i < Dim; ++i)
            y5[i] = y[i] + dt * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                 b5 * k5[i] + b6 * k6[i]);
        f(t + dt, y5, k7); // FSAL stage, also the error estimator's last node

        double err = 0.0;
        for (int i = 0; i < Dim; ++i) {
            const double ei = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                    e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / Dim);

        if (err <= 1.0) {
            t = clipped ? t_target : t + dt;
            y = y5;
            k1 = k7;
            if (clipped && std::abs(t - next_sample) <= tiny) {
                traj.taus.push_back(t);
                traj.values.push_back(y);
                ++sample_index;
                next_sample = t_start + sample_interval * static_cast<double>(sample_index);
            } else if (clipped && std::abs(t - t_end) <= tiny) {
                traj.taus.push_back(t);
                traj.values.push_back(y);
            }
        }
        const double factor = (err > 0.0)
                                  ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0)
                                  : 5.0;
        dt = std::min(dt * factor, t_end - t > 0 ? (t_end - t) : dt);
        if (dt <= 0.0) dt = tiny;
    }
    return traj;
}

} // namespace

Trajectory<6> ph_ode(const PhInitial& init, double tau_start, double tau_end,
                     double tol, double sample_interval) {
    const double pi_q = init.pi_q; // exact constant of the reduction
    const Rhs<5> f = [pi_q](double tau, const std::array<double, 5>& y,
                            std::array<double, 5>& dy) {
        const double v = y[0], vt = y[1], rho = y[3], ell = y[4];
        const double e2vmt = std::exp(2.0 * (v - tau));
        const double qt = pi_q * std::exp(-rho) / e2vmt;
        const double el = std::exp(ell);
        dy[0] = vt;
        dy[1] = -el * vt + e2vmt * qt * qt;
        dy[2] = qt;
        dy[3] = el;
        dy[4] = 0.5 * (vt * vt + e2vmt * qt * qt) - el - 2.0;
    };
    const std::array<double, 5> y0{init.v, init.v_tau, init.q, init.rho, init.ell};
    const Trajectory<5> raw = integrate_dp54<5>(f, y0, tau_start, tau_end, tol, sample_interval);

    Trajectory<6> out;
    out.taus = raw.taus;
    out.values.reserve(raw.values.size());
    for (size_t i = 0; i < raw.values.size(); ++i) {
        const auto& y = raw.values[i];
        const double qt = pi_q * std::exp(-y[3]) * std::exp(-2.0 * (y[0] - out.taus[i]));
        out.values.push_back({y[0], y[1], y[2], qt, y[3], y[4]});
    }
    return out;
}

Trajectory<2> cd_ode(double c0, double d0, double tau_end, double tol,
                     double sample_interval) {
    const Rhs<2> f = [](double tau, const std::array<double, 2>& y,
                         std::array<double, 2>& dy) {
        const double c = y[0], d = y[1];
        if (std::abs(c) < 1e-8)
            throw AnalysisError("cd ode: cbar reached zero near tau=" + std::to_string(tau));
        dy[0] = d - 0.5 * c;
        dy[1] = d / (c * c) - 2.5 * d;
    };
    return integrate_dp54<2>(f, {c0, d0}, 0.0, tau_end, tol, sample_interval);
}

void cd_linearization(std::array<double, 4>& matrix, double& eig_re, double& eig_im) {
    matrix = {-0.5, 1.0, -2.5, 0.0};
    // roots of lambda^2 + lambda/2 + 5/2
    eig_re = -0.25;
    eig_im = std::sqrt(39.0) / 4.0;
}

} // namespace t2flow
