#pragma once

#include "state.hpp"

#include "t2flow/t2flow.h"

#include <span>
#include <utility>
#include <vector>

namespace t2flow {

// [tau_lo, tau_hi] = last half of the run minus the final 2 percent
std::pair<double, double> default_window(double tau_first, double tau_last);

// least-squares line on (tau, log value); values must be positive in window
t2f_rate_fit fit_log_slope(std::span<const double> taus, std::span<const double> values,
                           double tau_lo, double tau_hi);

// value(tau) = L + A e^{-tau/4}, linear least squares in (L, A); falls back
// to the tail mean (converged = 0) when the basis is degenerate
t2f_rate_fit estimate_limit(std::span<const double> taus, std::span<const double> values,
                            double tau_lo, double tau_hi);

// linear fit value = C_V tau + a; exponent carries C_V
t2f_rate_fit fit_cv(std::span<const double> taus, std::span<const double> values,
                    double tau_lo, double tau_hi);

// period from mean spacing of detrended zero crossings (trend = moving mean)
double oscillation_period(std::span<const double> taus, std::span<const double> values,
                          double tau_lo, double tau_hi);

struct ConvergenceOrder {
    double order;
    bool roundoff_limited;
};

// p = log2(||a-b|| / ||b-c||) in discrete L2; inputs of lengths N,2N,4N are
// restricted to the coarse points first
ConvergenceOrder convergence_order(std::span<const double> coarse,
                                   std::span<const double> mid,
                                   std::span<const double> fine);

struct RhoProfileLimit {
    std::vector<double> profile; // last Pi^{-1} e^rho
    t2f_rate_fit cauchy_rate;    // decay of successive max-norm differences
};

RhoProfileLimit rho_profile_limit(std::span<const FieldState* const> states);

} // namespace t2flow
