#pragma once

#include <span>
#include <vector>

namespace t2flow {

// Uniform periodic grid on theta in [0,1) with unit total measure, so
// every integral over S^1 is a plain mean.
struct PeriodicGrid {
    int n = 0;
    double h = 0.0; // spacing, = 1/n

    explicit PeriodicGrid(int n_points);

    double theta(int j) const { return h * static_cast<double>(j); }
};

// 4th-order centered periodic derivative,
// (f_{j-2} - 8 f_{j-1} + 8 f_{j+1} - f_{j+2}) / (12 h).
std::vector<double> deriv_theta(std::span<const double> f, const PeriodicGrid& grid);
void deriv_theta_into(std::span<const double> f, const PeriodicGrid& grid,
                      std::span<double> out);

// Discrete S^1-mean (1/N) sum_j f_j.
double mean(std::span<const double> f);

// <f w>, no normalization by <w>.
double weighted_mean(std::span<const double> f, std::span<const double> w);

// Zero all Fourier modes with |m| > n/3 (in place).
void lowpass_filter(std::vector<double>& f);

// Periodic antiderivative of a zero-mean sample vector, F(theta_0) = 0.
// Trapezoid version carries the O(h^2) Euler-Maclaurin defect; the
// spectral version is exact on resolved modes.
std::vector<double> cumtrapz_periodic(std::span<const double> g, const PeriodicGrid& grid);
std::vector<double> spectral_antiderivative(std::span<const double> g, const PeriodicGrid& grid);

} // namespace t2flow
