#pragma once

#include <array>
#include <functional>
#include <vector>

namespace t2flow {

struct KasnerPoint {
    double v;
    double lhat;
};

// Polarised Kasner closed form V = a tau + b, lhat = (a^2/2 - 2) tau + c;
// rho stays at its initial constant, Q = 0, kappa = 0.
KasnerPoint kasner_exact(double a, double b, double c, double tau);

template <int Dim>
struct Trajectory {
    std::vector<double> taus;
    std::vector<std::array<double, Dim>> values;
};

struct PhInitial {
    double v, v_tau, q, pi_q, rho, ell;
};

// Pseudo-homogeneous reduction (theta-independent fields, kappa = 1):
//   V_tautau = -e^l V_tau + e^{2(V-tau)} Q_tau^2,  pi_Q constant,
//   l_tau    = [V_tau^2 + e^{2(V-tau)} Q_tau^2]/2 - e^l - 2,
//   rho_tau  = e^l.
// Integrated with an adaptive Dormand-Prince 5(4) pair, implemented
// independently of the PDE right-hand side so agreement is a genuine
// cross-check. Samples are (V, V_tau, Q, Q_tau, rho, l).
Trajectory<6> ph_ode(const PhInitial& init, double tau_start, double tau_end,
                     double tol, double sample_interval);

// cbar' = dbar - cbar/2, dbar' = dbar/cbar^2 - 5 dbar/2.
Trajectory<2> cd_ode(double c0, double d0, double tau_end, double tol,
                     double sample_interval);

// Linearization at the fixed point (2/sqrt10, 1/sqrt10): row-major matrix
// [[-1/2, 1], [-5/2, 0]], eigenvalues -1/4 +- i sqrt(39)/4.
void cd_linearization(std::array<double, 4>& matrix, double& eig_re, double& eig_im);

constexpr double cd_fixed_c = 0.6324555320336759;  // 2/sqrt(10)
constexpr double cd_fixed_d = 0.31622776601683793; // 1/sqrt(10)

} // namespace t2flow
