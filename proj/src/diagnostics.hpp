#pragma once

#include "state.hpp"

#include "t2flow/t2flow.h"

namespace t2flow {

// A = <pi_V - pi_Q Q>, B = <pi_Q>; both exactly conserved by the flow
// (B to rounding even discretely, A at the scheme's order).
struct ConservedAB {
    double a, b;
};
ConservedAB conserved_ab(const FieldState& state);

struct EnergySuite {
    double energy;      // E
    double volume;      // Pi
    double twist_y;     // Y
    double correction;  // Lambda
    double corrected_h; // H = Pi (E + Lambda)
    double c_var, d_var;
    double omega;
    bool cd_valid;      // false when H <= 0
    double yj;          // <e^{l+rho+2tau} J>, the exact Y_tau
};
EnergySuite energy_suite(const FieldState& state);

struct BergerSuite {
    double s_diag, t_diag, ev_diag, eq_diag, w_diag;
};
BergerSuite berger_suite(const FieldState& state);

// max_j |l_theta - (V_theta V_tau + e^{2(V-tau)} Q_theta Q_tau)|
double constraint_residual(const FieldState& state);

struct BootstrapBounds {
    double f_bound;
    double f_tilde_bound;
    bool omega_bound_ok;
};
BootstrapBounds bootstrap_bounds(const FieldState& state, double rho0_ref);

t2f_diagnostics compute_diagnostics(const FieldState& state, double rho0_ref);

} // namespace t2flow
