#pragma once

#include "grid.hpp"

#include <vector>

namespace t2flow {

// Full PDE state at one areal time. pi_v = e^rho V_tau and
// pi_q = e^{rho + 2(V - tau)} Q_tau are the evolved momenta; twist is the
// kappa flag (1 for non-Gowdy runs where rho_tau = e^l, 0 disables the
// twist source for Gowdy/Kasner reference runs).
struct FieldState {
    PeriodicGrid grid;
    double tau = 0.0;
    int twist = 1;
    std::vector<double> v, q, rho, ell, pi_v, pi_q;

    explicit FieldState(const PeriodicGrid& g)
        : grid(g), v(g.n, 0.0), q(g.n, 0.0), rho(g.n, 0.0), ell(g.n, 0.0),
          pi_v(g.n, 0.0), pi_q(g.n, 0.0) {}

    // throws EvolutionError when any entry or derived point value
    // (V_tau, Q_tau) is non-finite
    void validate() const;

    double rho_min() const;
};

} // namespace t2flow
