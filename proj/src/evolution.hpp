#pragma once

#include "state.hpp"

#include <functional>
#include <vector>

#include "t2flow/t2flow.h"

namespace t2flow {

struct EvolutionConfig {
    double cfl_lambda = 0.5;
    double output_interval = 0.1;
    long max_steps = 200'000'000;
    bool filter_enabled = false;
};

// tau-derivatives of the six state arrays
struct StateDerivative {
    std::vector<double> d_v, d_q, d_rho, d_ell, d_pi_v, d_pi_q;
    explicit StateDerivative(int n)
        : d_v(n), d_q(n), d_rho(n), d_ell(n), d_pi_v(n), d_pi_q(n) {}
};

// First-order right-hand side of the evolution system:
//   V_tau  = pi_V e^{-rho}
//   Q_tau  = pi_Q e^{-rho - 2(V - tau)}
//   pi_V'  = d_theta(e^{2tau-rho} V_theta)
//            + e^{2(V-tau)+rho} (Q_tau^2 - e^{2(tau-rho)} Q_theta^2)
//   pi_Q'  = d_theta(e^{2V-rho} Q_theta)
//   rho'   = kappa e^l
//   l'     = J - rho' - 2,
//   J      = [V_tau^2 + e^{2(tau-rho)} V_theta^2
//             + e^{2(V-tau)} (Q_tau^2 + e^{2(tau-rho)} Q_theta^2)] / 2.
// The momentum constraint is monitored, never imposed.
StateDerivative rhs(const FieldState& state);

// lambda * spacing / max_j e^{tau - rho_j}
double cfl_dt(const FieldState& state, double cfl_lambda);

// classical 4-stage Runge-Kutta step; dt must be positive
FieldState step_rk4(const FieldState& state, double dt, bool filter = false);

using RecordCallback = std::function<void(const t2f_diagnostics&)>;

// Steps with dt = min(cfl_dt, distance to the next output time), emitting
// a diagnostics record at the start, at each output time, and at tau_end.
FieldState evolve(const FieldState& state, double tau_end,
                  const EvolutionConfig& config, const RecordCallback& on_record);

} // namespace t2flow
