#pragma once

#include "state.hpp"

#include "t2flow/t2flow.h"

#include <cstdint>
#include <utility>
#include <vector>

namespace t2flow {

// Zero-mean random Fourier sum a_m cos(2 pi m theta) + b_m sin(2 pi m theta),
// m = 1..m_max, coefficients N(0,1) scaled by amplitude/m.
std::vector<double> sample_fourier(uint64_t seed, int m_max, double amplitude,
                                   const PeriodicGrid& grid, uint64_t substream = 0);

// Solve the momentum constraint l_theta = e^{-rho}(V_theta pi_V + Q_theta pi_Q)
// by first projecting pi_V along V_theta to kill the periodicity obstruction
// and then integrating. Returns (l, adjusted pi_V).
std::pair<std::vector<double>, std::vector<double>>
solve_constraint(const std::vector<double>& v, const std::vector<double>& q,
                 const std::vector<double>& pi_v, const std::vector<double>& pi_q,
                 const std::vector<double>& rho, double ell0,
                 const PeriodicGrid& grid, bool spectral = false);

FieldState make_initial_data(const t2f_sampler_spec& spec, const PeriodicGrid& grid);

// Conditions of the bootstrap smallness lemma evaluated at the state's tau
// (playing the role of s0).
t2f_smallness_report check_smallness(const FieldState& state, double eps,
                                     double m_cap, double c1);

const char* smallness_condition_name(int cond);

} // namespace t2flow
