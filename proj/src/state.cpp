#include "state.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace t2flow {

void FieldState::validate() const {
    const auto check = [&](const std::vector<double>& a, const char* name) {
        if (static_cast<int>(a.size()) != grid.n)
            throw EvolutionError(std::string("field ") + name + " has wrong length", tau);
        for (double x : a)
            if (!std::isfinite(x))
                throw EvolutionError(std::string("non-finite value in field ") + name, tau);
    };
    check(v, "V");
    check(q, "Q");
    check(rho, "rho");
    check(ell, "l");
    check(pi_v, "pi_V");
    check(pi_q, "pi_Q");
    if (!std::isfinite(tau))
        throw EvolutionError("non-finite tau", tau);
    for (int j = 0; j < grid.n; ++j) {
        const double vt = pi_v[j] * std::exp(-rho[j]);
        const double qt = pi_q[j] * std::exp(-rho[j] - 2.0 * (v[j] - tau));
        if (!std::isfinite(vt))
            throw EvolutionError("non-finite derived V_tau", tau);
        if (!std::isfinite(qt))
            throw EvolutionError("non-finite derived Q_tau", tau);
    }
}

double FieldState::rho_min() const {
    return *std::min_element(rho.begin(), rho.end());
}

} // namespace t2flow
