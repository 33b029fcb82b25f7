#pragma once

#include "state.hpp"

#include <string>

namespace t2flow {

// Binary checkpoint, bit-exact round trip. Layout (little-endian):
//   magic "T2F1" | u32 version | u32 N | f64 tau | u8 kappa |
//   six arrays V, Q, rho, l, pi_V, pi_Q of N f64 each.
void save_checkpoint(const FieldState& state, const std::string& path);
FieldState load_checkpoint(const std::string& path);

} // namespace t2flow
