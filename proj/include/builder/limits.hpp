#pragma once

#include <cstdint>

namespace builder {

// Size limits of the exponential exact routines, chosen so that a single
// check stays well under a second.
struct ExactLimits {
  std::int64_t expander_vertices = 24;
  std::int64_t spanned_vertices = 24;
  std::int64_t hamiltonian_vertices = 20;
  std::int64_t booster_vertices = 14;
  std::int64_t closure_vertices = 14;
  std::int64_t path_length = 8;
  std::int64_t path_host_edges = 10000;
  std::int64_t cycle_trap_active_vertices = 500;
  std::int64_t target_vertices = 10;
};

inline constexpr ExactLimits kExactLimits{};

}  // namespace builder
