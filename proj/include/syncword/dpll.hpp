#pragma once
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "syncword/cnf.hpp"

namespace syncword {

struct DpllOptions {
  // Larger instances belong to an external solver.
  std::uint32_t max_vars = 200000;
  // Search past this point throws TimeoutError.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct DpllStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
};

// Complete backtracking search with two-watched-literal unit propagation.
// Branches on the lowest unassigned variable, true first, so results are
// reproducible. Returns nullopt for unsatisfiable instances.
std::optional<Assignment> solve_internal(const CnfInstance& cnf, DpllOptions options = {},
                                         DpllStats* stats = nullptr);

}  // namespace syncword
