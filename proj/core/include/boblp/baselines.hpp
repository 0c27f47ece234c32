#pragma once

#include "boblp/engine.hpp"
#include "boblp/model.hpp"

namespace boblp {

inline constexpr std::size_t kBruteForceMaxN = 26;

/// Exact Y_N and X_E by enumerating {0,1}^n in Gray-code order.
/// Throws kInstanceTooLarge above kBruteForceMaxN variables.
SolveReport brute_force(const Instance& inst);

struct EpsilonConfig {
  double delta = 1.0;
  double time_limit = 3600.0;

  void validate() const;
};

/// min z1 then z2 subject to z2 <= e, starting from e = +inf and moving to
/// z2(x*) - delta. One solution per point; iterations = |Y_N| + 1.
SolveReport epsilon_constraint(const Instance& inst, const EpsilonConfig& cfg = {});

}  // namespace boblp
