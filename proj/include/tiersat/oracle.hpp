#pragma once

#include <optional>
#include <vector>

#include "tiersat/cnf.hpp"

namespace tiersat {

// Ground-truth reference solver, deliberately independent of the CDCL core:
// plain recursive DPLL with unit propagation and no learning.  Refuses
// formulas with more than kOracleMaxVars variables.
inline constexpr int kOracleMaxVars = 32;

// A model (indexed by variable) when satisfiable, nullopt when not.
// Throws std::invalid_argument above the variable limit.
std::optional<std::vector<bool>> oracle_solve(const Formula& f);

// true iff f entails c, decided by checking f AND NOT(c) unsatisfiable.
bool oracle_entails(const Formula& f, const Clause& c);

} // namespace tiersat
