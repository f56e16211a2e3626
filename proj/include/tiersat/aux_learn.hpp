#pragma once

#include <optional>
#include <vector>

#include "tiersat/analysis.hpp"
#include "tiersat/policy.hpp"

namespace tiersat {

struct AuxClause {
    // [m, ~l_b, ~l_{b-1}, ..., ~l_1] where m is the asserting literal of the
    // main learned clause and l_1..l_b the decisions of the surviving prefix.
    // This order makes positions 0 and 1 valid watches right after the jump:
    // m is about to become true, ~l_b is the newest false literal.
    std::vector<Lit> lits;
    int assigned_lbd = 0; // b, one level per surviving decision
};

// Second clause learned from the same conflict: the backjump clause
// "the surviving decisions imply m".  Emitted only for backjump levels
// 1..max_backjump_level.
std::optional<AuxClause> derive_backjump_clause(const ConflictAnalysisOutcome& o,
                                                const AuxLearnConfig& cfg);

} // namespace tiersat
