#pragma once

#include <vector>

#include "tiersat/types.hpp"

namespace tiersat {

// What first-UIP conflict analysis hands back to the search loop.
struct ConflictAnalysisOutcome {
    std::vector<Lit> learned; // learned[0] is the asserting literal
    int backjump_level = 0;
    int conflict_level = 0;
    int lbd = 0;              // computed after minimization
    // Decision literals of levels 1..backjump_level, in decision order.
    // Only filled when backjump-clause learning is on.
    std::vector<Lit> decisions;
};

} // namespace tiersat
