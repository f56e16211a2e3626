// Compiled out entirely in the slim library variant.
#ifndef TIERSAT_NO_AUX_HC

#include "tiersat/aux_learn.hpp"

#include <cassert>

namespace tiersat {

std::optional<AuxClause> derive_backjump_clause(const ConflictAnalysisOutcome& o,
                                                const AuxLearnConfig& cfg) {
    if (cfg.mode == AuxMode::Off) return std::nullopt;
    const int b = o.backjump_level;
    if (b < 1 || b > cfg.max_backjump_level) return std::nullopt;
    assert(static_cast<int>(o.decisions.size()) >= b);
    assert(!o.learned.empty());
    AuxClause c;
    c.lits.reserve(b + 1);
    c.lits.push_back(o.learned[0]);
    for (int i = b - 1; i >= 0; --i) c.lits.push_back(~o.decisions[i]);
    c.assigned_lbd = b; // one level per surviving decision
    return c;
}

} // namespace tiersat

#endif // TIERSAT_NO_AUX_HC
