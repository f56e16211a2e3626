#include <algorithm>
#include <stdexcept>

#include "tiersat/instrumentation.hpp"
#include "tiersat/solver.hpp"

namespace tiersat {

UsageCentralityProfile usage_centrality_profile(const Formula& f, const PolicyConfig& base,
                                                uint64_t conflict_budget, int num_bins) {
    PolicyConfig cfg = base;
    cfg.disable_deletion = true;
    cfg.compute_centrality_always = true;
    Solver s(f, cfg);
    if (!s.centrality())
        throw std::runtime_error("centrality map unavailable within the time budget; "
                                 "usage profile refused");
    s.solve({.max_conflicts = conflict_budget});

    UsageCentralityProfile prof;
    prof.learned_total = s.instr().learned_total();
    prof.learned_units = s.instr().removed_satisfied(); // deletion is off: units only
    std::vector<std::pair<double, uint64_t>> pts;
    for (StoreRef h : s.store().alive_refs()) {
        const StoredClause& rec = s.store().get(h);
        if (!rec.has_centrality()) continue;
        pts.emplace_back(rec.centrality, rec.usage_count);
        prof.max_centrality = std::max(prof.max_centrality, rec.centrality);
    }
    prof.population = pts.size();
    if (pts.empty()) return prof;

    const int nb = std::max(1, num_bins);
    std::vector<uint64_t> count(nb, 0);
    std::vector<double> usage_sum(nb, 0.0);
    const double maxc = prof.max_centrality;
    for (auto [c, u] : pts) {
        int b = maxc > 0.0 ? std::min(nb - 1, static_cast<int>(c / maxc * nb)) : 0;
        count[b] += 1;
        usage_sum[b] += static_cast<double>(u);
    }
    for (int i = 0; i < nb; ++i) {
        if (count[i] == 0) continue;
        UsageCentralityProfile::Bin bin;
        bin.lo = maxc * i / nb;
        bin.hi = maxc * (i + 1) / nb;
        bin.count = count[i];
        bin.mean_usage = usage_sum[i] / static_cast<double>(count[i]);
        prof.bins.push_back(bin);
    }
    return prof;
}

} // namespace tiersat
