#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tiersat/cnf.hpp"

namespace tiersat {

// Normalized betweenness per variable, in [0,1].
struct CentralityMap {
    std::vector<double> value; // indexed by var; value[0] unused
    int64_t computed_in_ms = 0;

    double of_var(Var v) const { return value[v]; }
};

// Exact unweighted betweenness counting ordered vertex pairs (s,t).
// Returns nullopt if the wall-clock budget runs out; the budget is checked
// before every source vertex.
std::optional<std::vector<double>> brandes_betweenness(const PrimalGraph& g, uint64_t budget_ms);

// raw / ((n-1)(n-2)), clamped to [0,1]; zero for n < 3.
double normalize_centrality(double raw, int n);

std::optional<CentralityMap> compute_centrality_map(const PrimalGraph& g, uint64_t budget_ms);

// Mean of the member variables' normalized centralities.
double clause_centrality(std::span<const Lit> lits, const CentralityMap& m);

struct HcConfig {
    double ct_init = 0.008;
    double ct_step = 0.001;
    double ct_floor = 0.001;
    double target_fraction = 0.0002; // 0.02% of all learned clauses
    uint64_t review_period = 100000; // conflicts between threshold reviews
    uint64_t max_hc = 10000;
    int size_limit = 0; // 0 = no size limit
    uint64_t budget_ms = 150000;
};

// Adaptive admission of high-centrality clauses into the permanent store.
// The threshold is kept in integer thousandths so the review trajectory is
// exact (0.008, 0.007, ..., 0.001).
class HcController {
public:
    explicit HcController(const HcConfig& cfg);

    double ct() const { return static_cast<double>(ct_mils_) / 1000.0; }
    uint64_t admitted() const { return admitted_; }
    const HcConfig& config() const { return cfg_; }

    // True iff the clause clears the threshold, the admission cap, and the
    // size limit; counts the admission when true.
    bool admit(int clause_size, double centrality);

    // Review-period update: lower the threshold while HC clauses lag behind
    // the target fraction of all learned clauses.
    void tick(uint64_t learned_total);

private:
    HcConfig cfg_;
    int64_t ct_mils_;
    int64_t step_mils_;
    int64_t floor_mils_;
    uint64_t admitted_ = 0;
};

} // namespace tiersat
