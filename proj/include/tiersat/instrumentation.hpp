#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tiersat/aux_learn.hpp"
#include "tiersat/clause_store.hpp"

namespace tiersat {

struct Formula;

// One stats snapshot; the CSV column order is fixed.
struct StatsRow {
    uint64_t conflict_no = 0;
    uint64_t core = 0;
    uint64_t tier2 = 0;
    uint64_t local = 0;
    uint64_t learned_total = 0;
    double perm_fraction = 0.0; // clauses admitted to Core / learned_total
    uint64_t hc_admitted = 0;
    double ct = 0.0;
    uint64_t aux_emitted = 0;
};

std::string stats_csv_header();
std::string stats_row_csv(const StatsRow& r);

struct AuxRecord {
    std::vector<Lit> lits;
    int assigned_lbd = 0;
    int backjump_level = 0;
};

// Run counters and periodic snapshots for one solve.
class Instrumentation {
public:
    explicit Instrumentation(uint64_t snapshot_period) : period_(snapshot_period) {}

    void on_learned(bool unit) {
        ++learned_total_;
        if (unit) ++removed_satisfied_; // units fold into the level-0 assignment
    }
    void on_aux_emitted() { ++aux_emitted_; }
    void on_store_event(const StoreEvent& e);
    void record_learned_stream(int size, int lbd) {
        if (record_learned) learned_stream.emplace_back(size, lbd);
    }
    void record_aux_clause(AuxRecord r) {
        if (record_aux) aux_records.push_back(std::move(r));
    }

    bool snapshot_due(uint64_t conflict_no) const {
        return period_ != 0 && conflict_no % period_ == 0;
    }
    StatsRow make_row(uint64_t conflict_no, const ClauseStore& store,
                      const HcController* hc) const;
    void snapshot(uint64_t conflict_no, const ClauseStore& store, const HcController* hc) {
        rows_.push_back(make_row(conflict_no, store, hc));
    }

    const std::vector<StatsRow>& rows() const { return rows_; }
    std::string rows_csv() const;
    void write_rows_csv(const std::string& path) const;

    uint64_t learned_total() const { return learned_total_; }
    uint64_t deleted() const { return deleted_; }
    uint64_t removed_satisfied() const { return removed_satisfied_; }
    uint64_t admitted_to_core() const { return admitted_to_core_; }
    uint64_t aux_emitted() const { return aux_emitted_; }

    // Optional heavyweight recording, off by default.
    bool record_events = false;
    std::vector<StoreEvent> events;
    bool record_learned = false;
    std::vector<std::pair<int, int>> learned_stream; // (size, lbd) per stored clause
    bool record_aux = false;
    std::vector<AuxRecord> aux_records;

private:
    uint64_t period_;
    uint64_t learned_total_ = 0;
    uint64_t deleted_ = 0;
    uint64_t removed_satisfied_ = 0;
    uint64_t admitted_to_core_ = 0;
    uint64_t aux_emitted_ = 0;
    std::vector<StatsRow> rows_;
};

// Usage-vs-centrality measurement: solve with deletion disabled for a fixed
// conflict budget, then bin the surviving learned clauses by centrality.
struct UsageCentralityProfile {
    struct Bin {
        double lo = 0.0, hi = 0.0;
        uint64_t count = 0;
        double mean_usage = 0.0;
    };
    std::vector<Bin> bins; // non-empty bins only
    uint64_t population = 0;     // stored learned clauses that were binned
    uint64_t learned_total = 0;  // all learned clauses, units included
    uint64_t learned_units = 0;  // unit clauses (absorbed, never stored)
    double max_centrality = 0.0;

    std::string to_csv() const;
};

// Throws std::runtime_error when no centrality map can be computed within the
// configured budget.
UsageCentralityProfile usage_centrality_profile(const Formula& f, const PolicyConfig& cfg,
                                                uint64_t conflict_budget = 50000,
                                                int num_bins = 20);

} // namespace tiersat
