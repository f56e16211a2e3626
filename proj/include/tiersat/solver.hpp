#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "tiersat/analysis.hpp"
#include "tiersat/aux_learn.hpp"
#include "tiersat/centrality.hpp"
#include "tiersat/clause_store.hpp"
#include "tiersat/cnf.hpp"
#include "tiersat/instrumentation.hpp"
#include "tiersat/policy.hpp"
#include "tiersat/types.hpp"

namespace tiersat {

struct SolveBudget {
    uint64_t max_conflicts = 0; // 0 = unlimited
    uint64_t max_wall_ms = 0;   // 0 = unlimited
};

enum class Status : uint8_t { Sat, Unsat, Unknown };

const char* status_name(Status s);

struct SolveStats {
    uint64_t conflicts = 0;
    uint64_t decisions = 0;
    uint64_t propagations = 0;
    uint64_t restarts = 0;
    double wall_s = 0.0;
};

struct SolveResult {
    Status status = Status::Unknown;
    std::vector<bool> model; // indexed by var, valid when status == Sat
    SolveStats stats;
    StatsRow final_row;
};

// CDCL solver: two-watched-literal propagation, first-UIP learning with deep
// clause minimization, activity-based branching with phase saving, Luby
// restarts, and the three-tier learned-clause store.
class Solver {
public:
    Solver(const Formula& f, const PolicyConfig& cfg);

    SolveResult solve(const SolveBudget& budget = {});

    Instrumentation& instr() { return instr_; }
    const Instrumentation& instr() const { return instr_; }
    const ClauseStore& store() const { return store_; }
    const PermPolicy& policy() const { return policy_; }
    const std::optional<CentralityMap>& centrality() const { return cent_; }

    // Search-trace fingerprint (decisions, learned clauses, backjumps,
    // restarts); enable before solve().
    void set_trace(bool on) { trace_on_ = on; }
    uint64_t trace_hash() const { return trace_.h; }

private:
    struct CRef {
        enum Kind : uint8_t { None, Orig, Learned };
        uint32_t idx = 0;
        uint32_t gen = 0;
        Kind kind = None;

        bool is_none() const { return kind == None; }
        friend bool operator==(const CRef&, const CRef&) = default;
    };

    struct Watcher {
        CRef ref;
        Lit blocker;
    };

    // Indexed max-heap over variable activities; ties go to the smaller
    // variable, keeping branching deterministic.
    class VarHeap {
    public:
        void init(Var n, const std::vector<double>* act);
        bool in(Var v) const { return pos_[v] >= 0; }
        bool empty() const { return heap_.empty(); }
        void insert(Var v);
        void update(Var v); // activity increased
        Var pop();

    private:
        bool above(Var a, Var b) const;
        void sift_up(int i);
        void sift_down(int i);
        std::vector<Var> heap_;
        std::vector<int> pos_;
        const std::vector<double>* act_ = nullptr;
    };

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    Value value(Lit p) const {
        Value v = assigns_[p.var()];
        return p.neg() ? -v : v;
    }
    uint32_t abstract_level(Var v) const { return 1u << (level_[v] & 31); }
    std::span<Lit> clause_lits(const CRef& c);
    void attach(const CRef& c, Lit w0, Lit w1);
    void detach_exact(const CRef& c, std::span<const Lit> lits);
    void enqueue(Lit p, const CRef& from);
    CRef propagate();
    void analyze(const CRef& confl, ConflictAnalysisOutcome& out);
    bool lit_redundant(Lit p, uint32_t abstract_levels);
    int recompute_lbd(std::span<const Lit> lits);
    void consume_in_analysis(const CRef& c);
    void cancel_until(int lv);
    Lit pick_branch();
    void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }
    void bump_var(Var v);
    void decay_var_activity() { var_inc_ /= var_decay_; }
    void handle_learned(ConflictAnalysisOutcome& o);
    void maybe_learn_backjump_clause(const ConflictAnalysisOutcome& o);
    void simplify_satisfied();
    void periodic_maintenance();
    Status search(uint64_t restart_conflicts, const SolveBudget& budget,
                  std::chrono::steady_clock::time_point t0);
    bool budget_exhausted(const SolveBudget& budget,
                          std::chrono::steady_clock::time_point t0) const;
    std::optional<double> centrality_of(std::span<const Lit> lits) const;

    PolicyConfig cfg_;
    int num_vars_ = 0;
    std::optional<CentralityMap> cent_;
    std::unique_ptr<HcController> hc_;
    PermPolicy policy_;
    ClauseStore store_;
    Instrumentation instr_;
    LbdCalculator lbd_;

    std::vector<std::vector<Lit>> originals_;
    std::vector<std::vector<Watcher>> watches_; // indexed by Lit::index()
    std::vector<Value> assigns_;                // indexed by var
    std::vector<int> level_;
    std::vector<CRef> reason_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    size_t qhead_ = 0;

    std::vector<double> var_act_;
    double var_inc_ = 1.0;
    double var_decay_ = 0.95;
    std::vector<bool> saved_phase_; // true = branch negative (the default)
    VarHeap order_;

    std::vector<uint8_t> seen_;
    std::vector<Lit> analyze_toclear_;
    std::vector<Lit> analyze_stack_;
    std::vector<int> lbd_levels_;

    bool ok_ = true;
    uint64_t conflicts_ = 0;
    uint64_t decisions_ = 0;
    uint64_t propagations_ = 0;
    uint64_t restarts_ = 0;
    uint64_t luby_base_ = 100;
    size_t simp_trail_size_ = 0;

    bool trace_on_ = false;
    Fnv1a trace_;
};

} // namespace tiersat
