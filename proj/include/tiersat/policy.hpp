#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tiersat/centrality.hpp"

namespace tiersat {

enum class CriterionKind : uint8_t { LbdAtMost, SizeAtMost, LbdOrHc, Hybrid };

struct PermCriterion {
    CriterionKind kind = CriterionKind::LbdAtMost;
    int k = 3;
};

enum class LimitKind : uint8_t { None, Freeze, DeleteHalfActivity, DeleteHalfLbd };

// Survivor predicate for DeleteHalfLbd.
enum class SavePredicate : uint8_t { None, SizeAtMost2, SizeAtMost3, LbdAtMost2 };

struct PermLimitScheme {
    LimitKind kind = LimitKind::None;
    uint64_t cap = 100000;
    SavePredicate save = SavePredicate::None;
};

struct StoreConfig {
    int core_lbd = 3;           // promotion threshold when the criterion is not LBD-based
    int core_lbd_relaxed = 5;   // one-shot relaxed threshold
    int local_lbd_floor = 6;    // admission LBD above this goes to Local
    uint64_t tier2_scan_period = 10000;
    uint64_t tier2_stale_age = 30000;
    uint64_t relax_check_at = 100000;
    uint64_t relax_if_core_below = 100;
    uint64_t local_cap_base = 2000;  // reduce when |Local| >= base + step * reductions
    uint64_t local_cap_step = 300;
    double clause_decay = 0.999;
    double activity_rescale_limit = 1e20;
};

enum class AuxMode : uint8_t { Off, ToTemp, ToPerm };

struct AuxLearnConfig {
    AuxMode mode = AuxMode::Off;
    int max_backjump_level = 5;
};

// Complete per-run policy bundle; parsed from command-line style flags.
struct PolicyConfig {
    PermCriterion criterion;
    PermLimitScheme limit;
    StoreConfig store;
    bool hc_enabled = true; // only consulted by centrality-aware criteria
    HcConfig hc;
    AuxLearnConfig aux;
    uint64_t seed = 1;
    uint64_t snapshot_period = 1000;
    bool disable_deletion = false;        // profiling: no reduce/demote/satisfied removal
    bool count_use_once_per_conflict = false;
    bool compute_centrality_always = false; // profiling: centrality regardless of criterion

    // Throws std::invalid_argument on malformed or out-of-range flags.
    static PolicyConfig from_flags(const std::vector<std::string>& tokens);
    std::string to_flags() const;
};

enum class PermLimitAction : uint8_t { Admit, Reroute, DeleteHalfFirst };

// Runtime admission/limit engine.  A Hybrid criterion is resolved at
// construction: LbdOrHc(3) when a centrality map is available, SizeAtMost(8)
// otherwise.
class PermPolicy {
public:
    PermPolicy(const PolicyConfig& cfg, HcController* hc, bool centrality_available);

    // Should this freshly learned clause enter the permanent store?
    // Centrality-aware criteria fall back to the LBD test alone when the
    // clause has no centrality value.
    bool perm_criterion(int size, int lbd, std::optional<double> centrality);

    // One-shot threshold relaxation, checked once per conflict.
    void maybe_relax_core_threshold(uint64_t conflict_no, uint64_t core_size);

    // Gate consulted for every entry into the permanent store.
    PermLimitAction enforce_perm_limit(uint64_t core_size);

    int core_lbd_threshold() const { return core_lbd_; }
    bool relaxation_fired() const { return relax_fired_; }
    const PermCriterion& active_criterion() const { return crit_; }
    const PermLimitScheme& limit() const { return limit_; }
    bool hc_admission_active() const { return hc_ != nullptr; }
    HcController* hc() { return hc_; }

private:
    PermCriterion crit_;
    PermLimitScheme limit_;
    StoreConfig store_;
    HcController* hc_; // null unless an HC-aware criterion is active
    int core_lbd_;
    bool relax_enabled_;
    bool relax_checked_ = false;
    bool relax_fired_ = false;
    bool freeze_latched_ = false;
};

} // namespace tiersat
