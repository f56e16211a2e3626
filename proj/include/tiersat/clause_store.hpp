#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tiersat/policy.hpp"
#include "tiersat/types.hpp"

namespace tiersat {

enum class TierTag : uint8_t { Core, Tier2, Local };

const char* tier_name(TierTag t);

// Generation-checked handle into the store.  Stale handles (slot reused after
// deletion) are detectable.
struct StoreRef {
    uint32_t idx = 0;
    uint32_t gen = 0;

    friend bool operator==(const StoreRef&, const StoreRef&) = default;
};

struct StoredClause {
    std::vector<Lit> lits;
    uint64_t born_at = 0;
    uint64_t last_used = 0;
    uint64_t usage_count = 0;
    double activity = 0.0;
    double centrality = -1.0; // < 0: not computed
    int lbd_min = 0;          // smallest LBD ever seen for this clause
    TierTag tier = TierTag::Local;
    bool locked = false; // currently the reason of an assignment
    bool alive = false;
    uint32_t gen = 0;

    int size() const { return static_cast<int>(lits.size()); }
    bool has_centrality() const { return centrality >= 0.0; }
};

enum class StoreEventKind : uint8_t { Admit, Promote, Demote, Delete };
enum class DeleteReason : uint8_t { ReduceLocal, PermLimit, SatisfiedAtLevelZero };

struct StoreEvent {
    StoreEventKind kind = StoreEventKind::Admit;
    uint64_t conflict_no = 0;
    StoreRef ref;
    TierTag from = TierTag::Local; // Admit: same as `to`
    TierTag to = TierTag::Local;
    int lbd = 0; // lbd_min at event time
    int size = 0;
    bool forced = false;                              // admission bypassed the criterion
    DeleteReason reason = DeleteReason::ReduceLocal;  // Delete only
};

std::string store_events_to_csv(const std::vector<StoreEvent>& events);
std::vector<StoreEvent> store_events_from_csv(const std::string& csv);

using StoreEventSink = std::function<void(const StoreEvent&)>;
// Called just before a clause is freed so the owner can drop its watchers.
using DetachHook = std::function<void(StoreRef, std::span<const Lit>)>;

// Learned-clause database with three tiers: Core (permanent), Tier2 and
// Local (temporary).  Admission routes through the owning PermPolicy; later
// movement is driven by recomputed LBDs, staleness scans and reductions.
class ClauseStore {
public:
    ClauseStore(const StoreConfig& cfg, PermPolicy& policy);

    void set_event_sink(StoreEventSink sink) { sink_ = std::move(sink); }
    void set_detach_hook(DetachHook hook) { detach_ = std::move(hook); }

    // Criterion-driven admission of a freshly learned clause (size >= 2).
    std::pair<StoreRef, TierTag> admit(std::vector<Lit> lits, int lbd,
                                       std::optional<double> centrality,
                                       uint64_t conflict_no);

    // Admission with the tier chosen by the caller instead of the criterion.
    // A Core target still passes the permanent-store limit gate.
    std::pair<StoreRef, TierTag> admit_forced(std::vector<Lit> lits, int lbd,
                                              TierTag target,
                                              std::optional<double> centrality,
                                              uint64_t conflict_no);

    // The clause took part in conflict analysis.  recomputed_lbd is its LBD
    // under the current assignment; lbd_min only ever decreases.  A drop may
    // promote the clause (Local -> Tier2 at the Local floor, any temporary
    // tier -> Core at the active Core threshold, through the limit gate).
    void on_used(StoreRef h, int recomputed_lbd, uint64_t conflict_no,
                 bool count_usage = true);

    // Move every Tier2 clause unused for tier2_stale_age conflicts to Local.
    // Returns the number demoted.
    uint64_t demote_stale_tier2(uint64_t conflict_no);

    // True when |Local| has reached the growing reduction trigger.
    bool local_reduce_due() const;

    // Delete the less active half of Local (locked clauses always survive;
    // ties broken by larger lbd_min, then older clause first).  Returns the
    // number deleted.
    uint64_t reduce_local(uint64_t conflict_no);

    void bump_activity(StoreRef h);
    void decay_activities();

    void set_locked(StoreRef h, bool locked);

    // Delete one clause (must be alive and unlocked).
    void remove(StoreRef h, DeleteReason reason, uint64_t conflict_no);

    uint64_t core_size() const { return core_count_; }
    uint64_t tier2_size() const { return tier2_count_; }
    uint64_t local_size() const { return local_count_; }
    uint64_t total_size() const { return core_count_ + tier2_count_ + local_count_; }
    uint64_t reductions() const { return reductions_; }

    bool is_alive(StoreRef h) const;
    const StoredClause& get(StoreRef h) const;
    std::span<Lit> lits_of(StoreRef h); // mutable: propagation reorders watches
    std::vector<StoreRef> alive_refs() const;

    PermPolicy& policy() { return policy_; }

private:
    StoredClause& deref(StoreRef h);
    const StoredClause& deref(StoreRef h) const;
    bool valid(StoreRef h) const;
    std::pair<StoreRef, TierTag> place(std::vector<Lit> lits, int lbd, TierTag tier,
                                       std::optional<double> centrality,
                                       uint64_t conflict_no, bool forced);
    // Resolve a Core target through the limit gate; may return Tier2
    // (freeze) or first delete half of Core.
    TierTag through_core_gate(uint64_t conflict_no);
    void move_tier(StoreRef h, TierTag to, uint64_t conflict_no);
    void promote_if_eligible(StoreRef h, uint64_t conflict_no);
    void delete_half_core(uint64_t conflict_no);
    void push_tier(StoreRef h, TierTag t);
    std::vector<StoreRef>& tier_vec(TierTag t);
    uint64_t& tier_count(TierTag t);
    void compact_tier(TierTag t);
    void free_slot(StoreRef h);
    void emit(const StoreEvent& e);

    StoreConfig cfg_;
    PermPolicy& policy_;
    std::vector<StoredClause> slots_;
    std::vector<uint32_t> free_;
    std::vector<StoreRef> core_, tier2_, local_; // lazily compacted
    uint64_t core_count_ = 0, tier2_count_ = 0, local_count_ = 0;
    uint64_t reductions_ = 0;
    double act_inc_ = 1.0;
    StoreEventSink sink_;
    DetachHook detach_;
};

} // namespace tiersat
