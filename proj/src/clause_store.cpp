#include "tiersat/clause_store.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace tiersat {

const char* tier_name(TierTag t) {
    switch (t) {
        case TierTag::Core: return "core";
        case TierTag::Tier2: return "tier2";
        case TierTag::Local: return "local";
    }
    return "?";
}

namespace {

const char* kind_name(StoreEventKind k) {
    switch (k) {
        case StoreEventKind::Admit: return "admit";
        case StoreEventKind::Promote: return "promote";
        case StoreEventKind::Demote: return "demote";
        case StoreEventKind::Delete: return "delete";
    }
    return "?";
}

const char* reason_name(DeleteReason r) {
    switch (r) {
        case DeleteReason::ReduceLocal: return "reduce_local";
        case DeleteReason::PermLimit: return "perm_limit";
        case DeleteReason::SatisfiedAtLevelZero: return "satisfied";
    }
    return "?";
}

TierTag tier_from_name(const std::string& s) {
    if (s == "core") return TierTag::Core;
    if (s == "tier2") return TierTag::Tier2;
    if (s == "local") return TierTag::Local;
    throw std::invalid_argument("bad tier name: " + s);
}

} // namespace

std::string store_events_to_csv(const std::vector<StoreEvent>& events) {
    std::ostringstream os;
    os << "kind,conflict_no,idx,gen,from,to,lbd,size,forced,reason\n";
    for (const auto& e : events) {
        os << kind_name(e.kind) << ',' << e.conflict_no << ',' << e.ref.idx << ',' << e.ref.gen
           << ',' << tier_name(e.from) << ',' << tier_name(e.to) << ',' << e.lbd << ',' << e.size
           << ',' << (e.forced ? 1 : 0) << ','
           << (e.kind == StoreEventKind::Delete ? reason_name(e.reason) : "-") << '\n';
    }
    return os.str();
}

std::vector<StoreEvent> store_events_from_csv(const std::string& csv) {
    std::vector<StoreEvent> out;
    std::istringstream is(csv);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (first) {
            first = false; // header
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> f;
        size_t start = 0;
        for (size_t i = 0; i <= line.size(); ++i)
            if (i == line.size() || line[i] == ',') {
                f.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        if (f.size() != 10) throw std::invalid_argument("bad event row: " + line);
        StoreEvent e;
        if (f[0] == "admit")
            e.kind = StoreEventKind::Admit;
        else if (f[0] == "promote")
            e.kind = StoreEventKind::Promote;
        else if (f[0] == "demote")
            e.kind = StoreEventKind::Demote;
        else if (f[0] == "delete")
            e.kind = StoreEventKind::Delete;
        else
            throw std::invalid_argument("bad event kind: " + f[0]);
        e.conflict_no = std::stoull(f[1]);
        e.ref.idx = static_cast<uint32_t>(std::stoul(f[2]));
        e.ref.gen = static_cast<uint32_t>(std::stoul(f[3]));
        e.from = tier_from_name(f[4]);
        e.to = tier_from_name(f[5]);
        e.lbd = std::stoi(f[6]);
        e.size = std::stoi(f[7]);
        e.forced = f[8] == "1";
        if (e.kind == StoreEventKind::Delete) e.reason = [&] {
                if (f[9] == "reduce_local") return DeleteReason::ReduceLocal;
                if (f[9] == "perm_limit") return DeleteReason::PermLimit;
                if (f[9] == "satisfied") return DeleteReason::SatisfiedAtLevelZero;
                throw std::invalid_argument("bad delete reason: " + f[9]);
            }();
        out.push_back(e);
    }
    return out;
}

ClauseStore::ClauseStore(const StoreConfig& cfg, PermPolicy& policy)
    : cfg_(cfg), policy_(policy) {}

bool ClauseStore::valid(StoreRef h) const {
    return h.idx < slots_.size() && slots_[h.idx].alive && slots_[h.idx].gen == h.gen;
}

bool ClauseStore::is_alive(StoreRef h) const { return valid(h); }

StoredClause& ClauseStore::deref(StoreRef h) {
    assert(valid(h));
    return slots_[h.idx];
}

const StoredClause& ClauseStore::deref(StoreRef h) const {
    assert(valid(h));
    return slots_[h.idx];
}

const StoredClause& ClauseStore::get(StoreRef h) const { return deref(h); }

std::span<Lit> ClauseStore::lits_of(StoreRef h) {
    auto& rec = deref(h);
    return {rec.lits.data(), rec.lits.size()};
}

std::vector<StoreRef> ClauseStore::alive_refs() const {
    std::vector<StoreRef> out;
    for (uint32_t i = 0; i < slots_.size(); ++i)
        if (slots_[i].alive) out.push_back({i, slots_[i].gen});
    return out;
}

std::vector<StoreRef>& ClauseStore::tier_vec(TierTag t) {
    switch (t) {
        case TierTag::Core: return core_;
        case TierTag::Tier2: return tier2_;
        default: return local_;
    }
}

uint64_t& ClauseStore::tier_count(TierTag t) {
    switch (t) {
        case TierTag::Core: return core_count_;
        case TierTag::Tier2: return tier2_count_;
        default: return local_count_;
    }
}

void ClauseStore::push_tier(StoreRef h, TierTag t) { tier_vec(t).push_back(h); }

void ClauseStore::compact_tier(TierTag t) {
    // A tier round trip (Local -> Tier2 -> Local) leaves two live refs to
    // the same clause, so dedup by slot as well.
    auto& vec = tier_vec(t);
    std::unordered_set<uint32_t> kept;
    kept.reserve(vec.size());
    size_t j = 0;
    for (size_t i = 0; i < vec.size(); ++i)
        if (valid(vec[i]) && slots_[vec[i].idx].tier == t && kept.insert(vec[i].idx).second)
            vec[j++] = vec[i];
    vec.resize(j);
}

void ClauseStore::emit(const StoreEvent& e) {
    if (sink_) sink_(e);
}

std::pair<StoreRef, TierTag> ClauseStore::place(std::vector<Lit> lits, int lbd, TierTag tier,
                                                std::optional<double> centrality,
                                                uint64_t conflict_no, bool forced) {
    assert(lits.size() >= 2);
    uint32_t idx;
    if (!free_.empty()) {
        idx = free_.back();
        free_.pop_back();
    } else {
        idx = static_cast<uint32_t>(slots_.size());
        slots_.emplace_back();
    }
    StoredClause& rec = slots_[idx];
    rec.lits = std::move(lits);
    rec.born_at = rec.last_used = conflict_no;
    rec.usage_count = 0;
    rec.activity = 0.0;
    rec.centrality = centrality ? *centrality : -1.0;
    rec.lbd_min = lbd;
    rec.tier = tier;
    rec.locked = false;
    rec.alive = true;
    StoreRef h{idx, rec.gen};
    push_tier(h, tier);
    ++tier_count(tier);
    emit({StoreEventKind::Admit, conflict_no, h, tier, tier, lbd, rec.size(), forced,
          DeleteReason::ReduceLocal});
    return {h, tier};
}

TierTag ClauseStore::through_core_gate(uint64_t conflict_no) {
    switch (policy_.enforce_perm_limit(core_count_)) {
        case PermLimitAction::Admit:
            return TierTag::Core;
        case PermLimitAction::Reroute:
            return TierTag::Tier2;
        case PermLimitAction::DeleteHalfFirst:
            delete_half_core(conflict_no);
            return TierTag::Core;
    }
    return TierTag::Core;
}

std::pair<StoreRef, TierTag> ClauseStore::admit(std::vector<Lit> lits, int lbd,
                                                std::optional<double> centrality,
                                                uint64_t conflict_no) {
    bool perm = policy_.perm_criterion(static_cast<int>(lits.size()), lbd, centrality);
    TierTag t = perm ? through_core_gate(conflict_no)
                     : (lbd > cfg_.local_lbd_floor ? TierTag::Local : TierTag::Tier2);
    return place(std::move(lits), lbd, t, centrality, conflict_no, false);
}

std::pair<StoreRef, TierTag> ClauseStore::admit_forced(std::vector<Lit> lits, int lbd,
                                                       TierTag target,
                                                       std::optional<double> centrality,
                                                       uint64_t conflict_no) {
    TierTag t = target == TierTag::Core ? through_core_gate(conflict_no) : target;
    return place(std::move(lits), lbd, t, centrality, conflict_no, true);
}

void ClauseStore::move_tier(StoreRef h, TierTag to, uint64_t conflict_no) {
    StoredClause& rec = deref(h);
    TierTag from = rec.tier;
    if (from == to) return;
    --tier_count(from);
    ++tier_count(to);
    rec.tier = to;
    push_tier(h, to);
    bool upward = to == TierTag::Core || (from == TierTag::Local && to == TierTag::Tier2);
    emit({upward ? StoreEventKind::Promote : StoreEventKind::Demote, conflict_no, h, from, to,
          rec.lbd_min, rec.size(), false, DeleteReason::ReduceLocal});
}

void ClauseStore::promote_if_eligible(StoreRef h, uint64_t conflict_no) {
    StoredClause& rec = deref(h);
    if (rec.tier == TierTag::Core) return;
    if (rec.lbd_min <= policy_.core_lbd_threshold()) {
        if (through_core_gate(conflict_no) == TierTag::Core) {
            move_tier(h, TierTag::Core, conflict_no);
            return;
        }
        // permanent store frozen: fall through to the Tier2 rule
    }
    if (rec.tier == TierTag::Local && rec.lbd_min <= cfg_.local_lbd_floor)
        move_tier(h, TierTag::Tier2, conflict_no);
}

void ClauseStore::on_used(StoreRef h, int recomputed_lbd, uint64_t conflict_no, bool count_usage) {
    StoredClause& rec = deref(h);
    rec.last_used = conflict_no;
    if (count_usage) ++rec.usage_count;
    if (recomputed_lbd < rec.lbd_min) {
        rec.lbd_min = recomputed_lbd;
        promote_if_eligible(h, conflict_no);
    }
}

uint64_t ClauseStore::demote_stale_tier2(uint64_t conflict_no) {
    uint64_t demoted = 0;
    auto& vec = tier2_;
    size_t j = 0;
    for (size_t i = 0; i < vec.size(); ++i) {
        StoreRef h = vec[i];
        if (!valid(h) || slots_[h.idx].tier != TierTag::Tier2) continue;
        if (conflict_no - slots_[h.idx].last_used >= cfg_.tier2_stale_age) {
            move_tier(h, TierTag::Local, conflict_no);
            ++demoted;
        } else {
            vec[j++] = h;
        }
    }
    vec.resize(j);
    return demoted;
}

bool ClauseStore::local_reduce_due() const {
    return local_count_ >= cfg_.local_cap_base + cfg_.local_cap_step * reductions_;
}

uint64_t ClauseStore::reduce_local(uint64_t conflict_no) {
    compact_tier(TierTag::Local);
    const uint64_t quota = local_count_ / 2;
    std::vector<StoreRef> cand;
    cand.reserve(local_.size());
    for (StoreRef h : local_)
        if (!slots_[h.idx].locked) cand.push_back(h);
    std::stable_sort(cand.begin(), cand.end(), [&](StoreRef a, StoreRef b) {
        const StoredClause& ra = slots_[a.idx];
        const StoredClause& rb = slots_[b.idx];
        if (ra.activity != rb.activity) return ra.activity < rb.activity;
        if (ra.lbd_min != rb.lbd_min) return ra.lbd_min > rb.lbd_min;
        return ra.born_at < rb.born_at;
    });
    const uint64_t ndel = std::min<uint64_t>(quota, cand.size());
    for (uint64_t i = 0; i < ndel; ++i) remove(cand[i], DeleteReason::ReduceLocal, conflict_no);
    ++reductions_;
    return ndel;
}

void ClauseStore::delete_half_core(uint64_t conflict_no) {
    compact_tier(TierTag::Core);
    const uint64_t quota = core_count_ / 2;
    const PermLimitScheme& lim = policy_.limit();
    const bool by_activity = lim.kind == LimitKind::DeleteHalfActivity;
    auto saved = [&](const StoredClause& r) {
        if (by_activity) return false;
        switch (lim.save) {
            case SavePredicate::SizeAtMost2: return r.size() <= 2;
            case SavePredicate::SizeAtMost3: return r.size() <= 3;
            case SavePredicate::LbdAtMost2: return r.lbd_min <= 2;
            case SavePredicate::None: return false;
        }
        return false;
    };
    std::vector<StoreRef> cand;
    cand.reserve(core_.size());
    for (StoreRef h : core_) {
        const StoredClause& r = slots_[h.idx];
        if (!r.locked && !saved(r)) cand.push_back(h);
    }
    std::stable_sort(cand.begin(), cand.end(), [&](StoreRef a, StoreRef b) {
        const StoredClause& ra = slots_[a.idx];
        const StoredClause& rb = slots_[b.idx];
        if (by_activity && ra.activity != rb.activity) return ra.activity < rb.activity;
        if (ra.lbd_min != rb.lbd_min) return ra.lbd_min > rb.lbd_min;
        return ra.born_at < rb.born_at;
    });
    const uint64_t ndel = std::min<uint64_t>(quota, cand.size());
    for (uint64_t i = 0; i < ndel; ++i) remove(cand[i], DeleteReason::PermLimit, conflict_no);
}

void ClauseStore::bump_activity(StoreRef h) {
    StoredClause& rec = deref(h);
    rec.activity += act_inc_;
    if (rec.activity > cfg_.activity_rescale_limit) {
        for (auto& s : slots_)
            if (s.alive) s.activity *= 1e-20;
        act_inc_ *= 1e-20;
    }
}

void ClauseStore::decay_activities() { act_inc_ *= 1.0 / cfg_.clause_decay; }

void ClauseStore::set_locked(StoreRef h, bool locked) { deref(h).locked = locked; }

void ClauseStore::remove(StoreRef h, DeleteReason reason, uint64_t conflict_no) {
    StoredClause& rec = deref(h);
    assert(!rec.locked);
    emit({StoreEventKind::Delete, conflict_no, h, rec.tier, rec.tier, rec.lbd_min, rec.size(),
          false, reason});
    if (detach_) detach_(h, {rec.lits.data(), rec.lits.size()});
    --tier_count(rec.tier);
    rec.alive = false;
    ++rec.gen;
    rec.lits.clear();
    rec.lits.shrink_to_fit();
    free_.push_back(h.idx);
}

} // namespace tiersat
