#include "tiersat/solver.hpp"

#include <algorithm>
#include <cassert>

namespace tiersat {

const char* status_name(Status s) {
    switch (s) {
        case Status::Sat: return "SATISFIABLE";
        case Status::Unsat: return "UNSATISFIABLE";
        case Status::Unknown: return "UNKNOWN";
    }
    return "?";
}

namespace {

std::optional<CentralityMap> make_centrality_map(const Formula& f, const PolicyConfig& cfg) {
#ifndef TIERSAT_NO_AUX_HC
    bool wants_hc = cfg.criterion.kind == CriterionKind::LbdOrHc ||
                    cfg.criterion.kind == CriterionKind::Hybrid;
    if (cfg.compute_centrality_always || (cfg.hc_enabled && wants_hc))
        return compute_centrality_map(build_primal_graph(f), cfg.hc.budget_ms);
#else
    (void)f;
    (void)cfg;
#endif
    return std::nullopt;
}

std::unique_ptr<HcController> make_hc_controller(const PolicyConfig& cfg, bool have_centrality) {
#ifndef TIERSAT_NO_AUX_HC
    bool wants_hc = cfg.criterion.kind == CriterionKind::LbdOrHc ||
                    cfg.criterion.kind == CriterionKind::Hybrid;
    if (have_centrality && cfg.hc_enabled && wants_hc)
        return std::make_unique<HcController>(cfg.hc);
#else
    (void)cfg;
    (void)have_centrality;
#endif
    return nullptr;
}

} // namespace

// ---------- variable order heap ----------

void Solver::VarHeap::init(Var n, const std::vector<double>* act) {
    act_ = act;
    pos_.assign(n + 1, -1);
    heap_.clear();
    heap_.reserve(n);
    for (Var v = 1; v <= n; ++v) insert(v);
}

bool Solver::VarHeap::above(Var a, Var b) const {
    double aa = (*act_)[a], ab = (*act_)[b];
    if (aa != ab) return aa > ab;
    return a < b;
}

void Solver::VarHeap::sift_up(int i) {
    Var v = heap_[i];
    while (i > 0) {
        int p = (i - 1) >> 1;
        if (!above(v, heap_[p])) break;
        heap_[i] = heap_[p];
        pos_[heap_[i]] = i;
        i = p;
    }
    heap_[i] = v;
    pos_[v] = i;
}

void Solver::VarHeap::sift_down(int i) {
    Var v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    for (;;) {
        int c = 2 * i + 1;
        if (c >= n) break;
        if (c + 1 < n && above(heap_[c + 1], heap_[c])) ++c;
        if (!above(heap_[c], v)) break;
        heap_[i] = heap_[c];
        pos_[heap_[i]] = i;
        i = c;
    }
    heap_[i] = v;
    pos_[v] = i;
}

void Solver::VarHeap::insert(Var v) {
    if (in(v)) return;
    heap_.push_back(v);
    pos_[v] = static_cast<int>(heap_.size()) - 1;
    sift_up(pos_[v]);
}

void Solver::VarHeap::update(Var v) {
    if (in(v)) sift_up(pos_[v]);
}

Var Solver::VarHeap::pop() {
    Var v = heap_[0];
    pos_[v] = -1;
    Var last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty() && last != v) {
        heap_[0] = last;
        pos_[last] = 0;
        sift_down(0);
    }
    return v;
}

// ---------- construction ----------

Solver::Solver(const Formula& f, const PolicyConfig& cfg)
    : cfg_(cfg),
      num_vars_(f.num_vars),
      cent_(make_centrality_map(f, cfg_)),
      hc_(make_hc_controller(cfg_, cent_.has_value())),
      policy_(cfg_, hc_.get(), cent_.has_value()),
      store_(cfg_.store, policy_),
      instr_(cfg_.snapshot_period) {
    assigns_.assign(num_vars_ + 1, Value::Undef);
    level_.assign(num_vars_ + 1, 0);
    reason_.assign(num_vars_ + 1, CRef{});
    saved_phase_.assign(num_vars_ + 1, true); // branch negative first
    var_act_.assign(num_vars_ + 1, 0.0);
    seen_.assign(num_vars_ + 1, 0);
    watches_.assign(2 * num_vars_ + 2, {});
    order_.init(num_vars_, &var_act_);

    store_.set_event_sink([this](const StoreEvent& e) { instr_.on_store_event(e); });
    store_.set_detach_hook([this](StoreRef h, std::span<const Lit> lits) {
        detach_exact({h.idx, h.gen, CRef::Learned}, lits);
    });

    std::vector<Lit> tmp;
    for (const Clause& cl : f.clauses) {
        if (!ok_) break;
        tmp.assign(cl.lits.begin(), cl.lits.end());
        std::sort(tmp.begin(), tmp.end());
        tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
        bool taut = false;
        for (size_t i = 0; i + 1 < tmp.size(); ++i)
            if (tmp[i].var() == tmp[i + 1].var()) taut = true;
        if (taut) continue;
        if (tmp.empty()) {
            ok_ = false;
        } else if (tmp.size() == 1) {
            Value v = value(tmp[0]);
            if (v == Value::False)
                ok_ = false;
            else if (v == Value::Undef)
                enqueue(tmp[0], CRef{});
        } else {
            assert(tmp.back().var() <= num_vars_);
            uint32_t idx = static_cast<uint32_t>(originals_.size());
            originals_.push_back(tmp);
            attach({idx, 0, CRef::Orig}, tmp[0], tmp[1]);
        }
    }
}

// ---------- clause access and watches ----------

std::span<Lit> Solver::clause_lits(const CRef& c) {
    if (c.kind == CRef::Orig) {
        auto& v = originals_[c.idx];
        return {v.data(), v.size()};
    }
    assert(c.kind == CRef::Learned);
    return store_.lits_of({c.idx, c.gen});
}

void Solver::attach(const CRef& c, Lit w0, Lit w1) {
    watches_[(~w0).index()].push_back({c, w1});
    watches_[(~w1).index()].push_back({c, w0});
}

void Solver::detach_exact(const CRef& c, std::span<const Lit> lits) {
    for (int t = 0; t < 2; ++t) {
        auto& ws = watches_[(~lits[t]).index()];
        for (size_t i = 0; i < ws.size(); ++i)
            if (ws[i].ref == c) {
                ws[i] = ws.back();
                ws.pop_back();
                break;
            }
    }
}

// ---------- trail ----------

void Solver::enqueue(Lit p, const CRef& from) {
    Var v = p.var();
    assert(assigns_[v] == Value::Undef);
    assigns_[v] = p.neg() ? Value::False : Value::True;
    level_[v] = decision_level();
    reason_[v] = from;
    if (from.kind == CRef::Learned) store_.set_locked({from.idx, from.gen}, true);
    trail_.push_back(p);
}

void Solver::cancel_until(int lv) {
    if (decision_level() <= lv) return;
    for (int c = static_cast<int>(trail_.size()) - 1; c >= trail_lim_[lv]; --c) {
        Lit p = trail_[c];
        Var v = p.var();
        const CRef& r = reason_[v];
        if (r.kind == CRef::Learned) store_.set_locked({r.idx, r.gen}, false);
        reason_[v] = CRef{};
        assigns_[v] = Value::Undef;
        saved_phase_[v] = p.neg();
        order_.insert(v);
    }
    qhead_ = trail_lim_[lv];
    trail_.resize(trail_lim_[lv]);
    trail_lim_.resize(lv);
}

Lit Solver::pick_branch() {
    while (!order_.empty()) {
        Var v = order_.pop();
        if (assigns_[v] == Value::Undef) return Lit::make(v, saved_phase_[v]);
    }
    return Lit{};
}

void Solver::bump_var(Var v) {
    var_act_[v] += var_inc_;
    if (var_act_[v] > 1e100) {
        for (Var u = 1; u <= num_vars_; ++u) var_act_[u] *= 1e-100;
        var_inc_ *= 1e-100;
    }
    order_.update(v);
}

// ---------- propagation ----------

Solver::CRef Solver::propagate() {
    CRef confl{};
    while (qhead_ < trail_.size()) {
        const Lit p = trail_[qhead_++];
        ++propagations_;
        auto& ws = watches_[p.index()];
        size_t i = 0, j = 0;
        while (i < ws.size()) {
            const Watcher w = ws[i];
            if (value(w.blocker) == Value::True) {
                ws[j++] = ws[i++];
                continue;
            }
            auto c = clause_lits(w.ref);
            const Lit false_lit = ~p;
            if (c[0] == false_lit) std::swap(c[0], c[1]);
            assert(c[1] == false_lit);
            ++i;
            const Lit first = c[0];
            const Watcher nw{w.ref, first};
            if (first != w.blocker && value(first) == Value::True) {
                ws[j++] = nw;
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < c.size(); ++k)
                if (value(c[k]) != Value::False) {
                    c[1] = c[k];
                    c[k] = false_lit;
                    watches_[(~c[1]).index()].push_back(nw);
                    moved = true;
                    break;
                }
            if (moved) continue;
            // unit or conflicting
            ws[j++] = nw;
            if (value(first) == Value::False) {
                confl = w.ref;
                qhead_ = trail_.size();
                while (i < ws.size()) ws[j++] = ws[i++];
            } else {
                enqueue(first, w.ref);
            }
        }
        ws.resize(j);
    }
    return confl;
}

// ---------- conflict analysis ----------

int Solver::recompute_lbd(std::span<const Lit> lits) {
    lbd_levels_.clear();
    for (Lit l : lits) {
        assert(assigns_[l.var()] != Value::Undef);
        lbd_levels_.push_back(level_[l.var()]);
    }
    return lbd_.distinct_levels(lbd_levels_);
}

void Solver::consume_in_analysis(const CRef& c) {
    if (c.kind != CRef::Learned) return;
    StoreRef h{c.idx, c.gen};
    int rl = recompute_lbd(store_.lits_of(h));
    bool count = !cfg_.count_use_once_per_conflict || store_.get(h).last_used != conflicts_;
    store_.on_used(h, rl, conflicts_, count);
    store_.bump_activity(h);
}

bool Solver::lit_redundant(Lit p, uint32_t abstract_levels) {
    analyze_stack_.clear();
    analyze_stack_.push_back(p);
    const size_t top = analyze_toclear_.size();
    while (!analyze_stack_.empty()) {
        Lit q = analyze_stack_.back();
        analyze_stack_.pop_back();
        const CRef r = reason_[q.var()];
        assert(!r.is_none());
        consume_in_analysis(r);
        auto c = clause_lits(r);
        for (size_t i = 1; i < c.size(); ++i) {
            Lit l = c[i];
            Var v = l.var();
            if (seen_[v] || level_[v] == 0) continue;
            if (!reason_[v].is_none() && (abstract_level(v) & abstract_levels) != 0) {
                seen_[v] = 1;
                analyze_stack_.push_back(l);
                analyze_toclear_.push_back(l);
            } else {
                for (size_t k = top; k < analyze_toclear_.size(); ++k)
                    seen_[analyze_toclear_[k].var()] = 0;
                analyze_toclear_.resize(top);
                return false;
            }
        }
    }
    return true;
}

void Solver::analyze(const CRef& confl0, ConflictAnalysisOutcome& o) {
    auto& out = o.learned;
    out.clear();
    out.push_back(Lit{}); // slot for the asserting literal
    o.conflict_level = decision_level();
    o.decisions.clear();

    int pathC = 0;
    Lit p{};
    CRef confl = confl0;
    int index = static_cast<int>(trail_.size()) - 1;
    do {
        consume_in_analysis(confl);
        auto c = clause_lits(confl);
        for (size_t j = p.valid() ? 1 : 0; j < c.size(); ++j) {
            Lit q = c[j];
            Var v = q.var();
            if (!seen_[v] && level_[v] > 0) {
                bump_var(v);
                seen_[v] = 1;
                if (level_[v] >= decision_level())
                    ++pathC;
                else
                    out.push_back(q);
            }
        }
        while (!seen_[trail_[index--].var()]) {}
        p = trail_[index + 1];
        confl = reason_[p.var()];
        seen_[p.var()] = 0;
        --pathC;
    } while (pathC > 0);
    out[0] = ~p;

    // deep minimization: drop literals implied by the rest of the clause
    analyze_toclear_.assign(out.begin(), out.end());
    uint32_t ab = 0;
    for (size_t i = 1; i < out.size(); ++i) ab |= abstract_level(out[i].var());
    size_t j = 1;
    for (size_t i = 1; i < out.size(); ++i)
        if (reason_[out[i].var()].is_none() || !lit_redundant(out[i], ab)) out[j++] = out[i];
    out.resize(j);

    o.lbd = recompute_lbd(out);

    if (out.size() == 1) {
        o.backjump_level = 0;
    } else {
        size_t max_i = 1;
        for (size_t i = 2; i < out.size(); ++i)
            if (level_[out[i].var()] > level_[out[max_i].var()]) max_i = i;
        std::swap(out[1], out[max_i]);
        o.backjump_level = level_[out[1].var()];
    }

    for (Lit l : analyze_toclear_) seen_[l.var()] = 0;

    if (cfg_.aux.mode != AuxMode::Off && o.backjump_level >= 1 &&
        o.backjump_level <= cfg_.aux.max_backjump_level) {
        for (int lv = 0; lv < o.backjump_level; ++lv)
            o.decisions.push_back(trail_[trail_lim_[lv]]);
    }
}

// ---------- learning ----------

void Solver::handle_learned(ConflictAnalysisOutcome& o) {
    auto& out = o.learned;
    cancel_until(o.backjump_level);
    instr_.on_learned(out.size() == 1);
    if (trace_on_) {
        trace_.add(2);
        trace_.add(out.size());
        for (Lit l : out) trace_.add(static_cast<uint64_t>(l.index()));
        trace_.add(static_cast<uint64_t>(o.backjump_level));
    }
    if (out.size() == 1) {
        enqueue(out[0], CRef{});
        return;
    }
    std::optional<double> cc = centrality_of(out);
    instr_.record_learned_stream(static_cast<int>(out.size()), o.lbd);
    auto [ref, tier] = store_.admit(std::vector<Lit>(out.begin(), out.end()), o.lbd, cc, conflicts_);
    (void)tier;
    auto cl = store_.lits_of(ref);
    const CRef cr{ref.idx, ref.gen, CRef::Learned};
    attach(cr, cl[0], cl[1]);
    enqueue(cl[0], cr);
}

void Solver::maybe_learn_backjump_clause(const ConflictAnalysisOutcome& o) {
#ifndef TIERSAT_NO_AUX_HC
    if (cfg_.aux.mode == AuxMode::Off) return;
    auto c2 = derive_backjump_clause(o, cfg_.aux);
    if (!c2) return;
    instr_.on_learned(false);
    instr_.on_aux_emitted();
    if (instr_.record_aux)
        instr_.record_aux_clause({c2->lits, c2->assigned_lbd, o.backjump_level});
    std::optional<double> cc = centrality_of(c2->lits);
    const int b = o.backjump_level;
    const TierTag target = cfg_.aux.mode == AuxMode::ToPerm
                               ? TierTag::Core
                               : (b <= cfg_.store.local_lbd_floor ? TierTag::Tier2 : TierTag::Local);
    auto [ref, tier] =
        store_.admit_forced(std::move(c2->lits), c2->assigned_lbd, target, cc, conflicts_);
    (void)tier;
    auto cl = store_.lits_of(ref);
    attach({ref.idx, ref.gen, CRef::Learned}, cl[0], cl[1]);
    if (trace_on_) {
        trace_.add(3);
        trace_.add(cl.size());
        for (Lit l : cl) trace_.add(static_cast<uint64_t>(l.index()));
    }
#else
    (void)o;
#endif
}

// ---------- maintenance ----------

void Solver::simplify_satisfied() {
    assert(decision_level() == 0);
    for (StoreRef h : store_.alive_refs()) {
        auto c = store_.lits_of(h);
        bool sat = false;
        for (Lit l : c)
            if (value(l) == Value::True) sat = true;
        if (!sat) continue;
        if (store_.get(h).locked) {
            Var v = c[0].var();
            const CRef& r = reason_[v];
            if (r.kind == CRef::Learned && r.idx == h.idx && r.gen == h.gen) reason_[v] = CRef{};
            store_.set_locked(h, false);
        }
        store_.remove(h, DeleteReason::SatisfiedAtLevelZero, conflicts_);
    }
    simp_trail_size_ = trail_.size();
}

void Solver::periodic_maintenance() {
    if (!cfg_.disable_deletion) {
        if (cfg_.store.tier2_scan_period != 0 && conflicts_ % cfg_.store.tier2_scan_period == 0)
            store_.demote_stale_tier2(conflicts_);
        if (store_.local_reduce_due()) store_.reduce_local(conflicts_);
    }
#ifndef TIERSAT_NO_AUX_HC
    if (hc_ && cfg_.hc.review_period != 0 && conflicts_ % cfg_.hc.review_period == 0)
        hc_->tick(instr_.learned_total());
#endif
}

// ---------- search ----------

bool Solver::budget_exhausted(const SolveBudget& b,
                              std::chrono::steady_clock::time_point t0) const {
    if (b.max_conflicts != 0 && conflicts_ >= b.max_conflicts) return true;
    if (b.max_wall_ms != 0) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        if (static_cast<uint64_t>(ms) >= b.max_wall_ms) return true;
    }
    return false;
}

std::optional<double> Solver::centrality_of(std::span<const Lit> lits) const {
#ifndef TIERSAT_NO_AUX_HC
    if (cent_) return clause_centrality(lits, *cent_);
#else
    (void)lits;
#endif
    return std::nullopt;
}

Status Solver::search(uint64_t restart_conflicts, const SolveBudget& budget,
                      std::chrono::steady_clock::time_point t0) {
    uint64_t local_confl = 0;
    for (;;) {
        CRef confl = propagate();
        if (!confl.is_none()) {
            ++conflicts_;
            ++local_confl;
            policy_.maybe_relax_core_threshold(conflicts_, store_.core_size());
            if (decision_level() == 0) return Status::Unsat;
            ConflictAnalysisOutcome o;
            analyze(confl, o);
            handle_learned(o);
            maybe_learn_backjump_clause(o);
            decay_var_activity();
            store_.decay_activities();
            periodic_maintenance();
            if (instr_.snapshot_due(conflicts_)) instr_.snapshot(conflicts_, store_, hc_.get());
            if (budget_exhausted(budget, t0)) return Status::Unknown;
            if (local_confl >= restart_conflicts) {
                cancel_until(0);
                return Status::Unknown;
            }
        } else {
            if (decision_level() == 0 && trail_.size() > simp_trail_size_ &&
                !cfg_.disable_deletion)
                simplify_satisfied();
            Lit next = pick_branch();
            if (!next.valid()) return Status::Sat;
            ++decisions_;
            if (trace_on_) {
                trace_.add(1);
                trace_.add(static_cast<uint64_t>(next.index()));
            }
            new_decision_level();
            enqueue(next, CRef{});
        }
    }
}

SolveResult Solver::solve(const SolveBudget& budget) {
    const auto t0 = std::chrono::steady_clock::now();
    Status st = Status::Unknown;
    if (!ok_) {
        st = Status::Unsat;
    } else if (!propagate().is_none()) {
        ok_ = false;
        st = Status::Unsat;
    } else {
        while (st == Status::Unknown) {
            if (budget_exhausted(budget, t0)) break;
            st = search(luby(restarts_) * luby_base_, budget, t0);
            ++restarts_;
            if (st == Status::Unknown && trace_on_) trace_.add(4);
        }
    }
    instr_.snapshot(conflicts_, store_, hc_.get());
    SolveResult res;
    res.status = st;
    if (st == Status::Sat) {
        res.model.assign(num_vars_ + 1, false);
        for (Var v = 1; v <= num_vars_; ++v) res.model[v] = assigns_[v] == Value::True;
    }
    res.stats.conflicts = conflicts_;
    res.stats.decisions = decisions_;
    res.stats.propagations = propagations_;
    res.stats.restarts = restarts_;
    res.stats.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.final_row = instr_.rows().back();
    return res;
}

} // namespace tiersat
