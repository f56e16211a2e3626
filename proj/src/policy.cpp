#include "tiersat/policy.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace tiersat {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (...) {
        throw std::invalid_argument("bad integer for " + what + ": '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("bad integer for " + what + ": '" + s + "'");
    return v;
}

uint64_t parse_u64(const std::string& s, const std::string& what) {
    size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (...) {
        throw std::invalid_argument("bad count for " + what + ": '" + s + "'");
    }
    if (pos != s.size() || s.empty() || s[0] == '-')
        throw std::invalid_argument("bad count for " + what + ": '" + s + "'");
    return v;
}

int parse_int_in(const std::string& s, const std::string& what, int lo, int hi) {
    int v = parse_int(s, what);
    if (v < lo || v > hi)
        throw std::invalid_argument(what + " must be in [" + std::to_string(lo) + "," +
                                    std::to_string(hi) + "], got " + s);
    return v;
}

PermCriterion parse_criterion(const std::string& s) {
    auto parts = split(s, ':');
    if (parts[0] == "hybrid") {
        if (parts.size() != 1) throw std::invalid_argument("hybrid takes no parameter");
        return {CriterionKind::Hybrid, 0};
    }
    if (parts.size() != 2)
        throw std::invalid_argument("criterion needs a parameter, e.g. lbd:3; got '" + s + "'");
    if (parts[0] == "lbd")
        return {CriterionKind::LbdAtMost, parse_int_in(parts[1], "lbd criterion k", 2, 8)};
    if (parts[0] == "size")
        return {CriterionKind::SizeAtMost, parse_int_in(parts[1], "size criterion k", 2, 15)};
    if (parts[0] == "lbd+hc")
        return {CriterionKind::LbdOrHc, parse_int_in(parts[1], "lbd+hc criterion k", 2, 8)};
    throw std::invalid_argument("unknown criterion '" + parts[0] + "'");
}

PermLimitScheme parse_limit(const std::string& s) {
    auto parts = split(s, ':');
    PermLimitScheme lim;
    if (parts[0] == "none") {
        if (parts.size() != 1) throw std::invalid_argument("limit 'none' takes no parameter");
        return lim;
    }
    if (parts.size() < 2) throw std::invalid_argument("limit scheme needs a cap: '" + s + "'");
    lim.cap = parse_u64(parts[1], "limit cap");
    if (lim.cap == 0) throw std::invalid_argument("limit cap must be positive");
    if (parts[0] == "freeze") {
        if (parts.size() != 2) throw std::invalid_argument("freeze takes only a cap");
        lim.kind = LimitKind::Freeze;
        return lim;
    }
    if (parts[0] == "delhalf-act") {
        if (parts.size() != 2) throw std::invalid_argument("delhalf-act takes only a cap");
        lim.kind = LimitKind::DeleteHalfActivity;
        return lim;
    }
    if (parts[0] == "delhalf-lbd") {
        if (parts.size() != 3 || parts[2].rfind("save=", 0) != 0)
            throw std::invalid_argument("delhalf-lbd needs cap and save=, e.g. delhalf-lbd:100000:save=size2");
        lim.kind = LimitKind::DeleteHalfLbd;
        std::string save = parts[2].substr(5);
        if (save == "size2")
            lim.save = SavePredicate::SizeAtMost2;
        else if (save == "size3")
            lim.save = SavePredicate::SizeAtMost3;
        else if (save == "lbd2")
            lim.save = SavePredicate::LbdAtMost2;
        else
            throw std::invalid_argument("unknown save predicate '" + save + "'");
        return lim;
    }
    throw std::invalid_argument("unknown limit scheme '" + parts[0] + "'");
}

} // namespace

PolicyConfig PolicyConfig::from_flags(const std::vector<std::string>& t) {
    PolicyConfig cfg;
    for (size_t i = 0; i < t.size(); ++i) {
        const std::string& f = t[i];
        auto val = [&]() -> const std::string& {
            if (++i >= t.size()) throw std::invalid_argument("missing value after " + f);
            return t[i];
        };
        if (f == "--perm-criterion") {
            cfg.criterion = parse_criterion(val());
        } else if (f == "--perm-limit") {
            cfg.limit = parse_limit(val());
        } else if (f == "--hc") {
            const std::string& v = val();
            if (v == "on")
                cfg.hc_enabled = true;
            else if (v == "off")
                cfg.hc_enabled = false;
            else
                throw std::invalid_argument("--hc expects on|off, got '" + v + "'");
        } else if (f == "--hc-max") {
            cfg.hc.max_hc = parse_u64(val(), "--hc-max");
        } else if (f == "--hc-size-limit") {
            const std::string& v = val();
            cfg.hc.size_limit = (v == "none") ? 0 : parse_int_in(v, "--hc-size-limit", 1, 1 << 20);
        } else if (f == "--hc-review") {
            cfg.hc.review_period = parse_u64(val(), "--hc-review");
            if (cfg.hc.review_period == 0) throw std::invalid_argument("--hc-review must be positive");
        } else if (f == "--centrality-budget-ms") {
            cfg.hc.budget_ms = parse_u64(val(), "--centrality-budget-ms");
        } else if (f == "--aux-learn") {
            const std::string& v = val();
            if (v == "off")
                cfg.aux.mode = AuxMode::Off;
            else if (v == "temp")
                cfg.aux.mode = AuxMode::ToTemp;
            else if (v == "perm")
                cfg.aux.mode = AuxMode::ToPerm;
            else
                throw std::invalid_argument("--aux-learn expects off|temp|perm, got '" + v + "'");
        } else if (f == "--aux-learn-max-b") {
            cfg.aux.max_backjump_level = parse_int_in(val(), "--aux-learn-max-b", 1, 1 << 20);
        } else if (f == "--seed") {
            cfg.seed = parse_u64(val(), "--seed");
        } else if (f == "--snapshot-period") {
            cfg.snapshot_period = parse_u64(val(), "--snapshot-period");
        } else if (f == "--no-deletion") {
            cfg.disable_deletion = true;
        } else if (f == "--count-use-once") {
            cfg.count_use_once_per_conflict = true;
        } else {
            throw std::invalid_argument("unknown flag: " + f);
        }
    }
    return cfg;
}

std::string PolicyConfig::to_flags() const {
    std::string s = "--perm-criterion ";
    switch (criterion.kind) {
        case CriterionKind::LbdAtMost: s += "lbd:" + std::to_string(criterion.k); break;
        case CriterionKind::SizeAtMost: s += "size:" + std::to_string(criterion.k); break;
        case CriterionKind::LbdOrHc: s += "lbd+hc:" + std::to_string(criterion.k); break;
        case CriterionKind::Hybrid: s += "hybrid"; break;
    }
    s += " --perm-limit ";
    switch (limit.kind) {
        case LimitKind::None: s += "none"; break;
        case LimitKind::Freeze: s += "freeze:" + std::to_string(limit.cap); break;
        case LimitKind::DeleteHalfActivity: s += "delhalf-act:" + std::to_string(limit.cap); break;
        case LimitKind::DeleteHalfLbd:
            s += "delhalf-lbd:" + std::to_string(limit.cap) + ":save=";
            s += limit.save == SavePredicate::SizeAtMost2   ? "size2"
                 : limit.save == SavePredicate::SizeAtMost3 ? "size3"
                                                            : "lbd2";
            break;
    }
    s += std::string(" --hc ") + (hc_enabled ? "on" : "off");
    s += " --aux-learn ";
    s += aux.mode == AuxMode::Off ? "off" : aux.mode == AuxMode::ToTemp ? "temp" : "perm";
    if (aux.mode != AuxMode::Off && aux.max_backjump_level != 5)
        s += " --aux-learn-max-b " + std::to_string(aux.max_backjump_level);
    if (disable_deletion) s += " --no-deletion";
    if (count_use_once_per_conflict) s += " --count-use-once";
    return s;
}

PermPolicy::PermPolicy(const PolicyConfig& cfg, HcController* hc, bool centrality_available)
    : crit_(cfg.criterion), limit_(cfg.limit), store_(cfg.store) {
    if (crit_.kind == CriterionKind::Hybrid)
        crit_ = centrality_available ? PermCriterion{CriterionKind::LbdOrHc, 3}
                                     : PermCriterion{CriterionKind::SizeAtMost, 8};
    hc_ = crit_.kind == CriterionKind::LbdOrHc ? hc : nullptr;
    core_lbd_ = crit_.kind == CriterionKind::SizeAtMost ? store_.core_lbd : crit_.k;
    relax_enabled_ = crit_.kind == CriterionKind::LbdAtMost && crit_.k == 3;
}

bool PermPolicy::perm_criterion(int size, int lbd, std::optional<double> centrality) {
    switch (crit_.kind) {
        case CriterionKind::LbdAtMost:
            return lbd <= core_lbd_;
        case CriterionKind::SizeAtMost:
            return size <= crit_.k;
        case CriterionKind::LbdOrHc:
            if (lbd <= core_lbd_) return true;
#ifndef TIERSAT_NO_AUX_HC
            if (hc_ && centrality) return hc_->admit(size, *centrality);
#else
            (void)centrality;
#endif
            return false;
        case CriterionKind::Hybrid: break; // resolved at construction
    }
    assert(false && "unresolved hybrid criterion");
    return false;
}

void PermPolicy::maybe_relax_core_threshold(uint64_t conflict_no, uint64_t core_size) {
    if (relax_checked_ || conflict_no < store_.relax_check_at) return;
    relax_checked_ = true;
    if (relax_enabled_ && core_size < store_.relax_if_core_below) {
        core_lbd_ = store_.core_lbd_relaxed;
        relax_fired_ = true;
    }
}

PermLimitAction PermPolicy::enforce_perm_limit(uint64_t core_size) {
    switch (limit_.kind) {
        case LimitKind::None:
            return PermLimitAction::Admit;
        case LimitKind::Freeze:
            if (!freeze_latched_ && core_size >= limit_.cap) freeze_latched_ = true;
            return freeze_latched_ ? PermLimitAction::Reroute : PermLimitAction::Admit;
        case LimitKind::DeleteHalfActivity:
        case LimitKind::DeleteHalfLbd:
            return core_size >= limit_.cap ? PermLimitAction::DeleteHalfFirst
                                           : PermLimitAction::Admit;
    }
    return PermLimitAction::Admit;
}

} // namespace tiersat
