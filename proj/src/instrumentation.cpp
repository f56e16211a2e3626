#include "tiersat/instrumentation.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tiersat {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string stats_csv_header() {
    return "conflict_no,core,tier2,local,learned_total,perm_fraction,hc_admitted,ct,aux_emitted";
}

std::string stats_row_csv(const StatsRow& r) {
    std::ostringstream os;
    os << r.conflict_no << ',' << r.core << ',' << r.tier2 << ',' << r.local << ','
       << r.learned_total << ',' << fmt_double(r.perm_fraction) << ',' << r.hc_admitted << ','
       << fmt_double(r.ct) << ',' << r.aux_emitted;
    return os.str();
}

void Instrumentation::on_store_event(const StoreEvent& e) {
    if (record_events) events.push_back(e);
    switch (e.kind) {
        case StoreEventKind::Admit:
        case StoreEventKind::Promote:
            if (e.to == TierTag::Core) ++admitted_to_core_;
            break;
        case StoreEventKind::Delete:
            if (e.reason == DeleteReason::SatisfiedAtLevelZero)
                ++removed_satisfied_;
            else
                ++deleted_;
            break;
        case StoreEventKind::Demote:
            break;
    }
}

StatsRow Instrumentation::make_row(uint64_t conflict_no, const ClauseStore& store,
                                   const HcController* hc) const {
    StatsRow r;
    r.conflict_no = conflict_no;
    r.core = store.core_size();
    r.tier2 = store.tier2_size();
    r.local = store.local_size();
    r.learned_total = learned_total_;
    r.perm_fraction = learned_total_ == 0
                          ? 0.0
                          : static_cast<double>(admitted_to_core_) / static_cast<double>(learned_total_);
    r.hc_admitted = hc ? hc->admitted() : 0;
    r.ct = hc ? hc->ct() : 0.0;
    r.aux_emitted = aux_emitted_;
    return r;
}

std::string Instrumentation::rows_csv() const {
    std::ostringstream os;
    os << stats_csv_header() << '\n';
    for (const auto& r : rows_) os << stats_row_csv(r) << '\n';
    return os.str();
}

void Instrumentation::write_rows_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write stats to " + path);
    out << rows_csv();
}

std::string UsageCentralityProfile::to_csv() const {
    std::ostringstream os;
    os << "bin_lo,bin_hi,count,mean_usage\n";
    for (const auto& b : bins)
        os << fmt_double(b.lo) << ',' << fmt_double(b.hi) << ',' << b.count << ','
           << fmt_double(b.mean_usage) << '\n';
    return os.str();
}

} // namespace tiersat
