// Compiled out entirely in the slim library variant.
#ifndef TIERSAT_NO_AUX_HC

#include "tiersat/centrality.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <deque>

namespace tiersat {

std::optional<std::vector<double>> brandes_betweenness(const PrimalGraph& g, uint64_t budget_ms) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto over_budget = [&] {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0);
        return static_cast<uint64_t>(ms.count()) >= budget_ms;
    };

    const int n = g.num_vars;
    std::vector<double> cb(n + 1, 0.0);
    if (over_budget()) return std::nullopt;

    std::vector<int> dist(n + 1);
    std::vector<double> sigma(n + 1, 0.0), delta(n + 1, 0.0);
    std::vector<std::vector<Var>> preds(n + 1);
    std::vector<Var> order;
    std::deque<Var> queue;

    for (Var s = 1; s <= n; ++s) {
        if (over_budget()) return std::nullopt;
        if (g.adj[s].empty()) continue; // isolated vertex lies on no path
        std::fill(dist.begin(), dist.end(), -1);
        order.clear();
        queue.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while (!queue.empty()) {
            Var v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (Var w : g.adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    sigma[w] = 0.0;
                    delta[w] = 0.0;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        delta[s] = 0.0;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            Var w = *it;
            for (Var p : preds[w]) delta[p] += sigma[p] / sigma[w] * (1.0 + delta[w]);
            if (w != s) cb[w] += delta[w];
            preds[w].clear();
        }
    }
    // No halving: summing the per-source dependencies of an undirected graph
    // counts ordered (s,t) pairs.
    return cb;
}

double normalize_centrality(double raw, int n) {
    if (n < 3) return 0.0;
    double v = raw / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    return std::clamp(v, 0.0, 1.0);
}

std::optional<CentralityMap> compute_centrality_map(const PrimalGraph& g, uint64_t budget_ms) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto raw = brandes_betweenness(g, budget_ms);
    if (!raw) return std::nullopt;
    CentralityMap m;
    m.value.resize(g.num_vars + 1, 0.0);
    for (Var v = 1; v <= g.num_vars; ++v) m.value[v] = normalize_centrality((*raw)[v], g.num_vars);
    m.computed_in_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
    return m;
}

double clause_centrality(std::span<const Lit> lits, const CentralityMap& m) {
    assert(!lits.empty());
    double sum = 0.0;
    for (Lit l : lits) sum += m.of_var(l.var());
    return sum / static_cast<double>(lits.size());
}

HcController::HcController(const HcConfig& cfg) : cfg_(cfg) {
    auto mils = [](double x) { return static_cast<int64_t>(std::llround(x * 1000.0)); };
    ct_mils_ = mils(cfg.ct_init);
    step_mils_ = mils(cfg.ct_step);
    floor_mils_ = mils(cfg.ct_floor);
    assert(ct_mils_ >= floor_mils_);
}

bool HcController::admit(int clause_size, double centrality) {
    if (centrality < ct()) return false;
    if (admitted_ >= cfg_.max_hc) return false;
    if (cfg_.size_limit > 0 && clause_size > cfg_.size_limit) return false;
    ++admitted_;
    return true;
}

void HcController::tick(uint64_t learned_total) {
    double target = cfg_.target_fraction * static_cast<double>(learned_total);
    if (static_cast<double>(admitted_) < target)
        ct_mils_ = std::max(ct_mils_ - step_mils_, floor_mils_);
}

} // namespace tiersat

#endif // TIERSAT_NO_AUX_HC
