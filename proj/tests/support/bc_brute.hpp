#pragma once

// Brute-force betweenness oracle: BFS distances, then explicit enumeration of
// every shortest path with a backward depth-first walk.  Counts ordered
// (source, target) pairs.  Intentionally naive and independent of the
// production implementation.

#include <vector>

#include "graph_enum.hpp"

namespace graphenum {

namespace detail {

inline void walk_paths(const SmallGraph& g, const std::vector<int>& dist, int w, int s,
                       std::vector<int>& path, std::vector<long long>& through,
                       long long& total) {
    if (w == s) {
        ++total;
        for (size_t i = 1; i + 1 < path.size(); ++i) // endpoints t and s excluded
            ++through[path[i]];
        return;
    }
    for (int u = 0; u < g.n; ++u)
        if (g.has_edge(w, u) && dist[u] == dist[w] - 1) {
            path.push_back(u);
            walk_paths(g, dist, u, s, path, through, total);
            path.pop_back();
        }
}

} // namespace detail

inline std::vector<double> brute_betweenness(const SmallGraph& g) {
    std::vector<double> bc(g.n, 0.0);
    for (int s = 0; s < g.n; ++s) {
        std::vector<int> dist(g.n, -1);
        dist[s] = 0;
        std::vector<int> q = {s};
        for (size_t head = 0; head < q.size(); ++head) {
            int v = q[head];
            for (int u = 0; u < g.n; ++u)
                if (g.has_edge(v, u) && dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
        }
        for (int t = 0; t < g.n; ++t) {
            if (t == s || dist[t] <= 1) continue; // adjacent or unreachable: no interior
            std::vector<long long> through(g.n, 0);
            long long total = 0;
            std::vector<int> path = {t};
            detail::walk_paths(g, dist, t, s, path, through, total);
            for (int v = 0; v < g.n; ++v)
                if (through[v] > 0)
                    bc[v] += static_cast<double>(through[v]) / static_cast<double>(total);
        }
    }
    return bc;
}

} // namespace graphenum
