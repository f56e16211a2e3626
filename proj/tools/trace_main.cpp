// Prints a one-line deterministic fingerprint of a solve: status, counters,
// and the search-trace hash.  Built once against the full library and once
// against the slim one so the two can be diffed byte for byte.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "tiersat/solver.hpp"

using namespace tiersat;

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <file.cnf> [--max-conflicts N] [policy flags]\n",
                     argv[0]);
        return 2;
    }
    try {
        uint64_t max_conflicts = 0;
        std::vector<std::string> flags;
        for (int i = 2; i < argc; ++i) {
            if (std::strcmp(argv[i], "--max-conflicts") == 0 && i + 1 < argc) {
                max_conflicts = std::strtoull(argv[++i], nullptr, 10);
                continue;
            }
            flags.push_back(argv[i]);
        }
        Formula f = parse_dimacs_file(argv[1]);
        Solver s(f, PolicyConfig::from_flags(flags));
        s.set_trace(true);
        SolveBudget budget;
        budget.max_conflicts = max_conflicts;
        SolveResult res = s.solve(budget);
        std::printf("%s conflicts=%llu decisions=%llu propagations=%llu hash=%016llx\n",
                    status_name(res.status),
                    static_cast<unsigned long long>(res.stats.conflicts),
                    static_cast<unsigned long long>(res.stats.decisions),
                    static_cast<unsigned long long>(res.stats.propagations),
                    static_cast<unsigned long long>(s.trace_hash()));
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
