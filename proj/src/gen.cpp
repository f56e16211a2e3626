#include "tiersat/gen.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace tiersat {

Formula gen_random_3cnf(int num_vars, int num_clauses, uint64_t seed) {
    assert(num_vars >= 3);
    std::mt19937_64 rng(seed);
    Formula f;
    f.num_vars = num_vars;
    f.clauses.reserve(num_clauses);
    for (int i = 0; i < num_clauses; ++i) {
        Var v[3];
        v[0] = 1 + static_cast<Var>(rng() % num_vars);
        do v[1] = 1 + static_cast<Var>(rng() % num_vars);
        while (v[1] == v[0]);
        do v[2] = 1 + static_cast<Var>(rng() % num_vars);
        while (v[2] == v[0] || v[2] == v[1]);
        Clause c;
        for (Var x : v) c.lits.push_back(Lit::make(x, rng() & 1));
        std::sort(c.lits.begin(), c.lits.end());
        f.clauses.push_back(std::move(c));
    }
    return f;
}

Formula gen_php(int pigeons, int holes) {
    assert(pigeons >= 1 && holes >= 1);
    auto var_of = [&](int p, int h) { return (p - 1) * holes + h; }; // pigeon p in hole h
    Formula f;
    f.num_vars = pigeons * holes;
    for (int p = 1; p <= pigeons; ++p) {
        Clause c;
        for (int h = 1; h <= holes; ++h) c.lits.push_back(Lit::make(var_of(p, h), false));
        f.clauses.push_back(std::move(c));
    }
    for (int h = 1; h <= holes; ++h)
        for (int p1 = 1; p1 <= pigeons; ++p1)
            for (int p2 = p1 + 1; p2 <= pigeons; ++p2) {
                Clause c;
                c.lits.push_back(Lit::make(var_of(p1, h), true));
                c.lits.push_back(Lit::make(var_of(p2, h), true));
                f.clauses.push_back(std::move(c));
            }
    return f;
}

} // namespace tiersat
