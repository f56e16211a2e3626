#pragma once

#include <cstdint>

#include "tiersat/cnf.hpp"

namespace tiersat {

// Uniform random 3-CNF: each clause picks 3 distinct variables and random
// polarities.  Deterministic for a given seed.
Formula gen_random_3cnf(int num_vars, int num_clauses, uint64_t seed);

// Pigeonhole principle PHP(pigeons, holes): every pigeon gets a hole, no two
// pigeons share one.  Unsatisfiable iff pigeons > holes.
Formula gen_php(int pigeons, int holes);

} // namespace tiersat
