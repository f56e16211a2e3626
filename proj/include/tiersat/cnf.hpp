#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tiersat/types.hpp"

namespace tiersat {

struct Clause {
    std::vector<Lit> lits;

    Clause() = default;
    explicit Clause(std::vector<Lit> ls) : lits(std::move(ls)) {}

    size_t size() const { return lits.size(); }
    bool empty() const { return lits.empty(); }
    auto begin() const { return lits.begin(); }
    auto end() const { return lits.end(); }

    friend bool operator==(const Clause& a, const Clause& b) { return a.lits == b.lits; }
};

struct Formula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    friend bool operator==(const Formula& a, const Formula& b) {
        return a.num_vars == b.num_vars && a.clauses == b.clauses;
    }
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parses DIMACS CNF. Duplicate literals within a clause are merged and
// tautological clauses dropped; the header's clause count is advisory.
// An explicit empty clause ("0") is kept and makes the instance UNSAT.
// Throws ParseError on malformed input.
Formula parse_dimacs(std::string_view text);
Formula parse_dimacs_file(const std::string& path);

std::string serialize_dimacs(const Formula& f);
void write_dimacs_file(const Formula& f, const std::string& path);

// Graph on variables 1..n; u and v are adjacent iff they co-occur in a clause.
struct PrimalGraph {
    int num_vars = 0;
    std::vector<std::vector<Var>> adj; // adj[0] unused; neighbor lists sorted

    size_t num_edges() const {
        size_t d = 0;
        for (const auto& ns : adj) d += ns.size();
        return d / 2;
    }
};

PrimalGraph build_primal_graph(const Formula& f);

} // namespace tiersat
