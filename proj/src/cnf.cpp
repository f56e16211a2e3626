#include "tiersat/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace tiersat {

namespace {

struct Tokenizer {
    std::string_view text;
    size_t pos = 0;

    // Returns the next whitespace-delimited token, skipping 'c' comment
    // lines. Empty view at end of input.
    std::string_view next() {
        for (;;) {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
            if (pos >= text.size()) return {};
            if (text[pos] == 'c' && (pos + 1 >= text.size() || text[pos + 1] == ' ' ||
                                     text[pos + 1] == '\t' || text[pos + 1] == '\r' ||
                                     text[pos + 1] == '\n')) {
                while (pos < text.size() && text[pos] != '\n') ++pos;
                continue;
            }
            size_t start = pos;
            while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
            return text.substr(start, pos - start);
        }
    }
};

long long to_int(std::string_view tok) {
    long long value = 0;
    size_t i = 0;
    bool neg = false;
    if (i < tok.size() && (tok[i] == '-' || tok[i] == '+')) {
        neg = tok[i] == '-';
        ++i;
    }
    if (i >= tok.size()) throw ParseError("expected integer, got '" + std::string(tok) + "'");
    for (; i < tok.size(); ++i) {
        if (tok[i] < '0' || tok[i] > '9')
            throw ParseError("expected integer, got '" + std::string(tok) + "'");
        value = value * 10 + (tok[i] - '0');
        if (value > (1ll << 40)) throw ParseError("integer out of range: " + std::string(tok));
    }
    return neg ? -value : value;
}

// Sort, merge duplicates, detect tautology. Returns false if tautological.
bool normalize_clause(std::vector<Lit>& lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i].var() == lits[i + 1].var()) return false;
    return true;
}

} // namespace

Formula parse_dimacs(std::string_view text) {
    Tokenizer tz{text};

    std::string_view tok = tz.next();
    if (tok != "p") throw ParseError("missing 'p cnf' header");
    tok = tz.next();
    if (tok != "cnf") throw ParseError("header format is not 'p cnf'");
    long long nv = to_int(tz.next());
    long long nc = to_int(tz.next()); // advisory only
    if (nv < 0 || nc < 0 || nv > (1 << 28)) throw ParseError("malformed 'p cnf' header counts");

    Formula f;
    f.num_vars = static_cast<int>(nv);

    std::vector<Lit> cur;
    bool in_clause = false;
    for (;;) {
        tok = tz.next();
        if (tok.empty()) break;
        long long d = to_int(tok);
        if (d == 0) {
            in_clause = false;
            if (normalize_clause(cur)) f.clauses.emplace_back(std::move(cur));
            cur = {};
            continue;
        }
        long long v = d < 0 ? -d : d;
        if (v > nv)
            throw ParseError("literal " + std::string(tok) + " exceeds declared variable count " +
                             std::to_string(nv));
        cur.push_back(Lit::from_dimacs(static_cast<int>(d)));
        in_clause = true;
    }
    if (in_clause) throw ParseError("input ends inside a clause (missing terminating 0)");
    return f;
}

Formula parse_dimacs_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_dimacs(ss.str());
}

std::string serialize_dimacs(const Formula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const Clause& c : f.clauses) {
        for (Lit l : c) out << l.to_dimacs() << ' ';
        out << "0\n";
    }
    return out.str();
}

void write_dimacs_file(const Formula& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << serialize_dimacs(f);
}

PrimalGraph build_primal_graph(const Formula& f) {
    std::vector<std::pair<Var, Var>> edges;
    for (const Clause& c : f.clauses)
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = i + 1; j < c.size(); ++j) {
                Var u = c.lits[i].var();
                Var v = c.lits[j].var();
                if (u > v) std::swap(u, v);
                edges.emplace_back(u, v);
            }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    PrimalGraph g;
    g.num_vars = f.num_vars;
    g.adj.assign(f.num_vars + 1, {});
    for (auto [u, v] : edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& ns : g.adj) std::sort(ns.begin(), ns.end());
    return g;
}

} // namespace tiersat
