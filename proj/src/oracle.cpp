#include "tiersat/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "tiersat/types.hpp"

namespace tiersat {

namespace {

Value lit_value(const std::vector<Value>& a, Lit l) {
    Value v = a[l.var()];
    return l.neg() ? -v : v;
}

void set_lit(std::vector<Value>& a, Lit l) { a[l.var()] = l.neg() ? Value::False : Value::True; }

bool dpll(std::vector<Value>& a, const std::vector<Clause>& cls, int nv) {
    std::vector<Var> assigned_here;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Clause& c : cls) {
            int n_undef = 0;
            Lit unit{};
            bool sat = false;
            for (Lit l : c.lits) {
                Value v = lit_value(a, l);
                if (v == Value::True) {
                    sat = true;
                    break;
                }
                if (v == Value::Undef) {
                    ++n_undef;
                    unit = l;
                }
            }
            if (sat) continue;
            if (n_undef == 0) {
                for (Var v : assigned_here) a[v] = Value::Undef;
                return false;
            }
            if (n_undef == 1) {
                set_lit(a, unit);
                assigned_here.push_back(unit.var());
                changed = true;
            }
        }
    }
    Var branch = 0;
    for (Var v = 1; v <= nv; ++v)
        if (a[v] == Value::Undef) {
            branch = v;
            break;
        }
    if (branch == 0) return true;
    for (Value try_v : {Value::True, Value::False}) {
        a[branch] = try_v;
        if (dpll(a, cls, nv)) return true;
    }
    a[branch] = Value::Undef;
    for (Var v : assigned_here) a[v] = Value::Undef;
    return false;
}

} // namespace

std::optional<std::vector<bool>> oracle_solve(const Formula& f) {
    if (f.num_vars > kOracleMaxVars)
        throw std::invalid_argument("oracle refuses formulas with more than " +
                                    std::to_string(kOracleMaxVars) + " variables");
    std::vector<Value> a(f.num_vars + 1, Value::Undef);
    if (!dpll(a, f.clauses, f.num_vars)) return std::nullopt;
    std::vector<bool> model(f.num_vars + 1, false);
    for (Var v = 1; v <= f.num_vars; ++v) model[v] = a[v] != Value::False; // Undef: any value works
    return model;
}

bool oracle_entails(const Formula& f, const Clause& c) {
    Formula g = f;
    for (Lit l : c.lits) {
        Clause u;
        u.lits.push_back(~l);
        g.num_vars = std::max(g.num_vars, l.var());
        g.clauses.push_back(std::move(u));
    }
    return !oracle_solve(g).has_value();
}

} // namespace tiersat
