#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace tiersat {

using Var = int32_t; // variables are 1-based, as in DIMACS

// A literal packs the variable and its polarity into one int:
// code = var << 1 | (negated ? 1 : 0).
class Lit {
public:
    constexpr Lit() = default;
    static constexpr Lit make(Var v, bool neg) {
        Lit l;
        l.code_ = (v << 1) | (neg ? 1 : 0);
        return l;
    }
    static Lit from_dimacs(int d) {
        assert(d != 0);
        return make(d < 0 ? -d : d, d < 0);
    }
    int to_dimacs() const { return neg() ? -var() : var(); }

    Var var() const { return code_ >> 1; }
    bool neg() const { return code_ & 1; }
    // Watch-array slot; distinct for every (var, sign) pair, starts at 2.
    int index() const { return code_; }
    bool valid() const { return code_ != 0; }

    Lit operator~() const {
        Lit l;
        l.code_ = code_ ^ 1;
        return l;
    }
    friend bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
    friend bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }
    friend bool operator<(Lit a, Lit b) { return a.code_ < b.code_; }

private:
    int32_t code_ = 0;
};

// Tri-state assignment value of a variable or literal.
enum class Value : int8_t { False = -1, Undef = 0, True = 1 };

inline Value operator-(Value v) { return static_cast<Value>(-static_cast<int8_t>(v)); }

// Counts distinct decision levels in a literal set (the LBD measure).
// Keeps a stamp per level so repeated queries are O(clause size).
class LbdCalculator {
public:
    int distinct_levels(std::span<const int> levels) {
        ++tick_;
        int count = 0;
        for (int lv : levels) {
            assert(lv >= 0);
            if (static_cast<size_t>(lv) >= stamp_.size()) stamp_.resize(lv + 1, 0);
            if (stamp_[lv] != tick_) {
                stamp_[lv] = tick_;
                ++count;
            }
        }
        return count;
    }

private:
    std::vector<uint64_t> stamp_;
    uint64_t tick_ = 0;
};

// Luby restart sequence (0-indexed): 1,1,2,1,1,2,4,...
inline uint64_t luby(uint64_t i) {
    uint64_t size = 1, seq = 0;
    while (size < i + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != i) {
        size = (size - 1) >> 1;
        --seq;
        i %= size;
    }
    return 1ull << seq;
}

// FNV-1a, used for search-trace fingerprints.
struct Fnv1a {
    uint64_t h = 14695981039346656037ull;
    void add(uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    }
};

} // namespace tiersat
