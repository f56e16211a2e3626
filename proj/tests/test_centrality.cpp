#include <doctest.h>

#include <cmath>

#include "tiersat/centrality.hpp"

using namespace tiersat;

namespace {

Formula from_clauses(int nv, std::initializer_list<std::initializer_list<int>> cls) {
    Formula f;
    f.num_vars = nv;
    for (auto c : cls) {
        Clause cl;
        for (int d : c) cl.lits.push_back(Lit::from_dimacs(d));
        f.clauses.push_back(std::move(cl));
    }
    return f;
}

} // namespace

#ifndef TIERSAT_NO_AUX_HC

TEST_CASE("betweenness on a star: center carries every pair") {
    // K_{1,3}: center 1, leaves 2..4 (binary clauses only touch pairs)
    Formula f = from_clauses(4, {{1, 2}, {1, 3}, {1, 4}});
    auto g = build_primal_graph(f);
    auto raw = brandes_betweenness(g, 10000);
    REQUIRE(raw.has_value());
    // ordered pairs through the center: (2,3),(3,2),(2,4),(4,2),(3,4),(4,3)
    CHECK((*raw)[1] == doctest::Approx(6.0).epsilon(1e-12));
    CHECK((*raw)[2] == doctest::Approx(0.0));
    CHECK((*raw)[3] == doctest::Approx(0.0));
    CHECK((*raw)[4] == doctest::Approx(0.0));

    auto m = compute_centrality_map(g, 10000);
    REQUIRE(m.has_value());
    CHECK(m->of_var(1) == doctest::Approx(1.0)); // 6 / ((4-1)(4-2)) = 1
    CHECK(m->of_var(2) == doctest::Approx(0.0));
}

TEST_CASE("betweenness on a path") {
    // path 1 - 2 - 3 - 4
    Formula f = from_clauses(4, {{1, 2}, {2, 3}, {3, 4}});
    auto g = build_primal_graph(f);
    auto raw = brandes_betweenness(g, 10000);
    REQUIRE(raw.has_value());
    // vertex 2 lies on (1,3),(3,1),(1,4),(4,1): raw 4; same for vertex 3
    CHECK((*raw)[1] == doctest::Approx(0.0));
    CHECK((*raw)[2] == doctest::Approx(4.0));
    CHECK((*raw)[3] == doctest::Approx(4.0));
    CHECK((*raw)[4] == doctest::Approx(0.0));
}

TEST_CASE("betweenness splits over equal shortest paths") {
    // 4-cycle 1-2-3-4-1: two shortest paths between opposite corners,
    // each middle vertex gets half of each ordered pair.
    Formula f = from_clauses(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    auto g = build_primal_graph(f);
    auto raw = brandes_betweenness(g, 10000);
    REQUIRE(raw.has_value());
    for (Var v = 1; v <= 4; ++v) CHECK((*raw)[v] == doctest::Approx(1.0));
}

TEST_CASE("normalization clamps and handles tiny graphs") {
    CHECK(normalize_centrality(6.0, 4) == doctest::Approx(1.0));
    CHECK(normalize_centrality(3.0, 4) == doctest::Approx(0.5));
    CHECK(normalize_centrality(100.0, 4) == doctest::Approx(1.0)); // clamped
    CHECK(normalize_centrality(-1.0, 4) == doctest::Approx(0.0));  // clamped
    CHECK(normalize_centrality(5.0, 2) == doctest::Approx(0.0));   // n < 3
    CHECK(normalize_centrality(5.0, 0) == doctest::Approx(0.0));
}

TEST_CASE("zero budget yields no map") {
    Formula f = from_clauses(30, {{1, 2}, {2, 3}});
    auto g = build_primal_graph(f);
    CHECK_FALSE(brandes_betweenness(g, 0).has_value());
    CHECK_FALSE(compute_centrality_map(g, 0).has_value());
}

TEST_CASE("disconnected and isolated vertices") {
    // two components: path 1-2-3 and lone edge 4-5; var 6 isolated
    Formula f = from_clauses(6, {{1, 2}, {2, 3}, {4, 5}});
    auto g = build_primal_graph(f);
    auto raw = brandes_betweenness(g, 10000);
    REQUIRE(raw.has_value());
    CHECK((*raw)[2] == doctest::Approx(2.0)); // (1,3) and (3,1) only
    CHECK((*raw)[4] == doctest::Approx(0.0));
    CHECK((*raw)[6] == doctest::Approx(0.0));
}

TEST_CASE("clause centrality is the mean over member variables") {
    Formula f = from_clauses(4, {{1, 2}, {1, 3}, {1, 4}});
    auto m = compute_centrality_map(build_primal_graph(f), 10000);
    REQUIRE(m.has_value());
    std::vector<Lit> c = {Lit::from_dimacs(1), Lit::from_dimacs(-2)};
    CHECK(clause_centrality(c, *m) == doctest::Approx(0.5)); // (1.0 + 0.0) / 2
    std::vector<Lit> d = {Lit::from_dimacs(2), Lit::from_dimacs(3), Lit::from_dimacs(4)};
    CHECK(clause_centrality(d, *m) == doctest::Approx(0.0));
}

TEST_CASE("hc controller: threshold reviews") {
    HcConfig cfg;
    HcController hc(cfg);
    CHECK(hc.ct() == doctest::Approx(0.008));

    SUBCASE("lagging admissions lower the threshold by one step") {
        // 1 admitted, target 0.0002 * 100000 = 20 -> reduce
        hc.admit(5, 0.9);
        hc.tick(100000);
        CHECK(hc.ct() == doctest::Approx(0.007));
    }
    SUBCASE("meeting the target leaves the threshold alone") {
        for (int i = 0; i < 30; ++i) CHECK(hc.admit(5, 0.9));
        hc.tick(100000); // 30 >= 20
        CHECK(hc.ct() == doctest::Approx(0.008));
    }
    SUBCASE("the floor holds under repeated reviews") {
        for (int i = 0; i < 20; ++i) hc.tick(1000000);
        CHECK(hc.ct() == doctest::Approx(0.001));
    }
    SUBCASE("the descent is exact in thousandths") {
        for (int i = 0; i < 7; ++i) {
            hc.tick(1u << 20);
            CHECK(hc.ct() == doctest::Approx(0.008 - 0.001 * (i + 1)).epsilon(1e-12));
        }
        hc.tick(1u << 20);
        CHECK(hc.ct() == doctest::Approx(0.001).epsilon(1e-12));
    }
}

TEST_CASE("hc controller: admission gate") {
    HcConfig cfg;
    cfg.max_hc = 2;
    cfg.size_limit = 15;
    HcController hc(cfg);

    CHECK_FALSE(hc.admit(5, 0.0079)); // below threshold
    CHECK(hc.admitted() == 0);
    CHECK_FALSE(hc.admit(16, 0.9)); // too big
    CHECK(hc.admit(15, 0.008));     // boundary size, boundary centrality
    CHECK(hc.admit(2, 0.9));
    CHECK(hc.admitted() == 2);
    CHECK_FALSE(hc.admit(2, 0.9)); // cap reached
    CHECK(hc.admitted() == 2);

    SUBCASE("no size limit when configured off") {
        HcConfig open;
        open.size_limit = 0;
        HcController h2(open);
        CHECK(h2.admit(5000, 0.5));
    }
}

#endif // TIERSAT_NO_AUX_HC
