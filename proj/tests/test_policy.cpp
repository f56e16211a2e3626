#include <doctest.h>

#include "tiersat/policy.hpp"

using namespace tiersat;

#include <sstream>

namespace {
PolicyConfig flags(std::initializer_list<std::string> toks) {
    return PolicyConfig::from_flags(std::vector<std::string>(toks));
}

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}
} // namespace

TEST_CASE("flag parsing: criteria") {
    CHECK(flags({}).criterion.kind == CriterionKind::LbdAtMost);
    CHECK(flags({}).criterion.k == 3);

    auto c = flags({"--perm-criterion", "lbd:2"});
    CHECK(c.criterion.kind == CriterionKind::LbdAtMost);
    CHECK(c.criterion.k == 2);
    c = flags({"--perm-criterion", "size:15"});
    CHECK(c.criterion.kind == CriterionKind::SizeAtMost);
    CHECK(c.criterion.k == 15);
    c = flags({"--perm-criterion", "lbd+hc:4"});
    CHECK(c.criterion.kind == CriterionKind::LbdOrHc);
    CHECK(c.criterion.k == 4);
    c = flags({"--perm-criterion", "hybrid"});
    CHECK(c.criterion.kind == CriterionKind::Hybrid);

    // grid bounds
    CHECK_THROWS_AS(flags({"--perm-criterion", "lbd:1"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-criterion", "lbd:9"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-criterion", "size:1"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-criterion", "size:16"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-criterion", "lbd+hc:9"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-criterion", "hybrid:3"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-criterion", "glue:3"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-criterion"}), std::invalid_argument);
}

TEST_CASE("flag parsing: limit schemes") {
    CHECK(flags({}).limit.kind == LimitKind::None);
    auto c = flags({"--perm-limit", "none"});
    CHECK(c.limit.kind == LimitKind::None);
    c = flags({"--perm-limit", "freeze:50000"});
    CHECK(c.limit.kind == LimitKind::Freeze);
    CHECK(c.limit.cap == 50000);
    c = flags({"--perm-limit", "delhalf-act:120000"});
    CHECK(c.limit.kind == LimitKind::DeleteHalfActivity);
    CHECK(c.limit.cap == 120000);
    c = flags({"--perm-limit", "delhalf-lbd:100000:save=size2"});
    CHECK(c.limit.kind == LimitKind::DeleteHalfLbd);
    CHECK(c.limit.save == SavePredicate::SizeAtMost2);
    c = flags({"--perm-limit", "delhalf-lbd:100000:save=size3"});
    CHECK(c.limit.save == SavePredicate::SizeAtMost3);
    c = flags({"--perm-limit", "delhalf-lbd:100000:save=lbd2"});
    CHECK(c.limit.save == SavePredicate::LbdAtMost2);

    CHECK_THROWS_AS(flags({"--perm-limit", "delhalf-lbd:100000"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-limit", "delhalf-lbd:100000:save=act"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-limit", "freeze"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-limit", "freeze:0"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--perm-limit", "shrink:100"}), std::invalid_argument);
}

TEST_CASE("flag parsing: the rest") {
    auto c = flags({"--hc", "off", "--aux-learn", "perm", "--aux-learn-max-b", "3", "--seed",
                    "42", "--snapshot-period", "500", "--hc-max", "123", "--hc-size-limit", "9",
                    "--hc-review", "5000", "--centrality-budget-ms", "77", "--no-deletion",
                    "--count-use-once"});
    CHECK_FALSE(c.hc_enabled);
    CHECK(c.aux.mode == AuxMode::ToPerm);
    CHECK(c.aux.max_backjump_level == 3);
    CHECK(c.seed == 42);
    CHECK(c.snapshot_period == 500);
    CHECK(c.hc.max_hc == 123);
    CHECK(c.hc.size_limit == 9);
    CHECK(c.hc.review_period == 5000);
    CHECK(c.hc.budget_ms == 77);
    CHECK(c.disable_deletion);
    CHECK(c.count_use_once_per_conflict);

    CHECK(flags({"--hc", "on"}).hc_enabled);
    CHECK(flags({"--aux-learn", "off"}).aux.mode == AuxMode::Off);
    CHECK(flags({"--aux-learn", "temp"}).aux.mode == AuxMode::ToTemp);
    CHECK(flags({"--hc-size-limit", "none"}).hc.size_limit == 0);

    CHECK_THROWS_AS(flags({"--hc", "maybe"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--aux-learn", "core"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--frobnicate"}), std::invalid_argument);
    CHECK_THROWS_AS(flags({"--seed", "x"}), std::invalid_argument);
}

TEST_CASE("flags round-trip through to_flags") {
    std::vector<std::vector<std::string>> cases = {
        {},
        {"--perm-criterion", "size:8"},
        {"--perm-criterion", "lbd+hc:3", "--hc", "on", "--aux-learn", "temp"},
        {"--perm-criterion", "lbd:3", "--perm-limit", "delhalf-lbd:200:save=lbd2",
         "--aux-learn", "perm", "--seed", "9", "--count-use-once"},
        {"--perm-criterion", "hybrid", "--perm-limit", "freeze:100", "--no-deletion"},
    };
    for (const auto& toks : cases) {
        PolicyConfig a = PolicyConfig::from_flags(toks);
        PolicyConfig b = PolicyConfig::from_flags(tokenize(a.to_flags()));
        CHECK(a.to_flags() == b.to_flags());
    }
}

TEST_CASE("criterion semantics") {
    PolicyConfig cfg;

    SUBCASE("lbd at most k ignores size") {
        cfg.criterion = {CriterionKind::LbdAtMost, 3};
        PermPolicy p(cfg, nullptr, false);
        CHECK(p.perm_criterion(9, 2, std::nullopt));
        CHECK(p.perm_criterion(50, 3, std::nullopt));
        CHECK_FALSE(p.perm_criterion(2, 4, std::nullopt));
    }
    SUBCASE("size at most k ignores lbd") {
        cfg.criterion = {CriterionKind::SizeAtMost, 8};
        PermPolicy p(cfg, nullptr, false);
        CHECK(p.perm_criterion(8, 30, std::nullopt));
        CHECK_FALSE(p.perm_criterion(9, 2, std::nullopt));
    }
    SUBCASE("hybrid resolves by centrality availability") {
        cfg.criterion = {CriterionKind::Hybrid, 0};
        PermPolicy with(cfg, nullptr, true);
        CHECK(with.active_criterion().kind == CriterionKind::LbdOrHc);
        CHECK(with.active_criterion().k == 3);
        PermPolicy without(cfg, nullptr, false);
        CHECK(without.active_criterion().kind == CriterionKind::SizeAtMost);
        CHECK(without.active_criterion().k == 8);
    }
#ifndef TIERSAT_NO_AUX_HC
    SUBCASE("lbd+hc admits through either door") {
        cfg.criterion = {CriterionKind::LbdOrHc, 3};
        HcController hc(cfg.hc); // ct starts at 0.008
        PermPolicy p(cfg, &hc, true);
        CHECK(p.hc_admission_active());
        CHECK(p.perm_criterion(10, 3, 0.0001));      // lbd door
        CHECK(hc.admitted() == 0);                   // not an hc admission
        CHECK(p.perm_criterion(10, 7, 0.008));       // hc door, at threshold
        CHECK(hc.admitted() == 1);
        CHECK_FALSE(p.perm_criterion(10, 7, 0.0079));
        CHECK(p.perm_criterion(10, 7, std::nullopt) == false); // falls back to lbd test
    }
#endif
}

TEST_CASE("one-shot core threshold relaxation") {
    PolicyConfig cfg; // lbd:3 default

    SUBCASE("fires when the core is small at the checkpoint") {
        PermPolicy p(cfg, nullptr, false);
        CHECK(p.core_lbd_threshold() == 3);
        p.maybe_relax_core_threshold(99999, 5);
        CHECK(p.core_lbd_threshold() == 3); // too early
        p.maybe_relax_core_threshold(100000, 99);
        CHECK(p.core_lbd_threshold() == 5);
        CHECK(p.relaxation_fired());
    }
    SUBCASE("does not fire when the core is big enough") {
        PermPolicy p(cfg, nullptr, false);
        p.maybe_relax_core_threshold(100000, 100);
        CHECK(p.core_lbd_threshold() == 3);
        CHECK_FALSE(p.relaxation_fired());
        // and the check is spent: a later small core changes nothing
        p.maybe_relax_core_threshold(100001, 0);
        CHECK(p.core_lbd_threshold() == 3);
    }
    SUBCASE("only the lbd:3 criterion relaxes") {
        cfg.criterion = {CriterionKind::LbdAtMost, 2};
        PermPolicy p2(cfg, nullptr, false);
        p2.maybe_relax_core_threshold(100000, 0);
        CHECK(p2.core_lbd_threshold() == 2);

        cfg.criterion = {CriterionKind::SizeAtMost, 8};
        PermPolicy ps(cfg, nullptr, false);
        ps.maybe_relax_core_threshold(100000, 0);
        CHECK(ps.core_lbd_threshold() == 3); // store default, unrelaxed
    }
}

TEST_CASE("permanent-store limit gate") {
    PolicyConfig cfg;

    SUBCASE("no limit admits everything") {
        PermPolicy p(cfg, nullptr, false);
        CHECK(p.enforce_perm_limit(1u << 30) == PermLimitAction::Admit);
    }
    SUBCASE("freeze latches at the cap") {
        cfg.limit = {LimitKind::Freeze, 100, SavePredicate::None};
        PermPolicy p(cfg, nullptr, false);
        CHECK(p.enforce_perm_limit(99) == PermLimitAction::Admit);
        CHECK(p.enforce_perm_limit(100) == PermLimitAction::Reroute);
        // latched even if the store later shrinks
        CHECK(p.enforce_perm_limit(10) == PermLimitAction::Reroute);
    }
    SUBCASE("delete-half schemes trigger at the cap without latching") {
        cfg.limit = {LimitKind::DeleteHalfActivity, 100, SavePredicate::None};
        PermPolicy p(cfg, nullptr, false);
        CHECK(p.enforce_perm_limit(99) == PermLimitAction::Admit);
        CHECK(p.enforce_perm_limit(100) == PermLimitAction::DeleteHalfFirst);
        CHECK(p.enforce_perm_limit(50) == PermLimitAction::Admit);
    }
}
