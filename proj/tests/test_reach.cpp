// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <set>

#include "cubereach/analyses.hpp"
#include "cubereach/reach.hpp"
#include "testutil.hpp"

using namespace cubereach;
using namespace cubereach::testutil;

TEST_CASE("forward closure of a lone token") {
    CounterFamily fam = gen_counter_rbn(3);
    RbnSystem sys{&fam.model};
    auto ex = post_star(sys, ms(fam.model, {{"tok", 1}}));
    CHECK(ex.exhausted);
    std::set<MultiSet> reached(ex.configs.begin(), ex.configs.end());
    CHECK(reached == std::set<MultiSet>{ms(fam.model, {{"tok", 1}}),
                                        ms(fam.model, {{"sent", 1}})});
}

TEST_CASE("a configuration with no enabled step closes to itself") {
    CounterFamily fam = gen_counter_rbn(2);
    RbnSystem sys{&fam.model};
    auto ex = post_star(sys, ms(fam.model, {{"a1", 2}}));
    CHECK(ex.exhausted);
    CHECK(ex.configs.size() == 1);
}

TEST_CASE("a single writer can write either value, never both") {
    ChoiceAsms ex = gen_choice_asms();
    const AsmsModel& m = ex.model;
    AsmsSystem sys{&m};
    auto closure = post_star(sys, {ms(m, {{"a1", 1}}), lt(m, "#")});
    CHECK(closure.exhausted);
    std::set<AsmsConfig> reached(closure.configs.begin(),
                                 closure.configs.end());
    CHECK(reached.count({ms(m, {{"a2", 1}}), lt(m, "1")}) == 1);
    CHECK(reached.count({ms(m, {{"a2", 1}}), lt(m, "2")}) == 1);
    for (const AsmsConfig& c : reached)
        CHECK(c.processes.count(st(m, "a3")) == 0);
}

TEST_CASE("closure agrees with the label-enumeration oracle") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 25; ++i) {
        RbnModel m = random_rbn(rng);
        MultiSet c0 = random_multiset(rng, m.state_count(), 2);
        RbnSystem sys{&m};
        auto ex = post_star(sys, c0);
        REQUIRE(ex.exhausted);
        std::set<MultiSet> got(ex.configs.begin(), ex.configs.end());
        CHECK(got == oracle_rbn_post_star(m, c0));
    }
}

TEST_CASE("witness search distinguishes exhaustion from cap hits") {
    CounterFamily fam = gen_counter_rbn(3);
    const RbnModel& m = fam.model;
    RbnSystem sys{&m};
    StateId c1 = st(m, "c1");

    auto found = reaches(sys, ms(m, {{"tok", 2}, {"a1", 1}}),
                         [&](const MultiSet& c) { return c.count(c1) > 0; });
    REQUIRE(found.status == SearchStatus::Found);
    REQUIRE(found.witness);
    CHECK(found.witness->steps.size() == 2);
    std::size_t transitions = 0;
    for (const auto& step : found.witness->steps) {
        transitions += 1;
        for (const auto& [idx, mult] : step.label.receivers)
            transitions += mult;
    }
    CHECK(transitions == 4);
    CHECK(replay(m, *found.witness).ok);

    // already satisfied: empty witness
    auto trivial = reaches(sys, ms(m, {{"c1", 1}}),
                           [&](const MultiSet& c) { return c.count(c1) > 0; });
    REQUIRE(trivial.status == SearchStatus::Found);
    CHECK(trivial.witness->steps.empty());

    // one token is not enough, and the search can prove it
    auto missing = reaches(sys, ms(m, {{"tok", 1}, {"a1", 1}}),
                           [&](const MultiSet& c) { return c.count(c1) > 0; });
    CHECK(missing.status == SearchStatus::Exhausted);

    ExploreOptions tiny;
    tiny.max_configs = 2;
    auto capped = reaches(sys, ms(m, {{"tok", 2}, {"a1", 1}}),
                          [&](const MultiSet& c) { return c.count(c1) > 0; },
                          tiny);
    CHECK(capped.status == SearchStatus::CapHit);
}

TEST_CASE("witnesses always replay") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 30; ++i) {
        RbnModel m = random_rbn(rng);
        MultiSet c0 = random_multiset(rng, m.state_count(), 2);
        StateId target = static_cast<StateId>(rng() % m.state_count());
        RbnSystem sys{&m};
        auto outcome = reaches(sys, c0, [&](const MultiSet& c) {
            return c.count(target) > 0;
        });
        if (outcome.status == SearchStatus::Found) {
            CHECK(replay(m, *outcome.witness).ok);
            CHECK(outcome.witness->final_config().count(target) > 0);
        }
    }
}

TEST_CASE("results do not depend on the thread count") {
    CounterFamily fam = gen_counter_rbn(2);
    const RbnModel& m = fam.model;
    RbnSystem sys{&m};
    ExploreOptions serial, parallel;
    parallel.threads = 4;
    MultiSet c0 = ms(m, {{"tok", 4}, {"a1", 1}, {"a2", 1}});
    auto a = post_star(sys, c0, serial);
    auto b = post_star(sys, c0, parallel);
    CHECK(a.configs == b.configs);
    StateId c2 = st(m, "c2");
    auto wa = reaches(sys, c0,
                      [&](const MultiSet& c) { return c.count(c2) > 0; },
                      serial);
    auto wb = reaches(sys, c0,
                      [&](const MultiSet& c) { return c.count(c2) > 0; },
                      parallel);
    REQUIRE(wa.witness);
    REQUIRE(wb.witness);
    CHECK(*wa.witness == *wb.witness);
}

TEST_CASE("cube reachability grades its verdicts") {
    CounterFamily fam = gen_counter_rbn(1);
    const RbnModel& m = fam.model;

    // pinning the token pool makes the source finite, so no is provable
    Cube src_two = fam.c0.with_bounds(st(m, "tok"), 2, UBound::of(2));
    auto yes = cube_reach_bounded(m, src_two, fam.cf, {0, 3}, 3);
    CHECK(yes.verdict == Verdict::Yes);
    REQUIRE(yes.witness);
    CHECK(replay(m, *yes.witness).ok);

    Cube src_one = fam.c0.with_bounds(st(m, "tok"), 1, UBound::of(1));
    CHECK(cube_reach_bounded(m, src_one, fam.cf, {0, 2}, 2).verdict ==
          Verdict::No);

    // an unbounded source never refutes conclusively
    CHECK(cube_reach_bounded(m, fam.c0, fam.cf, {0, 2}, 1).verdict ==
          Verdict::BoundedNo);

    // source equal to destination: empty witness
    Cube point = Cube::exact(ms(m, {{"a1", 1}}), m.state_count());
    auto same = cube_reach_bounded(m, point, point, {0, 4}, 4);
    CHECK(same.verdict == Verdict::Yes);
    CHECK(same.witness->steps.empty());

    // empty source within bounds
    auto empty = cube_reach_bounded(m, src_two, fam.cf, {0, 1}, 1);
    CHECK(empty.verdict == Verdict::BoundedNo);
    CHECK(!empty.note.empty());
}

TEST_CASE("the single-writer example is a bounded negative") {
    ChoiceAsms ex = gen_choice_asms();
    auto report = cube_reach_bounded(ex.model, ex.c, ex.c_prime, {0, 7}, 3);
    CHECK(report.verdict == Verdict::BoundedNo);

    AsmsCube two_writers{ex.c.bounds.with_bounds(ex.writer_entry, 2,
                                                 UBound::of(2)),
                         ex.c.reg};
    auto control = cube_reach_bounded(ex.model, two_writers, ex.c_prime,
                                      {0, 8}, 3);
    CHECK(control.verdict == Verdict::Yes);
}

TEST_CASE("almost-sure coverability on tiny gadgets") {
    // q0 -!a-> q1 is the only transition: always almost-sure
    RbnModel always({"q0", "q1"}, {"a"}, {{0, RbnAction::Broadcast, 0, 1}});
    for (Count k = 1; k <= 3; ++k)
        CHECK(almost_sure_cover_fixed_k(always, 0, 1, k));

    // an escape into a dead state breaks it
    RbnModel escape({"q0", "q1", "dead"}, {"a"},
                    {{0, RbnAction::Broadcast, 0, 1},
                     {0, RbnAction::Broadcast, 0, 2}});
    CHECK_FALSE(almost_sure_cover_fixed_k(escape, 0, 1, 1));

    ExploreOptions tiny;
    tiny.max_configs = 1;
    CHECK_THROWS_AS(almost_sure_cover_fixed_k(always, 0, 1, 2, tiny),
                    ResourceLimitError);
}

TEST_CASE("almost-sure checker agrees with the per-node forward oracle") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 20; ++i) {
        RbnModel m = random_rbn(rng);
        StateId qi = static_cast<StateId>(rng() % m.state_count());
        StateId qf = static_cast<StateId>(rng() % m.state_count());
        for (Count k = 1; k <= 3; ++k)
            CHECK(almost_sure_cover_fixed_k(m, qi, qf, k) ==
                  oracle_almost_sure_rbn(m, qi, qf, k));
    }
}

TEST_CASE("saturation matches the definition on the counter family") {
    CounterFamily fam = gen_counter_rbn(3);
    const RbnModel& m = fam.model;
    std::vector<StateId> all_init{st(m, "tok"), st(m, "a1"), st(m, "a2"),
                               st(m, "a3")};
    CHECK(saturate_coverable_rbn(m, all_init, st(m, "c3")));
    std::vector<StateId> just_target{st(m, "c3")};
    CHECK(saturate_coverable_rbn(m, just_target, st(m, "c3")));
    std::vector<StateId> no_token{st(m, "a1"), st(m, "a2"), st(m, "a3")};
    CHECK_FALSE(saturate_coverable_rbn(m, no_token, st(m, "b1")));
}

TEST_CASE("saturation agrees with brute-force coverability") {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 25; ++i) {
        RbnModel m = random_rbn(rng, 4, 3, 6);
        std::vector<StateId> support;
        for (StateId q = 0; q < m.state_count(); ++q)
            if (rng() % 2) support.push_back(q);
        if (support.empty()) support.push_back(0);
        for (StateId target = 0; target < m.state_count(); ++target)
            CHECK(saturate_coverable_rbn(m, support, target) ==
                  oracle_rbn_coverable(m, support, target, 6));
    }
}
