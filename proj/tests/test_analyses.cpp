// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "cubereach/analyses.hpp"
#include "testutil.hpp"

using namespace cubereach;
using namespace cubereach::testutil;

namespace {

// The choice example split into a leader (the writer chain) and one
// contributor protocol whose entry state fans out to the two branches by
// reading the idle letter.
AsmsLeaderProtocol choice_leader_protocol(bool leader_self_loop) {
    std::vector<std::string> letters{"#", "1", "2", "3", "4"};
    std::vector<AsmsTransition> leader_ts{
        {0, RegisterOp::Write, 1, 1}, {0, RegisterOp::Write, 2, 1},
        {1, RegisterOp::Read, 3, 2},  {2, RegisterOp::Read, 4, 3},
    };
    if (leader_self_loop)
        leader_ts.push_back({0, RegisterOp::Write, 1, 0}); // write 1, stay
    AsmsModel leader({"a1", "a2", "a3", "a4"}, letters, std::move(leader_ts));
    AsmsModel contributor({"s", "b1", "b2", "b3", "c1", "c2", "c3"}, letters,
                          {{0, RegisterOp::Read, 0, 1}, // s -> b1 on idle
                           {0, RegisterOp::Read, 0, 4}, // s -> c1 on idle
                           {1, RegisterOp::Read, 1, 2},
                           {2, RegisterOp::Write, 3, 3},
                           {4, RegisterOp::Read, 2, 5},
                           {5, RegisterOp::Write, 4, 6}});
    return {std::move(leader), std::move(contributor), 0, 3, 0, 0, 4};
}

} // namespace

TEST_CASE("merged leader instances have the documented bound pattern") {
    AsmsLeaderProtocol lp = choice_leader_protocol(false);
    AsmsLeaderInstance inst = leader_to_cube(lp);
    std::size_t n_leader = 4, n_total = inst.merged.state_count();
    CHECK(n_total == 11);

    for (StateId q = 0; q < n_leader; ++q) {
        CHECK(inst.src.bounds.lower(q) == (q == inst.leader_init ? 1 : 0));
        CHECK(inst.src.bounds.upper(q) ==
              UBound::of(q == inst.leader_init ? 1 : 0));
        CHECK(inst.dst.bounds.lower(q) == (q == inst.leader_final ? 1 : 0));
        CHECK(inst.dst.bounds.upper(q) ==
              UBound::of(q == inst.leader_final ? 1 : 0));
    }
    for (StateId q = static_cast<StateId>(n_leader); q < n_total; ++q) {
        CHECK(inst.src.bounds.lower(q) == 0);
        CHECK(inst.dst.bounds.lower(q) == 0);
        CHECK(inst.dst.bounds.upper(q).is_inf());
        CHECK(inst.src.bounds.upper(q) ==
              (q == inst.contrib_init ? UBound::inf() : UBound::of(0)));
    }
    CHECK(inst.src.reg == 0);
    CHECK(inst.dst.reg == 4);

    // overlapping state names are rejected
    AsmsLeaderProtocol clash = choice_leader_protocol(false);
    clash.contributor = clash.leader;
    CHECK_THROWS_AS(leader_to_cube(clash), DomainError);
}

TEST_CASE("an rbn leader instance validates the same pattern") {
    RbnModel leader({"L0", "L1"}, {"go"}, {{0, RbnAction::Broadcast, 0, 1}});
    RbnModel contributor({"s", "s2"}, {"go"}, {{0, RbnAction::Receive, 0, 1}});
    RbnLeaderInstance inst = leader_to_cube({leader, contributor, 0, 1, 0});
    CHECK(inst.merged.state_count() == 4);
    CHECK(inst.src.bounds.lower(inst.leader_init) == 1);
    CHECK(inst.src.bounds.upper(inst.contrib_init).is_inf());
    auto report = leader_reach_bounded({leader, contributor, 0, 1, 0}, 2);
    CHECK(report.verdict == Verdict::Yes);
    CHECK(report.k == 1);
}

TEST_CASE("the one-writer leader cannot finish, the self-loop variant can") {
    auto stuck = leader_reach_bounded(choice_leader_protocol(false), 3);
    CHECK(stuck.verdict == Verdict::BoundedNo);

    auto report = leader_reach_bounded(choice_leader_protocol(true), 3);
    CHECK(report.verdict == Verdict::Yes);
    CHECK(report.k == 2);
    REQUIRE(report.witness);
    CHECK(report.witness->initial.processes.count(4 /* merged s */) == 2);
}

TEST_CASE("a contributor-free leader runs alone") {
    AsmsModel leader({"L0", "L1"}, {"#", "x"},
                     {{0, RegisterOp::Write, 1, 1}});
    AsmsModel contributor({"s"}, {"#", "x"}, {});
    auto report = leader_reach_bounded({leader, contributor, 0, 1, 0, 0, 1}, 2);
    CHECK(report.verdict == Verdict::Yes);
}

TEST_CASE("cardinality reachability on the counter family") {
    CounterFamily fam = gen_counter_rbn(2);
    const RbnModel& m = fam.model;
    std::vector<StateId> support{st(m, "tok"), st(m, "a1"), st(m, "a2")};
    Cube dst = Cube::universal(m.state_count())
                   .with_bounds(st(m, "c2"), 1, UBound::inf());

    auto yes = crp_check(m, support, dst, CrpVariant::GeqOne, 6);
    CHECK(yes.verdict == Verdict::Yes);
    REQUIRE(yes.witness);
    CHECK(replay(m, *yes.witness).ok);

    // all-zero lower bounds are vacuously reachable
    auto vac = crp_check(m, support, Cube::universal(m.state_count()),
                         CrpVariant::GeqOne, 3);
    CHECK(vac.verdict == Verdict::Yes);

    // saturation refutes a target with no token source
    std::vector<StateId> no_token{st(m, "a1")};
    auto no = crp_check(m, no_token, dst, CrpVariant::GeqOne, 5);
    CHECK(no.verdict == Verdict::No);

    CHECK_THROWS_AS(crp_check(m, support, dst.with_bounds(0, 2, UBound::inf()),
                              CrpVariant::GeqOne, 3),
                    DomainError);
}

TEST_CASE("cardinality reachability agrees with brute force on random models") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 20; ++i) {
        RbnModel m = random_rbn(rng, 5, 3, 6);
        std::vector<StateId> support;
        for (StateId q = 0; q < m.state_count(); ++q)
            if (rng() % 2) support.push_back(q);
        if (support.empty()) support.push_back(0);
        StateId target = static_cast<StateId>(rng() % m.state_count());
        Cube dst = Cube::universal(m.state_count())
                       .with_bounds(target, 1, UBound::inf());
        auto report = crp_check(m, support, dst, CrpVariant::GeqOne, 6);
        bool brute = oracle_rbn_coverable(m, support, target, 6);
        CHECK((report.verdict == Verdict::Yes) == brute);
        if (!brute) CHECK(report.verdict == Verdict::No);
    }
}

TEST_CASE("observation nets answer through their compilation") {
    IoNetModel net({"p", "q", "p2"}, {{0, 1, 2}});
    Cube dst = Cube::universal(3).with_bounds(2, 1, UBound::inf());
    std::vector<StateId> only_p{0};
    auto report = crp_check(net, only_p, dst, CrpVariant::GeqOne, 4);
    CHECK(report.verdict == Verdict::No); // the observed state is never filled

    std::vector<StateId> both{0, 1};
    auto yes = crp_check(net, both, dst, CrpVariant::GeqOne, 4);
    CHECK(yes.verdict == Verdict::Yes);
    REQUIRE(yes.witness);
    CHECK(replay(net, *yes.witness).ok);
}

TEST_CASE("cut-off scans report stabilization with polarity") {
    RbnModel always({"q0", "q1"}, {"a"}, {{0, RbnAction::Broadcast, 0, 1}});
    CutoffReport pos = cutoff_scan(always, 0, 1, 1, 4, 2);
    CHECK(pos.entries.size() == 4);
    REQUIRE(pos.stabilization_k);
    CHECK(*pos.stabilization_k == 1);
    CHECK(*pos.polarity == true);
    CHECK(pos.empirical);

    RbnModel escape({"q0", "q1", "dead"}, {"a"},
                    {{0, RbnAction::Broadcast, 0, 1},
                     {0, RbnAction::Broadcast, 0, 2}});
    CutoffReport neg = cutoff_scan(escape, 0, 1, 1, 4, 2);
    REQUIRE(neg.stabilization_k);
    CHECK(*neg.polarity == false);
}

TEST_CASE("a cooperation threshold shows up in the scan") {
    // the announcer keeps its state; listeners need a peer to advance
    RbnModel coop({"q0", "s1", "s2", "goal"}, {"m"},
                  {{0, RbnAction::Broadcast, 0, 0},
                   {0, RbnAction::Receive, 0, 1},
                   {1, RbnAction::Receive, 0, 2},
                   {2, RbnAction::Receive, 0, 3}});
    CutoffReport report = cutoff_scan(coop, 0, 3, 1, 4, 2);
    REQUIRE(report.entries.size() == 4);
    CHECK_FALSE(*report.entries[0].almost_sure); // alone: nobody to observe
    for (std::size_t i = 1; i < 4; ++i) CHECK(*report.entries[i].almost_sure);
    REQUIRE(report.stabilization_k);
    CHECK(*report.stabilization_k == 2);
    CHECK(*report.polarity == true);

    // and it matches the per-population oracle
    for (Count k = 1; k <= 4; ++k)
        CHECK(*report.entries[k - 1].almost_sure ==
              oracle_almost_sure_rbn(coop, 0, 3, k));
}

TEST_CASE("scan entries record per-population resource errors") {
    RbnModel always({"q0", "q1"}, {"a"}, {{0, RbnAction::Broadcast, 0, 1}});
    ExploreOptions tiny;
    tiny.max_configs = 2;
    CutoffReport report = cutoff_scan(always, 0, 1, 1, 3, 2, tiny);
    CHECK(!report.entries[2].almost_sure);
    CHECK(!report.entries[2].error.empty());
}

TEST_CASE("the counter generator matches its closed form") {
    CHECK_THROWS_AS(gen_counter_rbn(0), DomainError);

    CounterFamily one = gen_counter_rbn(1);
    CHECK(one.model.state_count() == 5);
    CHECK(one.model.transitions().size() == 4);

    CounterFamily three = gen_counter_rbn(3);
    CHECK(three.model.state_count() == 11);
    CHECK(three.model.transitions().size() == 10);
    CHECK(three.c0.lower(st(three.model, "a2")) == 1);
    CHECK(three.c0.upper(st(three.model, "tok")).is_inf());
    CHECK(three.cf.lower(st(three.model, "c3")) == 1);

    // the two-stage family needs exactly four tokens
    CounterFamily two = gen_counter_rbn(2);
    const RbnModel& m = two.model;
    RbnSystem sys{&m};
    StateId c2 = st(m, "c2");
    auto covers = [&](Count tok) {
        MultiSet init = ms(m, {{"a1", 1}, {"a2", 1}}) +
                        MultiSet::singleton(two.tok, tok);
        return reaches(sys, init, [&](const MultiSet& c) {
                   return c.count(c2) > 0;
               }).status == SearchStatus::Found;
    };
    CHECK_FALSE(covers(1));
    CHECK_FALSE(covers(2));
    CHECK_FALSE(covers(3));
    CHECK(covers(4));
}

TEST_CASE("the choice generator matches its description") {
    ChoiceAsms ex = gen_choice_asms();
    const AsmsModel& m = ex.model;
    CHECK(m.state_count() == 10);
    CHECK(m.letter_count() == 5);
    CHECK(m.find_transition({st(m, "a1"), RegisterOp::Write, lt(m, "1"),
                             st(m, "a2")}));
    CHECK(m.find_transition({st(m, "a1"), RegisterOp::Write, lt(m, "2"),
                             st(m, "a2")}));
    CHECK(ex.c.bounds.lower(st(m, "a1")) == 1);
    CHECK(ex.c.bounds.upper(st(m, "a1")) == UBound::of(1));
    CHECK(ex.c.bounds.upper(st(m, "b1")).is_inf());

    // the writer's goal stays uncoverable at small populations
    AsmsSystem sys{&m};
    StateId a4 = st(m, "a4");
    for (const MultiSet& procs :
         enumerate_cube_members(ex.c.bounds, 0, 5, 4)) {
        auto outcome = reaches(sys, {procs, ex.c.reg},
                               [&](const AsmsConfig& c) {
                                   return c.processes.count(a4) > 0;
                               });
        CHECK(outcome.status == SearchStatus::Exhausted);
    }
}
