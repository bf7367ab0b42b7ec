// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <set>

#include "cubereach/analyses.hpp"
#include "cubereach/compile.hpp"
#include "testutil.hpp"

using namespace cubereach;
using namespace cubereach::testutil;

TEST_CASE("one broadcast transition compiles to an entry, an exit and one helper") {
    RbnModel r({"q", "q2"}, {"a"}, {{0, RbnAction::Broadcast, 0, 1}});
    RbnToAsmsArtifact art = compile_rbn_to_asms(r);
    CHECK(art.target.state_count() == 3);
    CHECK(art.target.transitions().size() == 2);
    CHECK(art.target.letter_count() == 2);
    CHECK(art.target.transition(art.enter[0]).op == RegisterOp::Write);
    CHECK(art.target.transition(art.exit[0]).letter == art.idle);

    RbnModel empty({"q"}, {"a"}, {});
    RbnToAsmsArtifact none = compile_rbn_to_asms(empty);
    CHECK(none.target.state_count() == 1);
    CHECK(none.target.letter_count() == 2);
    CHECK(none.target.transitions().empty());
}

TEST_CASE("the compiled counter has one helper state per transition") {
    CounterFamily fam = gen_counter_rbn(3);
    RbnToAsmsArtifact art = compile_rbn_to_asms(fam.model);
    CHECK(fam.model.state_count() == 11);
    CHECK(fam.model.transitions().size() == 10);
    CHECK(art.target.state_count() == 21);
}

TEST_CASE("embedding is a bijection onto good configurations") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
        RbnModel r = random_rbn(rng);
        RbnToAsmsArtifact art = compile_rbn_to_asms(r);
        for (const MultiSet& c : enumerate_multisets(r.state_count(), 0, 3)) {
            AsmsConfig d = art.embed_config(c);
            CHECK(art.is_good(d));
            CHECK(art.decode_config(d) == c);
        }
        AsmsConfig off_register{MultiSet{}, 0};
        CHECK(art.is_good(off_register) == (art.idle == 0));
    }
}

TEST_CASE("cube translation preserves membership both ways") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
        RbnModel r = random_rbn(rng);
        RbnToAsmsArtifact art = compile_rbn_to_asms(r);
        Cube src_cube = random_cube(rng, r.state_count(), 4);
        AsmsCube tgt_cube = art.embed_cube(src_cube);
        for (int j = 0; j < 40; ++j) {
            MultiSet c = random_multiset(rng, r.state_count(), 8);
            CHECK(src_cube.contains(c) == tgt_cube.contains(art.embed_config(c)));
        }
    }
}

TEST_CASE("each source step replays as its pseudo-step word") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 40; ++i) {
        RbnModel r = random_rbn(rng);
        RbnToAsmsArtifact art = compile_rbn_to_asms(r);
        MultiSet c = random_multiset(rng, r.state_count(), 3);
        for (auto& [label, next] : rbn_labeled_successors(r, c)) {
            RbnTrace step{c, {{label, next}}};
            AsmsTrace word = encode_run(art, step);
            CHECK(replay(art.target, word).ok);
            CHECK(word.final_config() == art.embed_config(next));
            CHECK(word.steps.size() % 2 == 0);
        }
    }
}

TEST_CASE("normalization: canonical runs come back label-identical") {
    CounterFamily fam = gen_counter_rbn(2);
    RbnToAsmsArtifact art = compile_rbn_to_asms(fam.model);
    const RbnModel& m = fam.model;
    RbnSystem sys{&m};
    auto outcome = reaches(sys, ms(m, {{"tok", 4}, {"a1", 1}, {"a2", 1}}),
                           [&](const MultiSet& c) {
                               return c.count(st(m, "c2")) > 0;
                           });
    REQUIRE(outcome.witness);
    AsmsTrace canonical = encode_run(art, *outcome.witness);
    AsmsTrace renorm = normalize_asms_run(art, canonical);
    REQUIRE(renorm.steps.size() == canonical.steps.size());
    for (std::size_t i = 0; i < renorm.steps.size(); ++i)
        CHECK(renorm.steps[i].label == canonical.steps[i].label);
}

TEST_CASE("normalization: the empty run is already normal") {
    CounterFamily fam = gen_counter_rbn(1);
    RbnToAsmsArtifact art = compile_rbn_to_asms(fam.model);
    AsmsTrace empty{art.embed_config(ms(fam.model, {{"tok", 1}})), {}};
    CHECK(normalize_asms_run(art, empty).steps.empty());
    CHECK(decode_run(art, empty).steps.empty());
}

TEST_CASE("normalization splits an interleaving of two encodings") {
    CounterFamily fam = gen_counter_rbn(1);
    const RbnModel& m = fam.model;
    RbnToAsmsArtifact art = compile_rbn_to_asms(m);
    std::uint32_t t = *m.find_transition({st(m, "tok"), RbnAction::Broadcast,
                                          lt(m, "1"), st(m, "sent")});
    std::uint32_t t1 = *m.find_transition({st(m, "a1"), RbnAction::Receive,
                                           lt(m, "1"), st(m, "b1")});
    // two broadcasts of the same letter interleaved:
    // enter(t) enter(t) enter(t1) exit(t) exit(t) exit(t1)
    std::vector<std::uint32_t> labels{art.enter[t],  art.enter[t],
                                      art.enter[t1], art.exit[t],
                                      art.exit[t],   art.exit[t1]};
    AsmsTrace interleaved;
    interleaved.initial = art.embed_config(ms(m, {{"tok", 2}, {"a1", 1}}));
    AsmsConfig cur = interleaved.initial;
    for (std::uint32_t l : labels) {
        auto next = asms_step(art.target, cur, l);
        REQUIRE(next);
        cur = *next;
        interleaved.steps.push_back({l, cur});
    }
    REQUIRE(art.is_good(cur));

    AsmsTrace normal = normalize_asms_run(art, interleaved);
    CHECK(normal.initial == interleaved.initial);
    CHECK(normal.final_config() == interleaved.final_config());
    auto steps = pseudo_step_decomposition(art, normal);
    CHECK(steps.size() == 2);

    RbnTrace decoded = decode_run(art, normal);
    CHECK(decoded.steps.size() == 2);
    CHECK(replay(m, decoded).ok);
    CHECK(decoded.final_config() == ms(m, {{"sent", 2}, {"b1", 1}}));
}

TEST_CASE("normalization rejects runs with bad endpoints") {
    CounterFamily fam = gen_counter_rbn(1);
    RbnToAsmsArtifact art = compile_rbn_to_asms(fam.model);
    const RbnModel& m = fam.model;
    std::uint32_t t = *m.find_transition({st(m, "tok"), RbnAction::Broadcast,
                                          lt(m, "1"), st(m, "sent")});
    AsmsTrace half;
    half.initial = art.embed_config(ms(m, {{"tok", 1}}));
    auto mid = asms_step(art.target, half.initial, art.enter[t]);
    REQUIRE(mid);
    half.steps.push_back({art.enter[t], *mid});
    CHECK_THROWS_AS(normalize_asms_run(art, half), DomainError);

    AsmsTrace broken;
    broken.initial = art.embed_config(ms(m, {{"tok", 1}}));
    broken.steps.push_back({art.enter[t], art.embed_config(ms(m, {{"sent", 1}}))});
    CHECK_THROWS_AS(normalize_asms_run(art, broken), DomainError);
}

TEST_CASE("random good-to-good walks normalize and decode") {
    std::mt19937_64 rng(44);
    int produced = 0;
    while (produced < 30) {
        RbnModel r = random_rbn(rng, 4, 2, 5);
        bool has_broadcast = false;
        for (const RbnTransition& t : r.transitions())
            has_broadcast |= t.action == RbnAction::Broadcast;
        if (!has_broadcast) continue;
        RbnToAsmsArtifact art = compile_rbn_to_asms(r);
        MultiSet c0 = random_multiset(rng, r.state_count(), 2);
        auto walk = random_good_walk(art, c0, 12, rng);
        if (!walk) continue;
        ++produced;
        AsmsTrace normal = normalize_asms_run(art, *walk);
        CHECK(normal.initial == walk->initial);
        CHECK(normal.final_config() == walk->final_config());
        RbnTrace decoded = decode_run(art, normal);
        CHECK(replay(r, decoded).ok);
        CHECK(decoded.initial == art.decode_config(walk->initial));
        CHECK(decoded.final_config() ==
              art.decode_config(walk->final_config()));
    }
}

TEST_CASE("write handshake compiles to the documented shape") {
    AsmsModel p({"q", "q2"}, {"#", "a"},
                {{0, RegisterOp::Write, 1, 1}});
    AsmsToRbnArtifact art = compile_asms_to_rbn(p);
    CHECK(art.target.state_count() == 6); // q q2 # a a_bar q_a_q2
    CHECK(art.target.transitions().size() == 7);
    CHECK(art.target.letter_count() == 4); // Ch_a Ack_a Read_# Read_a

    AsmsModel reads_only({"q", "q2"}, {"#"}, {{0, RegisterOp::Read, 0, 1}});
    AsmsToRbnArtifact ro = compile_asms_to_rbn(reads_only);
    CHECK(ro.target.state_count() == 3);   // q q2 #
    CHECK(ro.target.transitions().size() == 2); // read receive + value loop
    CHECK(ro.target.letter_count() == 1);  // Read_#
}

TEST_CASE("write/read encodings replay and land on the embedding") {
    std::mt19937_64 rng(45);
    for (int i = 0; i < 40; ++i) {
        AsmsModel p = random_asms(rng);
        AsmsToRbnArtifact art = compile_asms_to_rbn(p);
        AsmsConfig c{random_multiset(rng, p.state_count(), 3),
                     static_cast<LetterId>(rng() % p.letter_count())};
        for (auto& [t, next] : asms_labeled_successors(p, c)) {
            AsmsTrace step{c, {{t, next}}};
            RbnTrace word = encode_run(art, step);
            CHECK(replay(art.target, word).ok);
            CHECK(word.final_config() == art.embed_config(next));
        }
    }
}

TEST_CASE("single-pair closure comparison on the choice example") {
    ChoiceAsms ex = gen_choice_asms();
    const AsmsModel& m = ex.model;
    AsmsToRbnArtifact art = compile_asms_to_rbn(m);
    AsmsConfig from{ms(m, {{"a1", 1}, {"b1", 1}, {"c1", 1}}), lt(m, "#")};
    AsmsConfig to{ms(m, {{"a2", 1}, {"b2", 1}, {"c1", 1}}), lt(m, "3")};

    AsmsSystem src_sys{&m};
    auto src_closure = post_star(src_sys, from);
    REQUIRE(src_closure.exhausted);
    bool in_source = src_closure.contains(to);

    RbnSystem tgt_sys{&art.target};
    auto tgt_closure = post_star(tgt_sys, art.embed_config(from));
    REQUIRE(tgt_closure.exhausted);
    bool in_target = tgt_closure.contains(art.embed_config(to));
    CHECK(in_source == in_target);
    CHECK_FALSE(in_source); // the register cannot read 3 while b2 still waits
}

TEST_CASE("asms runs decode from the handshake model") {
    std::mt19937_64 rng(46);
    int produced = 0;
    while (produced < 30) {
        AsmsModel p = random_asms(rng);
        AsmsToRbnArtifact art = compile_asms_to_rbn(p);
        AsmsConfig c0{random_multiset(rng, p.state_count(), 2),
                      static_cast<LetterId>(rng() % p.letter_count())};
        // random walk in the target, truncated at the last good config
        RbnTrace walk;
        walk.initial = art.embed_config(c0);
        MultiSet cur = walk.initial;
        std::size_t last_good = 0;
        for (int s = 0; s < 12; ++s) {
            auto succ = rbn_labeled_successors(art.target, cur);
            if (succ.empty()) break;
            auto& pick = succ[std::uniform_int_distribution<std::size_t>(
                0, succ.size() - 1)(rng)];
            cur = pick.second;
            walk.steps.push_back({pick.first, pick.second});
            if (art.is_good(cur)) last_good = walk.steps.size();
        }
        walk.steps.resize(last_good);
        if (walk.steps.empty()) continue;
        ++produced;
        AsmsTrace decoded = decode_run(art, walk);
        CHECK(replay(p, decoded).ok);
        CHECK(decoded.initial == c0);
        CHECK(decoded.final_config() ==
              art.decode_config(walk.final_config()));
    }
}

TEST_CASE("observation nets compile to announce-and-listen") {
    IoNetModel net({"p", "q", "p2"}, {{0, 1, 2}});
    IoToRbnArtifact art = compile_io_to_rbn(net);
    CHECK(art.target.state_count() == 3);
    CHECK(art.target.letter_count() == 3);
    CHECK(art.target.transitions().size() == 4); // 3 loops + 1 receive

    IoNetModel still({"p", "q"}, {});
    IoToRbnArtifact quiet = compile_io_to_rbn(still);
    RbnSystem sys{&quiet.target};
    for (const MultiSet& c : enumerate_multisets(2, 0, 3)) {
        auto ex = post_star(sys, c);
        CHECK(ex.configs.size() == 1);
    }
}

TEST_CASE("single observation equals one target step") {
    IoNetModel net({"p", "q", "p2"}, {{0, 1, 2}});
    IoToRbnArtifact art = compile_io_to_rbn(net);
    MultiSet from{{0, 1}, {1, 1}};
    auto io_next = io_step(net, from, 0);
    REQUIRE(io_next);
    IoTrace step{from, {{0, *io_next}}};
    RbnTrace encoded = encode_run(art, step);
    CHECK(encoded.final_config() == *io_next);

    // a broadcast with two receivers decodes to two observations
    IoNetModel net2({"p", "q", "p2"}, {{0, 1, 2}});
    IoToRbnArtifact art2 = compile_io_to_rbn(net2);
    MultiSet big{{0, 2}, {1, 1}};
    RbnStepLabel label{1 /* q's announce loop */, {{3, 2}}};
    auto tgt_next = rbn_step(art2.target, big, label);
    REQUIRE(tgt_next);
    RbnTrace t2{big, {{label, *tgt_next}}};
    IoTrace decoded = decode_run(art2, t2);
    CHECK(decoded.steps.size() == 2);
    CHECK(decoded.final_config() == *tgt_next);
}

TEST_CASE("observation steps are a special case of broadcast semantics") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 40; ++i) {
        IoNetModel net = random_io(rng);
        IoToRbnArtifact art = compile_io_to_rbn(net);
        const std::uint32_t n = static_cast<std::uint32_t>(net.state_count());
        MultiSet c = random_multiset(rng, net.state_count(), 3);
        for (std::uint32_t t = 0; t < net.transitions().size(); ++t) {
            auto io_next = io_step(net, c, t);
            RbnStepLabel label{net.transition(t).observed, {{n + t, 1}}};
            auto rbn_next = rbn_step(art.target, c, label);
            CHECK(io_next.has_value() == rbn_next.has_value());
            if (io_next && rbn_next) CHECK(*io_next == *rbn_next);
        }
    }
}

TEST_CASE("strong simulation holds exhaustively at small populations") {
    CounterFamily small = gen_counter_rbn(1);
    auto r1 = check_strong_simulation(compile_rbn_to_asms(small.model), 3);
    CHECK(r1.ok);

    AsmsModel trimmed({"a1", "a2", "b1", "b2"}, {"#", "1"},
                      {{0, RegisterOp::Write, 1, 1},
                       {2, RegisterOp::Read, 1, 3}});
    auto r2 = check_strong_simulation(compile_asms_to_rbn(trimmed), 3);
    CHECK(r2.ok);

    IoNetModel net({"p", "q", "p2"}, {{0, 1, 2}, {2, 2, 0}});
    auto r3 = check_strong_simulation(compile_io_to_rbn(net), 3);
    CHECK(r3.ok);
}

TEST_CASE("a corrupted artifact is caught by the harness") {
    CounterFamily small = gen_counter_rbn(1);
    RbnToAsmsArtifact art = compile_rbn_to_asms(small.model);
    // drop one exit transition from the target model
    std::vector<AsmsTransition> ts(art.target.transitions().begin(),
                                   art.target.transitions().end());
    std::uint32_t dropped = art.exit[0];
    ts.erase(ts.begin() + dropped);
    RbnToAsmsArtifact corrupt = art;
    corrupt.target = AsmsModel(
        std::vector<std::string>(art.target.state_names().begin(),
                                 art.target.state_names().end()),
        std::vector<std::string>(art.target.letter_names().begin(),
                                 art.target.letter_names().end()),
        std::move(ts));
    auto report = check_strong_simulation(corrupt, 2);
    CHECK_FALSE(report.ok);
    CHECK(report.counterexample.has_value());
    CHECK(report.missing_in_target);
}
