// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cubereach/analyses.hpp"

#include <algorithm>

namespace cubereach {

namespace {

template <class Model>
void check_disjoint_and_alphabet(const Model& leader, const Model& contributor) {
    for (const std::string& n : leader.state_names())
        if (contributor.find_state(n))
            throw DomainError("leader and contributor share state '" + n + "'");
    if (!std::equal(leader.letter_names().begin(), leader.letter_names().end(),
                    contributor.letter_names().begin(),
                    contributor.letter_names().end()))
        throw DomainError("leader and contributor must share one alphabet");
}

// Leader states first, then contributor states shifted by the leader count.
template <class Model, class Trans>
Model merge_models(const Model& leader, const Model& contributor) {
    std::vector<std::string> states(leader.state_names().begin(),
                                    leader.state_names().end());
    states.insert(states.end(), contributor.state_names().begin(),
                  contributor.state_names().end());
    std::vector<std::string> letters(leader.letter_names().begin(),
                                     leader.letter_names().end());
    std::vector<Trans> ts(leader.transitions().begin(),
                          leader.transitions().end());
    StateId shift = static_cast<StateId>(leader.state_count());
    for (Trans t : contributor.transitions()) {
        t.source += shift;
        t.target += shift;
        ts.push_back(t);
    }
    return Model(std::move(states), std::move(letters), std::move(ts));
}

// One process pinned to `pinned`, zero on the other leader states,
// contributors bounded as requested.
Cube leader_pattern_cube(std::size_t n_total, std::size_t n_leader,
                         StateId pinned, StateId contrib_init,
                         bool all_contributors_free) {
    std::vector<Count> lo(n_total, 0);
    std::vector<UBound> hi(n_total, UBound::of(0));
    lo[pinned] = 1;
    hi[pinned] = UBound::of(1);
    for (std::size_t q = n_leader; q < n_total; ++q)
        if (all_contributors_free || q == contrib_init) hi[q] = UBound::inf();
    return Cube(std::move(lo), std::move(hi));
}

} // namespace

RbnLeaderInstance leader_to_cube(const RbnLeaderProtocol& lp) {
    check_disjoint_and_alphabet(lp.leader, lp.contributor);
    RbnModel merged = merge_models<RbnModel, RbnTransition>(lp.leader,
                                                            lp.contributor);
    StateId shift = static_cast<StateId>(lp.leader.state_count());
    StateId contrib_init = lp.contrib_init + shift;
    Cube src = leader_pattern_cube(merged.state_count(),
                                   lp.leader.state_count(), lp.leader_init,
                                   contrib_init, false);
    Cube dst = leader_pattern_cube(merged.state_count(),
                                   lp.leader.state_count(), lp.leader_final,
                                   contrib_init, true);
    return {std::move(merged), std::move(src), std::move(dst), lp.leader_init,
            lp.leader_final, contrib_init};
}

AsmsLeaderInstance leader_to_cube(const AsmsLeaderProtocol& lp) {
    check_disjoint_and_alphabet(lp.leader, lp.contributor);
    AsmsModel merged = merge_models<AsmsModel, AsmsTransition>(lp.leader,
                                                               lp.contributor);
    StateId shift = static_cast<StateId>(lp.leader.state_count());
    StateId contrib_init = lp.contrib_init + shift;
    AsmsCube src{leader_pattern_cube(merged.state_count(),
                                     lp.leader.state_count(), lp.leader_init,
                                     contrib_init, false),
                 lp.reg_init};
    AsmsCube dst{leader_pattern_cube(merged.state_count(),
                                     lp.leader.state_count(), lp.leader_final,
                                     contrib_init, true),
                 lp.reg_final};
    return {std::move(merged), std::move(src), std::move(dst), lp.leader_init,
            lp.leader_final, contrib_init};
}

LeaderReachReport<RbnTrace> leader_reach_bounded(const RbnLeaderProtocol& lp,
                                                 Count k_max,
                                                 const ExploreOptions& opt) {
    RbnLeaderInstance inst = leader_to_cube(lp);
    RbnSystem sys{&inst.merged, opt.successor_cap};
    LeaderReachReport<RbnTrace> report;
    for (Count k = 1; k <= k_max; ++k) {
        MultiSet init = MultiSet::singleton(inst.leader_init) +
                        MultiSet::singleton(inst.contrib_init, k);
        auto outcome = reaches(
            sys, init,
            [&](const MultiSet& c) { return c.count(inst.leader_final) > 0; },
            opt);
        if (outcome.status == SearchStatus::Found) {
            report.verdict = Verdict::Yes;
            report.k = k;
            report.witness = std::move(outcome.witness);
            return report;
        }
    }
    report.verdict = Verdict::BoundedNo;
    return report;
}

LeaderReachReport<AsmsTrace> leader_reach_bounded(const AsmsLeaderProtocol& lp,
                                                  Count k_max,
                                                  const ExploreOptions& opt) {
    AsmsLeaderInstance inst = leader_to_cube(lp);
    AsmsSystem sys{&inst.merged, opt.successor_cap};
    LeaderReachReport<AsmsTrace> report;
    for (Count k = 1; k <= k_max; ++k) {
        AsmsConfig init{MultiSet::singleton(inst.leader_init) +
                            MultiSet::singleton(inst.contrib_init, k),
                        lp.reg_init};
        auto outcome = reaches(sys, init,
                               [&](const AsmsConfig& c) {
                                   return c.processes.count(inst.leader_final) >
                                              0 &&
                                          c.reg == lp.reg_final;
                               },
                               opt);
        if (outcome.status == SearchStatus::Found) {
            report.verdict = Verdict::Yes;
            report.k = k;
            report.witness = std::move(outcome.witness);
            return report;
        }
    }
    report.verdict = Verdict::BoundedNo;
    return report;
}

namespace {

void check_crp_shape(const Cube& dst, CrpVariant variant) {
    for (StateId q = 0; q < dst.state_count(); ++q) {
        switch (variant) {
            case CrpVariant::GeqOne:
                if (dst.lower(q) > 1 || !dst.upper(q).is_inf())
                    throw DomainError(
                        "destination cube must have lowers in {0,1} and "
                        "infinite uppers");
                break;
            case CrpVariant::GeqOneEqZero:
                if (dst.lower(q) > 1 ||
                    (!dst.upper(q).is_inf() && dst.upper(q).value() != 0))
                    throw DomainError(
                        "destination cube must have lowers in {0,1} and "
                        "uppers in {0,inf}");
                break;
            case CrpVariant::General: break;
        }
    }
}

Cube support_cube(std::size_t n_states, std::span<const StateId> support) {
    std::vector<Count> lo(n_states, 0);
    std::vector<UBound> hi(n_states, UBound::of(0));
    for (StateId q : support) {
        if (q >= n_states) throw DomainError("support state outside the model");
        hi[q] = UBound::inf();
    }
    return Cube(std::move(lo), std::move(hi));
}

} // namespace

CrpReport<RbnTrace> crp_check(const RbnModel& m,
                              std::span<const StateId> src_support,
                              const Cube& dst, CrpVariant variant, Count k_max,
                              const ExploreOptions& opt) {
    if (dst.state_count() != m.state_count())
        throw DomainError("cube universe differs from the model state set");
    check_crp_shape(dst, variant);
    CrpReport<RbnTrace> report;

    if (variant == CrpVariant::GeqOne) {
        // a target no population can cover at all refutes the instance
        std::vector<bool> coverable = rbn_coverability_saturation(m, src_support);
        for (StateId q = 0; q < dst.state_count(); ++q)
            if (dst.lower(q) == 1 && !coverable[q]) {
                report.verdict = Verdict::No;
                report.note = "state " + m.state_name(q) +
                              " is not coverable from the initial support";
                return report;
            }
    }

    Cube src = support_cube(m.state_count(), src_support);
    auto cube_report = cube_reach_bounded(m, src, dst, SizeRange{0, k_max},
                                          k_max, opt);
    report.verdict = cube_report.verdict == Verdict::Yes ? Verdict::Yes
                                                         : Verdict::BoundedNo;
    report.source = std::move(cube_report.source);
    report.witness = std::move(cube_report.witness);
    report.note = std::move(cube_report.note);
    return report;
}

CrpReport<IoTrace> crp_check(const IoNetModel& m,
                             std::span<const StateId> src_support,
                             const Cube& dst, CrpVariant variant, Count k_max,
                             const ExploreOptions& opt) {
    IoToRbnArtifact art = compile_io_to_rbn(m);
    CrpReport<RbnTrace> inner = crp_check(art.target, src_support,
                                          art.embed_cube(dst), variant, k_max,
                                          opt);
    CrpReport<IoTrace> report;
    report.verdict = inner.verdict;
    report.source = std::move(inner.source);
    report.note = std::move(inner.note);
    if (inner.witness) report.witness = decode_run(art, *inner.witness);
    return report;
}

namespace {

template <class Check>
CutoffReport cutoff_scan_core(Count k_lo, Count k_hi, std::size_t window,
                              Check&& check) {
    CutoffReport report;
    report.window = window;
    for (Count k = k_lo; k <= k_hi; ++k) {
        CutoffEntry entry;
        entry.k = k;
        try {
            entry.almost_sure = check(k);
        } catch (const ResourceLimitError& e) {
            entry.error = e.what();
        }
        report.entries.push_back(std::move(entry));
    }
    // longest agreeing suffix of resolved verdicts
    std::size_t run = 0;
    std::optional<bool> value;
    for (auto it = report.entries.rbegin(); it != report.entries.rend(); ++it) {
        if (!it->almost_sure) break;
        if (!value) value = *it->almost_sure;
        if (*it->almost_sure != *value) break;
        ++run;
    }
    if (value && run >= window && window > 0) {
        report.polarity = value;
        report.stabilization_k =
            report.entries[report.entries.size() - run].k;
    }
    return report;
}

} // namespace

CutoffReport cutoff_scan(const RbnModel& m, StateId q_init, StateId q_target,
                         Count k_lo, Count k_hi, std::size_t window,
                         const ExploreOptions& opt) {
    return cutoff_scan_core(k_lo, k_hi, window, [&](Count k) {
        return almost_sure_cover_fixed_k(m, q_init, q_target, k, opt);
    });
}

CutoffReport cutoff_scan(const AsmsModel& m, StateId q_init, StateId q_target,
                         Count k_lo, Count k_hi, std::size_t window,
                         LetterId reg, const ExploreOptions& opt) {
    return cutoff_scan_core(k_lo, k_hi, window, [&](Count k) {
        return almost_sure_cover_fixed_k(m, q_init, q_target, k, reg, opt);
    });
}

CounterFamily gen_counter_rbn(std::size_t n) {
    if (n == 0) throw DomainError("counter family needs at least one stage");
    std::vector<std::string> states{"tok", "sent"};
    std::vector<std::string> letters;
    for (std::size_t i = 1; i <= n + 1; ++i)
        letters.push_back(std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) {
        states.push_back("a" + std::to_string(i));
        states.push_back("b" + std::to_string(i));
        states.push_back("c" + std::to_string(i));
    }
    auto a = [](std::size_t i) { return static_cast<StateId>(2 + 3 * (i - 1)); };
    auto b = [&](std::size_t i) { return a(i) + 1; };
    auto c = [&](std::size_t i) { return a(i) + 2; };
    auto letter = [](std::size_t i) { return static_cast<LetterId>(i - 1); };

    std::vector<RbnTransition> ts;
    ts.push_back({0, RbnAction::Broadcast, letter(1), 1}); // tok -> sent
    for (std::size_t i = 1; i <= n; ++i) {
        ts.push_back({a(i), RbnAction::Receive, letter(i), b(i)});
        ts.push_back({b(i), RbnAction::Receive, letter(i), c(i)});
        ts.push_back({c(i), RbnAction::Broadcast, letter(i + 1), a(i)});
    }
    RbnModel model(std::move(states), std::move(letters), std::move(ts));

    std::size_t total = model.state_count();
    std::vector<Count> lo0(total, 0);
    std::vector<UBound> hi0(total, UBound::of(0));
    hi0[0] = UBound::inf(); // tok
    for (std::size_t i = 1; i <= n; ++i) {
        lo0[a(i)] = 1;
        hi0[a(i)] = UBound::of(1);
    }
    Cube c0(std::move(lo0), std::move(hi0));
    Cube cf = Cube::universal(total).with_bounds(c(n), 1, UBound::inf());
    return {std::move(model), std::move(c0), std::move(cf), 0, c(n)};
}

ChoiceAsms gen_choice_asms() {
    std::vector<std::string> states{"a1", "a2", "a3", "a4", "b1", "b2",
                                    "b3", "c1", "c2", "c3"};
    std::vector<std::string> letters{"#", "1", "2", "3", "4"};
    const StateId a1 = 0, a2 = 1, a3 = 2, a4 = 3, b1 = 4, b2 = 5, b3 = 6,
                  c1 = 7, c2 = 8, c3 = 9;
    const LetterId l1 = 1, l2 = 2, l3 = 3, l4 = 4;
    std::vector<AsmsTransition> ts{
        {a1, RegisterOp::Write, l1, a2}, {a1, RegisterOp::Write, l2, a2},
        {a2, RegisterOp::Read, l3, a3},  {a3, RegisterOp::Read, l4, a4},
        {b1, RegisterOp::Read, l1, b2},  {b2, RegisterOp::Write, l3, b3},
        {c1, RegisterOp::Read, l2, c2},  {c2, RegisterOp::Write, l4, c3},
    };
    AsmsModel model(std::move(states), std::move(letters), std::move(ts));

    std::size_t total = model.state_count();
    std::vector<Count> lo(total, 0);
    std::vector<UBound> hi(total, UBound::of(0));
    lo[a1] = 1;
    hi[a1] = UBound::of(1);
    hi[b1] = UBound::inf();
    hi[c1] = UBound::inf();
    AsmsCube src{Cube(std::move(lo), std::move(hi)), 0};
    // reaching a4 requires reading 4, which leaves 4 in the register
    AsmsCube dst{Cube::universal(total).with_bounds(a4, 1, UBound::inf()), l4};
    return {std::move(model), std::move(src), std::move(dst), a1, a4, b1, c1};
}

} // namespace cubereach
