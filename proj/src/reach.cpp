// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cubereach/reach.hpp"

#include <algorithm>

namespace cubereach {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::BoundedNo: return "bounded-no";
    }
    return "?";
}

namespace {

// The tried sources cover the whole cube iff no component is infinite and
// the size window spans every member size.
bool cube_fully_covered(const Cube& src, SizeRange sizes) {
    if (!src.all_uppers_finite()) return false;
    return sizes.lo <= src.lower_sum() && src.finite_upper_sum() <= sizes.hi;
}

} // namespace

CubeReachReport<RbnSystem> cube_reach_bounded(const RbnModel& m,
                                              const Cube& src, const Cube& dst,
                                              SizeRange sizes, Count slack,
                                              const ExploreOptions& opt) {
    if (src.state_count() != m.state_count() ||
        dst.state_count() != m.state_count())
        throw DomainError("cube universe differs from the model state set");
    RbnSystem sys{&m, opt.successor_cap};
    auto sources = enumerate_cube_members(src, sizes.lo, sizes.hi, slack);
    return detail::cube_reach_core(
        sys, sources, [&](const MultiSet& c) { return dst.contains(c); },
        cube_fully_covered(src, sizes), opt);
}

CubeReachReport<AsmsSystem> cube_reach_bounded(const AsmsModel& m,
                                               const AsmsCube& src,
                                               const AsmsCube& dst,
                                               SizeRange sizes, Count slack,
                                               const ExploreOptions& opt) {
    if (src.bounds.state_count() != m.state_count() ||
        dst.bounds.state_count() != m.state_count())
        throw DomainError("cube universe differs from the model state set");
    if (src.reg >= m.letter_count() || dst.reg >= m.letter_count())
        throw DomainError("cube register value outside the alphabet");
    AsmsSystem sys{&m, opt.successor_cap};
    std::vector<AsmsConfig> sources;
    for (MultiSet& p : enumerate_cube_members(src.bounds, sizes.lo, sizes.hi,
                                              slack))
        sources.push_back({std::move(p), src.reg});
    return detail::cube_reach_core(
        sys, sources, [&](const AsmsConfig& c) { return dst.contains(c); },
        cube_fully_covered(src.bounds, sizes), opt);
}

CubeReachReport<IoSystem> cube_reach_bounded(const IoNetModel& m,
                                             const Cube& src, const Cube& dst,
                                             SizeRange sizes, Count slack,
                                             const ExploreOptions& opt) {
    if (src.state_count() != m.state_count() ||
        dst.state_count() != m.state_count())
        throw DomainError("cube universe differs from the model state set");
    IoSystem sys{&m, opt.successor_cap};
    auto sources = enumerate_cube_members(src, sizes.lo, sizes.hi, slack);
    return detail::cube_reach_core(
        sys, sources, [&](const MultiSet& c) { return dst.contains(c); },
        cube_fully_covered(src, sizes), opt);
}

namespace {

// post* with edges, then reverse reachability from the target nodes over the
// recorded graph. Intermediate configurations of any covering run are
// themselves reachable, so restricting to the forward closure loses nothing.
template <class System, class Occupies>
bool almost_sure_core(const System& sys, const typename System::Config& init,
                      Occupies&& occupies, const ExploreOptions& opt) {
    ExploreOptions graph_opt = opt;
    graph_opt.record_edges = true;
    auto ex = post_star(sys, init, graph_opt);
    if (!ex.exhausted)
        throw ResourceLimitError(
            "population graph exceeds the configuration cap");

    std::size_t n = ex.configs.size();
    std::vector<std::vector<std::uint32_t>> rev(n);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v : ex.edges[u]) rev[v].push_back(u);

    std::vector<char> can_cover(n, 0);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t v = 0; v < n; ++v)
        if (occupies(ex.configs[v])) {
            can_cover[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t u : rev[v])
            if (!can_cover[u]) {
                can_cover[u] = 1;
                stack.push_back(u);
            }
    }
    return std::all_of(can_cover.begin(), can_cover.end(),
                       [](char c) { return c != 0; });
}

} // namespace

bool almost_sure_cover_fixed_k(const RbnModel& m, StateId q_init,
                               StateId q_target, Count k,
                               const ExploreOptions& opt) {
    if (q_init >= m.state_count() || q_target >= m.state_count())
        throw DomainError("state outside the model");
    if (k == 0) throw DomainError("population must be positive");
    RbnSystem sys{&m, opt.successor_cap};
    return almost_sure_core(
        sys, MultiSet::singleton(q_init, k),
        [&](const MultiSet& c) { return c.count(q_target) > 0; }, opt);
}

bool almost_sure_cover_fixed_k(const AsmsModel& m, StateId q_init,
                               StateId q_target, Count k, LetterId reg,
                               const ExploreOptions& opt) {
    if (q_init >= m.state_count() || q_target >= m.state_count())
        throw DomainError("state outside the model");
    if (reg >= m.letter_count())
        throw DomainError("register value outside the alphabet");
    if (k == 0) throw DomainError("population must be positive");
    AsmsSystem sys{&m, opt.successor_cap};
    return almost_sure_core(
        sys, AsmsConfig{MultiSet::singleton(q_init, k), reg},
        [&](const AsmsConfig& c) { return c.processes.count(q_target) > 0; },
        opt);
}

std::vector<bool> rbn_coverability_saturation(
    const RbnModel& m, std::span<const StateId> initial_states) {
    std::vector<bool> in_set(m.state_count(), false);
    for (StateId q : initial_states) {
        if (q >= m.state_count()) throw DomainError("state outside the model");
        in_set[q] = true;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const RbnTransition& t : m.transitions()) {
            if (t.action != RbnAction::Broadcast) continue;
            if (!in_set[t.source]) continue;
            if (!in_set[t.target]) {
                in_set[t.target] = true;
                changed = true;
            }
            for (const RbnTransition& r : m.transitions()) {
                if (r.action != RbnAction::Receive || r.letter != t.letter)
                    continue;
                if (in_set[r.source] && !in_set[r.target]) {
                    in_set[r.target] = true;
                    changed = true;
                }
            }
        }
    }
    return in_set;
}

bool saturate_coverable_rbn(const RbnModel& m,
                            std::span<const StateId> initial_states,
                            StateId target) {
    if (target >= m.state_count())
        throw DomainError("state outside the model");
    return rbn_coverability_saturation(m, initial_states)[target];
}

} // namespace cubereach
