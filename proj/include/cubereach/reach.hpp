// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "cubereach/semantics.hpp"

namespace cubereach {

struct ExploreOptions {
    std::size_t max_configs = 5'000'000;
    std::size_t successor_cap = 1u << 20;
    bool record_edges = false;
    unsigned threads = 1; // 0 = hardware concurrency
};

enum class Verdict { Yes, No, BoundedNo };
std::string_view to_string(Verdict v);

// Thin adapters exposing the three models as transition systems with a
// uniform successors() surface.
struct RbnSystem {
    using Config = MultiSet;
    using Label = RbnStepLabel;
    using TraceT = RbnTrace;
    const RbnModel* model;
    std::size_t successor_cap = 1u << 20;
    void successors(const Config& c,
                    std::vector<std::pair<Label, Config>>& out) const {
        out = rbn_labeled_successors(*model, c, successor_cap);
    }
};

struct AsmsSystem {
    using Config = AsmsConfig;
    using Label = std::uint32_t;
    using TraceT = AsmsTrace;
    const AsmsModel* model;
    std::size_t successor_cap = 1u << 20;
    void successors(const Config& c,
                    std::vector<std::pair<Label, Config>>& out) const {
        out = asms_labeled_successors(*model, c);
    }
};

struct IoSystem {
    using Config = MultiSet;
    using Label = std::uint32_t;
    using TraceT = IoTrace;
    const IoNetModel* model;
    std::size_t successor_cap = 1u << 20;
    void successors(const Config& c,
                    std::vector<std::pair<Label, Config>>& out) const {
        out = io_labeled_successors(*model, c);
    }
};

/// Result of a forward closure: configurations in discovery order (the root
/// first, each BFS level sorted canonically), parent links for witness
/// extraction, and optionally the full edge relation. exhausted is false
/// when the walk stopped at the configuration cap.
template <class System>
struct Exploration {
    using Config = typename System::Config;
    using Label = typename System::Label;

    std::vector<Config> configs;
    std::vector<std::int64_t> parent; // -1 at the root
    std::vector<Label> via;
    std::vector<std::vector<std::uint32_t>> edges; // iff record_edges
    std::unordered_map<Config, std::uint32_t> index;
    bool exhausted = false;

    bool contains(const Config& c) const { return index.count(c) != 0; }

    typename System::TraceT trace_to(std::uint32_t node) const {
        std::vector<std::uint32_t> path;
        for (std::int64_t v = node; v != -1; v = parent[v])
            path.push_back(static_cast<std::uint32_t>(v));
        std::reverse(path.begin(), path.end());
        typename System::TraceT trace;
        trace.initial = configs[path.front()];
        for (std::size_t i = 1; i < path.size(); ++i)
            trace.steps.push_back({via[path[i]], configs[path[i]]});
        return trace;
    }
};

namespace detail {

// Level-synchronous BFS. Successor expansion of a level may run on several
// threads; results are merged in frontier order and each new level is sorted
// canonically, so the outcome does not depend on scheduling.
template <class System, class Visit>
Exploration<System> bfs(const System& sys,
                        const typename System::Config& root,
                        const ExploreOptions& opt, Visit&& visit) {
    using Config = typename System::Config;
    using Label = typename System::Label;

    Exploration<System> ex;
    ex.configs.push_back(root);
    ex.parent.push_back(-1);
    ex.via.push_back(Label{});
    if (opt.record_edges) ex.edges.emplace_back();
    ex.index.emplace(root, 0);
    if (visit(0u, root)) return ex;

    unsigned threads = opt.threads == 0
                           ? std::max(1u, std::thread::hardware_concurrency())
                           : opt.threads;

    std::vector<std::uint32_t> level{0};
    std::vector<std::vector<std::pair<Label, Config>>> expanded;
    while (!level.empty()) {
        // expand
        expanded.assign(level.size(), {});
        if (threads <= 1 || level.size() < 2 * threads) {
            for (std::size_t i = 0; i < level.size(); ++i)
                sys.successors(ex.configs[level[i]], expanded[i]);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(threads);
            std::size_t chunk = (level.size() + threads - 1) / threads;
            for (unsigned w = 0; w < threads; ++w) {
                std::size_t lo = w * chunk;
                std::size_t hi = std::min(level.size(), lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back([&, lo, hi, w] {
                    try {
                        for (std::size_t i = lo; i < hi; ++i)
                            sys.successors(ex.configs[level[i]], expanded[i]);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
        }

        // merge in frontier order
        std::vector<std::uint32_t> next;
        for (std::size_t i = 0; i < level.size(); ++i) {
            std::uint32_t u = level[i];
            for (auto& [label, cfg] : expanded[i]) {
                auto [it, fresh] =
                    ex.index.emplace(cfg, static_cast<std::uint32_t>(
                                              ex.configs.size()));
                if (fresh) {
                    if (ex.configs.size() >= opt.max_configs) {
                        ex.index.erase(it);
                        return ex; // cap hit: partial, exhausted stays false
                    }
                    ex.configs.push_back(std::move(cfg));
                    ex.parent.push_back(u);
                    ex.via.push_back(std::move(label));
                    if (opt.record_edges) ex.edges.emplace_back();
                    next.push_back(it->second);
                }
                if (opt.record_edges) ex.edges[u].push_back(it->second);
            }
        }
        // canonical frontier order for the next level
        std::sort(next.begin(), next.end(),
                  [&](std::uint32_t a, std::uint32_t b) {
                      return ex.configs[a] < ex.configs[b];
                  });
        for (std::uint32_t v : next)
            if (visit(v, ex.configs[v])) return ex;
        level = std::move(next);
    }
    ex.exhausted = true;
    return ex;
}

} // namespace detail

/// Forward closure of c0 under single steps, complete iff exhausted.
template <class System>
Exploration<System> post_star(const System& sys,
                              const typename System::Config& c0,
                              const ExploreOptions& opt = {}) {
    return detail::bfs(sys, c0, opt,
                       [](std::uint32_t, const auto&) { return false; });
}

enum class SearchStatus { Found, Exhausted, CapHit };

template <class System>
struct SearchOutcome {
    SearchStatus status = SearchStatus::Exhausted;
    std::optional<typename System::TraceT> witness;
    std::size_t explored = 0;
};

/// Breadth-first search for a configuration satisfying target. Absence of a
/// witness is conclusive only when status is Exhausted.
template <class System, class Pred>
SearchOutcome<System> reaches(const System& sys,
                              const typename System::Config& c0, Pred&& target,
                              const ExploreOptions& opt = {}) {
    SearchOutcome<System> out;
    std::uint32_t hit = 0;
    bool found = false;
    auto ex = detail::bfs(sys, c0, opt,
                          [&](std::uint32_t v, const auto& cfg) {
                              if (target(cfg)) {
                                  hit = v;
                                  found = true;
                                  return true;
                              }
                              return false;
                          });
    out.explored = ex.configs.size();
    if (found) {
        out.status = SearchStatus::Found;
        out.witness = ex.trace_to(hit);
    } else {
        out.status = ex.exhausted ? SearchStatus::Exhausted
                                  : SearchStatus::CapHit;
    }
    return out;
}

template <class System>
struct CubeReachReport {
    Verdict verdict = Verdict::BoundedNo;
    std::optional<typename System::Config> source;
    std::optional<typename System::TraceT> witness;
    std::size_t sources_tried = 0;
    bool all_exhausted = true;
    std::string note;
};

namespace detail {

// Shared three-valued cube-reachability core. A plain No is only sound when
// the tried sources provably cover the whole source cube (finite uppers,
// size window containing every member) and every search exhausted.
template <class System, class Pred>
CubeReachReport<System> cube_reach_core(
    const System& sys, const std::vector<typename System::Config>& sources,
    Pred&& in_dst, bool sources_cover_cube, const ExploreOptions& opt) {
    CubeReachReport<System> report;
    for (const auto& src : sources) {
        ++report.sources_tried;
        auto outcome = reaches(sys, src, in_dst, opt);
        if (outcome.status == SearchStatus::Found) {
            report.verdict = Verdict::Yes;
            report.source = src;
            report.witness = std::move(outcome.witness);
            return report;
        }
        if (outcome.status == SearchStatus::CapHit)
            report.all_exhausted = false;
    }
    if (sources.empty()) {
        report.verdict = Verdict::BoundedNo;
        report.note = "no source configuration within the tried bounds";
    } else if (sources_cover_cube && report.all_exhausted) {
        report.verdict = Verdict::No;
    } else {
        report.verdict = Verdict::BoundedNo;
        report.note = sources_cover_cube
                          ? "search hit the configuration cap"
                          : "source cube truncated to the tried bounds";
    }
    return report;
}

} // namespace detail

struct SizeRange {
    Count lo = 0;
    Count hi = 0;
};

CubeReachReport<RbnSystem> cube_reach_bounded(const RbnModel& m,
                                              const Cube& src, const Cube& dst,
                                              SizeRange sizes, Count slack,
                                              const ExploreOptions& opt = {});
CubeReachReport<AsmsSystem> cube_reach_bounded(const AsmsModel& m,
                                               const AsmsCube& src,
                                               const AsmsCube& dst,
                                               SizeRange sizes, Count slack,
                                               const ExploreOptions& opt = {});
CubeReachReport<IoSystem> cube_reach_bounded(const IoNetModel& m,
                                             const Cube& src, const Cube& dst,
                                             SizeRange sizes, Count slack,
                                             const ExploreOptions& opt = {});

/// True iff every configuration reachable from k processes in q_init can
/// itself reach a configuration occupying q_target. Builds the full
/// population-k graph; throws ResourceLimitError when it does not fit, since
/// a partial answer would be unsound.
bool almost_sure_cover_fixed_k(const RbnModel& m, StateId q_init,
                               StateId q_target, Count k,
                               const ExploreOptions& opt = {});
bool almost_sure_cover_fixed_k(const AsmsModel& m, StateId q_init,
                               StateId q_target, Count k, LetterId reg,
                               const ExploreOptions& opt = {});

/// Least set of states containing initial_states and closed under broadcast
/// targets and, whenever a letter is broadcastable from the set, receive
/// targets from the set. One entry per state.
std::vector<bool> rbn_coverability_saturation(
    const RbnModel& m, std::span<const StateId> initial_states);

/// Whether target is coverable from some population supported in
/// initial_states, decided by saturation.
bool saturate_coverable_rbn(const RbnModel& m,
                            std::span<const StateId> initial_states,
                            StateId target);

} // namespace cubereach
