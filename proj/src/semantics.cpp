// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cubereach/semantics.hpp"

#include <algorithm>
#include <unordered_set>

namespace cubereach {

std::optional<MultiSet> rbn_step(const RbnModel& m, const MultiSet& c,
                                 const RbnStepLabel& label) {
    if (label.broadcast >= m.transitions().size())
        throw DomainError("broadcast transition index out of range");
    const RbnTransition& t = m.transition(label.broadcast);
    if (t.action != RbnAction::Broadcast)
        throw DomainError("label broadcast is not a broadcast transition");

    std::vector<MultiSet::Entry> need{{t.source, 1}};
    std::vector<MultiSet::Entry> gain{{t.target, 1}};
    for (const auto& [idx, mult] : label.receivers) {
        if (idx >= m.transitions().size())
            throw DomainError("receive transition index out of range");
        const RbnTransition& r = m.transition(idx);
        if (r.action != RbnAction::Receive)
            throw DomainError("label receiver is not a receive transition");
        if (r.letter != t.letter)
            throw DomainError("receiver letter differs from broadcast letter");
        if (mult == 0) throw DomainError("zero receiver multiplicity");
        need.push_back({r.source, mult});
        gain.push_back({r.target, mult});
    }
    MultiSet consumed(std::move(need));
    if (!componentwise_leq(consumed, c)) return std::nullopt;
    return checked_subtract(c, consumed) + MultiSet(std::move(gain));
}

namespace {

// Distributes, state by state, the processes available after removing the
// broadcaster among "stay put" and the receive transitions of the broadcast
// letter. Emits one (label, successor) pair per distribution.
struct RbnSuccessorEnumerator {
    const RbnModel& m;
    LetterId letter;
    std::uint32_t broadcast_idx;
    std::vector<Count>& base; // counts with the broadcaster already removed
    std::vector<std::pair<StateId, std::span<const std::uint32_t>>> groups;
    std::vector<std::pair<std::uint32_t, Count>> chosen;
    std::vector<std::pair<RbnStepLabel, MultiSet>>& out;
    std::unordered_set<MultiSet>& seen;
    std::size_t cap;

    void run() { per_group(0); }

    void per_group(std::size_t g) {
        if (g == groups.size()) {
            emit();
            return;
        }
        auto [state, recvs] = groups[g];
        per_transition(g, recvs, 0, base[state]);
    }

    void per_transition(std::size_t g, std::span<const std::uint32_t> recvs,
                        std::size_t i, Count avail) {
        if (i == recvs.size()) {
            per_group(g + 1);
            return;
        }
        // count 0 first keeps the enumeration lexicographic
        for (Count k = 0; k <= avail; ++k) {
            if (k > 0) chosen.push_back({recvs[i], k});
            per_transition(g, recvs, i + 1, avail - k);
            if (k > 0) chosen.pop_back();
        }
    }

    void emit() {
        std::vector<Count> next(base);
        next[m.transition(broadcast_idx).target] += 1;
        for (const auto& [idx, k] : chosen) {
            const RbnTransition& r = m.transition(idx);
            next[r.source] -= k;
            next[r.target] += k;
        }
        MultiSet cfg = from_dense(next);
        if (!seen.insert(cfg).second) return;
        if (out.size() >= cap)
            throw ResourceLimitError("successor set exceeds cap");
        RbnStepLabel label{broadcast_idx, chosen};
        std::sort(label.receivers.begin(), label.receivers.end());
        out.push_back({std::move(label), std::move(cfg)});
    }
};

} // namespace

std::vector<std::pair<RbnStepLabel, MultiSet>> rbn_labeled_successors(
    const RbnModel& m, const MultiSet& c, std::size_t cap) {
    std::vector<std::pair<RbnStepLabel, MultiSet>> out;
    std::unordered_set<MultiSet> seen;
    std::vector<Count> dense = to_dense(c, m.state_count());
    for (std::uint32_t b : m.broadcasts()) {
        const RbnTransition& t = m.transition(b);
        if (dense[t.source] == 0) continue;
        dense[t.source] -= 1;
        RbnSuccessorEnumerator e{m, t.letter, b, dense, {}, {}, out, seen, cap};
        for (StateId q = 0; q < m.state_count(); ++q) {
            auto recvs = m.receives_on(t.letter, q);
            if (!recvs.empty() && dense[q] > 0) e.groups.push_back({q, recvs});
        }
        e.run();
        dense[t.source] += 1;
    }
    return out;
}

std::vector<MultiSet> rbn_successors(const RbnModel& m, const MultiSet& c,
                                     std::size_t cap) {
    std::vector<MultiSet> out;
    for (auto& [label, cfg] : rbn_labeled_successors(m, c, cap))
        out.push_back(std::move(cfg));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<AsmsConfig> asms_step(const AsmsModel& m, const AsmsConfig& c,
                                    std::uint32_t transition) {
    if (transition >= m.transitions().size())
        throw DomainError("transition index out of range");
    const AsmsTransition& t = m.transition(transition);
    if (c.processes.count(t.source) == 0) return std::nullopt;
    if (t.op == RegisterOp::Read && c.reg != t.letter) return std::nullopt;
    AsmsConfig next;
    next.processes = checked_subtract(c.processes, MultiSet::singleton(t.source)) +
                     MultiSet::singleton(t.target);
    next.reg = t.op == RegisterOp::Write ? t.letter : c.reg;
    return next;
}

std::vector<std::pair<std::uint32_t, AsmsConfig>> asms_labeled_successors(
    const AsmsModel& m, const AsmsConfig& c) {
    std::vector<std::pair<std::uint32_t, AsmsConfig>> out;
    std::unordered_set<AsmsConfig> seen;
    for (std::uint32_t i = 0; i < m.transitions().size(); ++i)
        if (auto next = asms_step(m, c, i))
            if (seen.insert(*next).second) out.push_back({i, std::move(*next)});
    return out;
}

std::optional<MultiSet> io_step(const IoNetModel& m, const MultiSet& c,
                                std::uint32_t transition) {
    if (transition >= m.transitions().size())
        throw DomainError("transition index out of range");
    const IoTransition& t = m.transition(transition);
    MultiSet need = MultiSet::singleton(t.source) + MultiSet::singleton(t.observed);
    if (!componentwise_leq(need, c)) return std::nullopt;
    return checked_subtract(c, MultiSet::singleton(t.source)) +
           MultiSet::singleton(t.target);
}

std::vector<std::pair<std::uint32_t, MultiSet>> io_labeled_successors(
    const IoNetModel& m, const MultiSet& c) {
    std::vector<std::pair<std::uint32_t, MultiSet>> out;
    std::unordered_set<MultiSet> seen;
    for (std::uint32_t i = 0; i < m.transitions().size(); ++i)
        if (auto next = io_step(m, c, i))
            if (seen.insert(*next).second) out.push_back({i, std::move(*next)});
    return out;
}

namespace {

template <class Model, class TraceT, class StepFn>
auto replay_impl(const Model& m, const TraceT& trace, StepFn&& step) {
    ReplayReport<decltype(trace.initial)> report;
    report.final = trace.initial;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        auto next = step(m, report.final, trace.steps[i].label);
        if (!next || *next != trace.steps[i].result) {
            report.ok = false;
            report.first_bad_step = i;
            return report;
        }
        report.final = std::move(*next);
    }
    report.first_bad_step = trace.steps.size();
    return report;
}

} // namespace

ReplayReport<MultiSet> replay(const RbnModel& m, const RbnTrace& trace) {
    return replay_impl(m, trace,
                       [](const RbnModel& mm, const MultiSet& c,
                          const RbnStepLabel& l) { return rbn_step(mm, c, l); });
}

ReplayReport<AsmsConfig> replay(const AsmsModel& m, const AsmsTrace& trace) {
    return replay_impl(m, trace,
                       [](const AsmsModel& mm, const AsmsConfig& c,
                          std::uint32_t t) { return asms_step(mm, c, t); });
}

ReplayReport<MultiSet> replay(const IoNetModel& m, const IoTrace& trace) {
    return replay_impl(m, trace,
                       [](const IoNetModel& mm, const MultiSet& c,
                          std::uint32_t t) { return io_step(mm, c, t); });
}

} // namespace cubereach
