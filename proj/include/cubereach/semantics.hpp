// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cubereach/models.hpp"

namespace cubereach {

/// One broadcast transition plus a multiset of receive transitions fired in
/// the same step. Receivers are (transition index, multiplicity) pairs,
/// sorted by index.
struct RbnStepLabel {
    std::uint32_t broadcast = 0;
    std::vector<std::pair<std::uint32_t, Count>> receivers;
    friend bool operator==(const RbnStepLabel&, const RbnStepLabel&) = default;
};

/// A replayable run: the initial configuration and, per step, the label and
/// the stored resulting configuration.
template <class Config, class Label>
struct Trace {
    struct Step {
        Label label;
        Config result;
        friend bool operator==(const Step&, const Step&) = default;
    };
    Config initial{};
    std::vector<Step> steps;

    const Config& final_config() const {
        return steps.empty() ? initial : steps.back().result;
    }
    friend bool operator==(const Trace&, const Trace&) = default;
};

using RbnTrace = Trace<MultiSet, RbnStepLabel>;
using AsmsTrace = Trace<AsmsConfig, std::uint32_t>;
using IoTrace = Trace<MultiSet, std::uint32_t>;

// Step application. Returns the successor, or nullopt when the step is not
// enabled in c. Structurally malformed labels (bad indices, receiver letter
// differing from the broadcast letter) throw DomainError instead.
std::optional<MultiSet> rbn_step(const RbnModel& m, const MultiSet& c,
                                 const RbnStepLabel& label);
std::optional<AsmsConfig> asms_step(const AsmsModel& m, const AsmsConfig& c,
                                    std::uint32_t transition);
std::optional<MultiSet> io_step(const IoNetModel& m, const MultiSet& c,
                                std::uint32_t transition);

// Successor enumeration. Every distinct successor configuration appears
// exactly once, paired with the first label producing it in canonical
// enumeration order (broadcasts ascending, receiver distributions in
// lexicographic order). Throws ResourceLimitError past cap.
std::vector<std::pair<RbnStepLabel, MultiSet>> rbn_labeled_successors(
    const RbnModel& m, const MultiSet& c, std::size_t cap = 1u << 20);
std::vector<MultiSet> rbn_successors(const RbnModel& m, const MultiSet& c,
                                     std::size_t cap = 1u << 20);

std::vector<std::pair<std::uint32_t, AsmsConfig>> asms_labeled_successors(
    const AsmsModel& m, const AsmsConfig& c);
std::vector<std::pair<std::uint32_t, MultiSet>> io_labeled_successors(
    const IoNetModel& m, const MultiSet& c);

/// Replay verdict: ok iff every stored step was enabled and reproduced the
/// stored configuration. On failure, first_bad_step is the index of the
/// offending step and final is the configuration reached just before it.
template <class Config>
struct ReplayReport {
    bool ok = true;
    std::size_t first_bad_step = 0;
    Config final{};
};

ReplayReport<MultiSet> replay(const RbnModel& m, const RbnTrace& trace);
ReplayReport<AsmsConfig> replay(const AsmsModel& m, const AsmsTrace& trace);
ReplayReport<MultiSet> replay(const IoNetModel& m, const IoTrace& trace);

} // namespace cubereach
