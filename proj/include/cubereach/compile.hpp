// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubereach/reach.hpp"
#include "cubereach/semantics.hpp"

namespace cubereach {

// ---------------------------------------------------------------------------
// Broadcast network -> shared memory.
//
// The register stores which letter can currently be received; every source
// transition gets an intermediary state keyed by its (source, letter,
// target) triple, entered with W(a) (broadcasts) or R(a) (receives) and left
// with a write of the idle letter. Good configurations park nobody in an
// intermediary and hold the idle letter; they are in bijection with source
// configurations.
// ---------------------------------------------------------------------------
struct RbnToAsmsArtifact {
    RbnModel source;
    AsmsModel target;
    LetterId idle = 0;        // fresh letter marking "no broadcast in flight"
    StateId first_helper = 0; // target states below this are source states
    std::vector<std::uint32_t> enter; // per source transition: index of t-hat
    std::vector<std::uint32_t> exit;  // per source transition: index of t-sharp
    std::vector<StateId> intermediary; // per source transition

    AsmsConfig embed_config(const MultiSet& c) const;
    bool is_good(const AsmsConfig& c) const;
    MultiSet decode_config(const AsmsConfig& c) const; // pre: is_good
    AsmsCube embed_cube(const Cube& c) const;
    MultiSet padding() const { return {}; } // the register slot carries it
};

RbnToAsmsArtifact compile_rbn_to_asms(const RbnModel& r);

/// One source broadcast step in encoded form: the broadcast transition, the
/// receive transitions fired with it, and the induced word that first moves
/// every participant into its intermediary and then releases them.
struct PseudoStep {
    std::uint32_t broadcast = 0;
    std::vector<std::uint32_t> receives; // source transition indices, in order
};

std::vector<std::uint32_t> pseudo_step_word(const RbnToAsmsArtifact& art,
                                            const PseudoStep& step);

/// Encodes a source run good-to-good, one pseudo-step word per source step.
AsmsTrace encode_run(const RbnToAsmsArtifact& art, const RbnTrace& trace);

/// Rewrites a replayable run between good configurations into one with the
/// same endpoints that is a concatenation of pseudo-step words. Works by
/// cutting at each write of a non-idle letter and preponing the intermediary
/// exits that the cut still owes; exits all write the idle letter, so they
/// commute with everything between their old and new positions.
AsmsTrace normalize_asms_run(const RbnToAsmsArtifact& art,
                             const AsmsTrace& trace);

/// Splits a normal-form run into pseudo-steps; DomainError if the labels do
/// not decompose.
std::vector<PseudoStep> pseudo_step_decomposition(const RbnToAsmsArtifact& art,
                                                  const AsmsTrace& normal);

/// Maps a normal-form run back to a source run between the decoded
/// endpoints.
RbnTrace decode_run(const RbnToAsmsArtifact& art, const AsmsTrace& normal);

// ---------------------------------------------------------------------------
// Shared memory -> broadcast network.
//
// The register becomes a token process moving over one state per letter. A
// write is a handshake: the token offers the letter (moving to a "barred"
// waiting state), a writer accepts and parks in an intermediary, then leaves
// it by acknowledging, which returns the token to the written letter's
// state. Reads piggyback on a self-loop broadcast of the current letter.
// ---------------------------------------------------------------------------
struct AsmsToRbnArtifact {
    AsmsModel source;
    RbnModel target;
    StateId first_helper = 0;
    std::vector<StateId> register_state; // per source letter
    std::vector<std::optional<StateId>> barred_state;   // per written letter
    std::vector<std::optional<StateId>> intermediary;   // per write transition

    // Role of each target transition, for decoding runs.
    struct Role {
        enum Kind : std::uint8_t {
            OfferBroadcast,  // register token offers a letter, moves to barred
            AcceptReceive,   // writer enters its intermediary
            AckBroadcast,    // writer leaves its intermediary
            AckReceive,      // token returns to the letter state
            ValueBroadcast,  // token re-announces the current letter
            ReadReceive,     // reader fires on the announced letter
        } kind;
        std::uint32_t ref; // source transition (Accept/Ack/Read) or letter
    };
    std::vector<Role> roles; // per target transition

    MultiSet embed_config(const AsmsConfig& c) const;
    bool is_good(const MultiSet& c) const;
    AsmsConfig decode_config(const MultiSet& c) const; // pre: is_good
    Cube embed_cube(const AsmsCube& c) const;
    MultiSet padding() const { return {}; }
};

AsmsToRbnArtifact compile_asms_to_rbn(const AsmsModel& p);

/// Encodes a source run good-to-good (writes become offer/ack handshakes,
/// reads become value broadcasts with one receiver).
RbnTrace encode_run(const AsmsToRbnArtifact& art, const AsmsTrace& trace);

/// Maps a target run between good configurations back to a source run.
/// Acknowledged writer exits decode at their own position; exits whose
/// acknowledgement the token missed decode right after the offer that let
/// the writer in, which is sound because the stretch in between holds no
/// read of the register.
AsmsTrace decode_run(const AsmsToRbnArtifact& art, const RbnTrace& trace);

// ---------------------------------------------------------------------------
// Immediate observation -> broadcast network. Processes broadcast their own
// state on a self-loop; observers receive it.
// ---------------------------------------------------------------------------
struct IoToRbnArtifact {
    IoNetModel source;
    RbnModel target;

    MultiSet embed_config(const MultiSet& c) const { return c; }
    bool is_good(const MultiSet&) const { return true; }
    MultiSet decode_config(const MultiSet& c) const { return c; }
    Cube embed_cube(const Cube& c) const { return c; }
    MultiSet padding() const { return {}; }
};

IoToRbnArtifact compile_io_to_rbn(const IoNetModel& n);

RbnTrace encode_run(const IoToRbnArtifact& art, const IoTrace& trace);

/// Each target step with k receivers decodes to k observations in sequence.
IoTrace decode_run(const IoToRbnArtifact& art, const RbnTrace& trace);

// ---------------------------------------------------------------------------
// Simulation testing harness: reachability must be preserved and reflected
// under embedding.
// ---------------------------------------------------------------------------
template <class Config>
struct SimulationReport {
    bool ok = true;
    std::size_t sources_checked = 0;
    std::size_t pairs_checked = 0;
    // First mismatch: source configurations C, C2 such that reachability of
    // C2 from C differs between the source model and the embedded target.
    std::optional<std::pair<Config, Config>> counterexample;
    bool missing_in_target = false; // reachable in source, not in target
    std::string detail;
};

/// Core check, parameterized over the two systems and the embedding. For
/// each source configuration C, compares the source reach set of C with the
/// decoded good part of the target reach set of embed(C); the comparison
/// covers every pair (C, C') at once.
template <class SrcSystem, class TgtSystem, class Embed, class Good,
          class Decode>
SimulationReport<typename SrcSystem::Config> check_simulation_on(
    const SrcSystem& src_sys, const TgtSystem& tgt_sys,
    const std::vector<typename SrcSystem::Config>& sources, Embed&& embed,
    Good&& good, Decode&& decode, const ExploreOptions& opt = {}) {
    using Config = typename SrcSystem::Config;
    SimulationReport<Config> report;
    for (const Config& c : sources) {
        ++report.sources_checked;
        auto src_ex = post_star(src_sys, c, opt);
        auto tgt_ex = post_star(tgt_sys, embed(c), opt);
        if (!src_ex.exhausted || !tgt_ex.exhausted)
            throw ResourceLimitError("simulation check hit the exploration cap");

        std::unordered_map<Config, char> decoded_good;
        for (const auto& d : tgt_ex.configs)
            if (good(d)) decoded_good.emplace(decode(d), 0);

        report.pairs_checked += src_ex.configs.size() + decoded_good.size();
        for (const Config& c2 : src_ex.configs) {
            auto it = decoded_good.find(c2);
            if (it == decoded_good.end()) {
                report.ok = false;
                report.counterexample = {c, c2};
                report.missing_in_target = true;
                report.detail =
                    "reachable in the source but its embedding is not "
                    "reachable in the target";
                return report;
            }
            it->second = 1;
        }
        for (const auto& [c2, seen] : decoded_good) {
            if (!seen) {
                report.ok = false;
                report.counterexample = {c, c2};
                report.missing_in_target = false;
                report.detail =
                    "good target configuration reachable without a matching "
                    "source run";
                return report;
            }
        }
    }
    return report;
}

/// Exhaustive checks over all source configurations of total size at most
/// population_bound (for shared-memory sources, over every register value).
SimulationReport<MultiSet> check_strong_simulation(
    const RbnToAsmsArtifact& art, Count population_bound,
    const ExploreOptions& opt = {});
SimulationReport<AsmsConfig> check_strong_simulation(
    const AsmsToRbnArtifact& art, Count population_bound,
    const ExploreOptions& opt = {});
SimulationReport<MultiSet> check_strong_simulation(
    const IoToRbnArtifact& art, Count population_bound,
    const ExploreOptions& opt = {});

/// Same checks on a caller-chosen sample of source configurations.
SimulationReport<MultiSet> check_strong_simulation_on(
    const RbnToAsmsArtifact& art, const std::vector<MultiSet>& sources,
    const ExploreOptions& opt = {});
SimulationReport<AsmsConfig> check_strong_simulation_on(
    const AsmsToRbnArtifact& art, const std::vector<AsmsConfig>& sources,
    const ExploreOptions& opt = {});
SimulationReport<MultiSet> check_strong_simulation_on(
    const IoToRbnArtifact& art, const std::vector<MultiSet>& sources,
    const ExploreOptions& opt = {});

} // namespace cubereach
