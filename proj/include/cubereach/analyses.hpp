// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubereach/compile.hpp"
#include "cubereach/reach.hpp"

namespace cubereach {

// ---------------------------------------------------------------------------
// Leader protocols: one distinguished process runs the leader protocol,
// arbitrarily many anonymous contributors run the other. Reachability asks
// whether some contributor count lets the leader reach its final state.
// ---------------------------------------------------------------------------

struct RbnLeaderProtocol {
    RbnModel leader;
    RbnModel contributor; // must share the leader's alphabet
    StateId leader_init = 0;
    StateId leader_final = 0;
    StateId contrib_init = 0;
};

struct AsmsLeaderProtocol {
    AsmsModel leader;
    AsmsModel contributor;
    StateId leader_init = 0;
    StateId leader_final = 0;
    StateId contrib_init = 0;
    LetterId reg_init = 0;
    LetterId reg_final = 0;
};

/// The merged model plus the cube pair expressing leader reachability:
/// exactly one process on the leader's initial (resp. final) state, zero on
/// its other states, contributors unconstrained only on their initial state
/// in the source and everywhere in the destination.
struct RbnLeaderInstance {
    RbnModel merged;
    Cube src;
    Cube dst;
    StateId leader_init, leader_final, contrib_init; // merged ids
};

struct AsmsLeaderInstance {
    AsmsModel merged;
    AsmsCube src;
    AsmsCube dst;
    StateId leader_init, leader_final, contrib_init;
};

RbnLeaderInstance leader_to_cube(const RbnLeaderProtocol& lp);
AsmsLeaderInstance leader_to_cube(const AsmsLeaderProtocol& lp);

template <class TraceT>
struct LeaderReachReport {
    Verdict verdict = Verdict::BoundedNo;
    Count k = 0; // witnessing contributor count when verdict is Yes
    std::optional<TraceT> witness;
};

/// Scans k = 1..k_max contributors; stops at the first witness.
LeaderReachReport<RbnTrace> leader_reach_bounded(const RbnLeaderProtocol& lp,
                                                 Count k_max,
                                                 const ExploreOptions& opt = {});
LeaderReachReport<AsmsTrace> leader_reach_bounded(
    const AsmsLeaderProtocol& lp, Count k_max, const ExploreOptions& opt = {});

// ---------------------------------------------------------------------------
// Cardinality reachability with an unconstrained-or-zero initial cube.
// ---------------------------------------------------------------------------

enum class CrpVariant {
    GeqOne,       // destination lowers in {0,1}, uppers all infinite
    GeqOneEqZero, // destination lowers in {0,1}, uppers in {0,inf}
    General,      // destination unrestricted
};

template <class TraceT>
struct CrpReport {
    Verdict verdict = Verdict::BoundedNo;
    std::optional<MultiSet> source;
    std::optional<TraceT> witness;
    std::string note;
};

/// For GeqOne the saturation set refutes individually uncoverable targets
/// outright (verdict No); otherwise the verdict comes from a bounded witness
/// search over source populations up to k_max.
CrpReport<RbnTrace> crp_check(const RbnModel& m,
                              std::span<const StateId> src_support,
                              const Cube& dst, CrpVariant variant, Count k_max,
                              const ExploreOptions& opt = {});

/// Immediate-observation nets go through their broadcast compilation; the
/// witness is decoded back to observations.
CrpReport<IoTrace> crp_check(const IoNetModel& m,
                             std::span<const StateId> src_support,
                             const Cube& dst, CrpVariant variant, Count k_max,
                             const ExploreOptions& opt = {});

// ---------------------------------------------------------------------------
// Empirical cut-off scanning for almost-sure coverability.
// ---------------------------------------------------------------------------

struct CutoffEntry {
    Count k = 0;
    std::optional<bool> almost_sure; // empty when the engine gave up
    std::string error;
};

/// Verdict sequence over a population range. The stabilization point and
/// polarity describe the longest agreeing suffix when it spans at least
/// `window` entries; they are empirical observations, not proofs.
struct CutoffReport {
    std::vector<CutoffEntry> entries;
    std::optional<Count> stabilization_k;
    std::optional<bool> polarity;
    std::size_t window = 0;
    bool empirical = true;
};

CutoffReport cutoff_scan(const RbnModel& m, StateId q_init, StateId q_target,
                         Count k_lo, Count k_hi, std::size_t window,
                         const ExploreOptions& opt = {});
CutoffReport cutoff_scan(const AsmsModel& m, StateId q_init, StateId q_target,
                         Count k_lo, Count k_hi, std::size_t window,
                         LetterId reg, const ExploreOptions& opt = {});

// ---------------------------------------------------------------------------
// Built-in example generators.
// ---------------------------------------------------------------------------

/// A broadcast network counting to 2^n: a chain of n stages, each needing
/// two receptions of its trigger letter to emit the next one, fed by a pool
/// of token processes that each broadcast the first letter once. The source
/// cube puts exactly one process on each stage entry and any number on the
/// token pool; the destination asks the last stage to be completed.
struct CounterFamily {
    RbnModel model;
    Cube c0;
    Cube cf;
    StateId tok; // the pool state
    StateId last_stage_end;
};

CounterFamily gen_counter_rbn(std::size_t n);

/// A shared-memory example whose single initial writer chooses one of two
/// values, enabling one of two contributor branches but never both; the
/// destination state needs both branches' replies and is unreachable from
/// one writer. Cubes: one process on the writer entry, any number on the
/// two branch entries, idle register; destination covers the writer's last
/// state with the register holding the second reply.
struct ChoiceAsms {
    AsmsModel model;
    AsmsCube c;       // source cube
    AsmsCube c_prime; // destination cube
    StateId writer_entry, writer_goal; // a-chain endpoints
    StateId branch_b_entry, branch_c_entry;
};

ChoiceAsms gen_choice_asms();

} // namespace cubereach
