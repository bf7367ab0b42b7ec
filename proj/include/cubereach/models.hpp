// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubereach/common.hpp"
#include "cubereach/cube.hpp"
#include "cubereach/multiset.hpp"

namespace cubereach {

// ---------------------------------------------------------------------------
// Reconfigurable broadcast networks: anonymous processes, one broadcasts a
// letter and an arbitrary subset of receive-capable processes fires matching
// receive transitions in the same step.
// ---------------------------------------------------------------------------

enum class RbnAction : std::uint8_t { Broadcast, Receive };

struct RbnTransition {
    StateId source;
    RbnAction action;
    LetterId letter;
    StateId target;
    friend bool operator==(const RbnTransition&, const RbnTransition&) = default;
    friend auto operator<=>(const RbnTransition&, const RbnTransition&) = default;
};

class RbnModel {
public:
    RbnModel(std::vector<std::string> state_names,
             std::vector<std::string> letter_names,
             std::vector<RbnTransition> transitions);

    std::size_t state_count() const { return state_names_.size(); }
    std::size_t letter_count() const { return letter_names_.size(); }
    std::span<const std::string> state_names() const { return state_names_; }
    std::span<const std::string> letter_names() const { return letter_names_; }
    const std::string& state_name(StateId q) const { return state_names_[q]; }
    const std::string& letter_name(LetterId a) const { return letter_names_[a]; }
    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<LetterId> find_letter(std::string_view name) const;

    std::span<const RbnTransition> transitions() const { return transitions_; }
    const RbnTransition& transition(std::uint32_t t) const {
        return transitions_[t];
    }
    std::optional<std::uint32_t> find_transition(const RbnTransition& t) const;

    /// Indices of all broadcast transitions, ascending.
    std::span<const std::uint32_t> broadcasts() const { return broadcasts_; }
    /// Indices of receive transitions on letter a from state p, ascending.
    std::span<const std::uint32_t> receives_on(LetterId a, StateId p) const;

    friend bool operator==(const RbnModel&, const RbnModel&) = default;

private:
    std::vector<std::string> state_names_;
    std::vector<std::string> letter_names_;
    std::vector<RbnTransition> transitions_;
    std::vector<std::uint32_t> broadcasts_;
    std::vector<std::vector<std::uint32_t>> receives_; // letter * n_states + p
};

// ---------------------------------------------------------------------------
// Asynchronous shared-memory systems: anonymous processes plus one shared
// register over a finite alphabet; reads are enabled only on a matching
// register value, writes overwrite unconditionally.
// ---------------------------------------------------------------------------

enum class RegisterOp : std::uint8_t { Read, Write };

struct AsmsTransition {
    StateId source;
    RegisterOp op;
    LetterId letter;
    StateId target;
    friend bool operator==(const AsmsTransition&, const AsmsTransition&) = default;
    friend auto operator<=>(const AsmsTransition&, const AsmsTransition&) = default;
};

class AsmsModel {
public:
    AsmsModel(std::vector<std::string> state_names,
              std::vector<std::string> letter_names,
              std::vector<AsmsTransition> transitions);

    std::size_t state_count() const { return state_names_.size(); }
    std::size_t letter_count() const { return letter_names_.size(); }
    std::span<const std::string> state_names() const { return state_names_; }
    std::span<const std::string> letter_names() const { return letter_names_; }
    const std::string& state_name(StateId q) const { return state_names_[q]; }
    const std::string& letter_name(LetterId a) const { return letter_names_[a]; }
    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<LetterId> find_letter(std::string_view name) const;

    std::span<const AsmsTransition> transitions() const { return transitions_; }
    const AsmsTransition& transition(std::uint32_t t) const {
        return transitions_[t];
    }
    std::optional<std::uint32_t> find_transition(const AsmsTransition& t) const;

    friend bool operator==(const AsmsModel&, const AsmsModel&) = default;

private:
    std::vector<std::string> state_names_;
    std::vector<std::string> letter_names_;
    std::vector<AsmsTransition> transitions_;
};

/// A configuration of an ASMS: the process multiset plus exactly one
/// register value.
struct AsmsConfig {
    MultiSet processes;
    LetterId reg = 0;
    friend bool operator==(const AsmsConfig&, const AsmsConfig&) = default;
    friend auto operator<=>(const AsmsConfig&, const AsmsConfig&) = default;
};

/// A cube of ASMS configurations: process bounds plus one register value.
struct AsmsCube {
    Cube bounds;
    LetterId reg = 0;

    bool contains(const AsmsConfig& c) const {
        return c.reg == reg && bounds.contains(c.processes);
    }
    friend bool operator==(const AsmsCube&, const AsmsCube&) = default;
};

// ---------------------------------------------------------------------------
// Immediate-observation nets: a process in p observes a process in q and
// moves to p'; the observed process is untouched. A self-observation
// (p, p, p') requires two processes in p.
// ---------------------------------------------------------------------------

struct IoTransition {
    StateId source;
    StateId observed;
    StateId target;
    friend bool operator==(const IoTransition&, const IoTransition&) = default;
    friend auto operator<=>(const IoTransition&, const IoTransition&) = default;
};

class IoNetModel {
public:
    IoNetModel(std::vector<std::string> state_names,
               std::vector<IoTransition> transitions);

    std::size_t state_count() const { return state_names_.size(); }
    std::span<const std::string> state_names() const { return state_names_; }
    const std::string& state_name(StateId q) const { return state_names_[q]; }
    std::optional<StateId> find_state(std::string_view name) const;

    std::span<const IoTransition> transitions() const { return transitions_; }
    const IoTransition& transition(std::uint32_t t) const {
        return transitions_[t];
    }
    std::optional<std::uint32_t> find_transition(const IoTransition& t) const;

    friend bool operator==(const IoNetModel&, const IoNetModel&) = default;

private:
    std::vector<std::string> state_names_;
    std::vector<IoTransition> transitions_;
};

std::size_t hash_value(const AsmsConfig& c);

} // namespace cubereach

template <>
struct std::hash<cubereach::AsmsConfig> {
    std::size_t operator()(const cubereach::AsmsConfig& c) const {
        return cubereach::hash_value(c);
    }
};
