// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cubereach/models.hpp"

#include <algorithm>
#include <unordered_set>

namespace cubereach {

namespace {

void check_names(std::span<const std::string> names, const char* what) {
    std::unordered_set<std::string_view> seen;
    for (const std::string& n : names) {
        if (n.empty()) throw DomainError(std::string("empty ") + what + " name");
        if (!seen.insert(n).second)
            throw DomainError(std::string("duplicate ") + what + " name '" + n +
                              "'");
    }
}

template <class Names>
std::optional<std::uint32_t> find_name(const Names& names,
                                       std::string_view name) {
    for (std::uint32_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    return std::nullopt;
}

template <class T>
void check_no_duplicate_transitions(std::vector<T> ts) {
    std::sort(ts.begin(), ts.end());
    if (std::adjacent_find(ts.begin(), ts.end()) != ts.end())
        throw DomainError("duplicate transition");
}

} // namespace

RbnModel::RbnModel(std::vector<std::string> state_names,
                   std::vector<std::string> letter_names,
                   std::vector<RbnTransition> transitions)
    : state_names_(std::move(state_names)),
      letter_names_(std::move(letter_names)),
      transitions_(std::move(transitions)) {
    check_names(state_names_, "state");
    check_names(letter_names_, "letter");
    for (const RbnTransition& t : transitions_) {
        if (t.source >= state_count() || t.target >= state_count())
            throw DomainError("transition endpoint outside state set");
        if (t.letter >= letter_count())
            throw DomainError("transition letter outside alphabet");
    }
    check_no_duplicate_transitions(transitions_);

    receives_.resize(letter_count() * state_count());
    for (std::uint32_t i = 0; i < transitions_.size(); ++i) {
        const RbnTransition& t = transitions_[i];
        if (t.action == RbnAction::Broadcast)
            broadcasts_.push_back(i);
        else
            receives_[t.letter * state_count() + t.source].push_back(i);
    }
}

std::optional<StateId> RbnModel::find_state(std::string_view name) const {
    return find_name(state_names_, name);
}

std::optional<LetterId> RbnModel::find_letter(std::string_view name) const {
    return find_name(letter_names_, name);
}

std::optional<std::uint32_t> RbnModel::find_transition(
    const RbnTransition& t) const {
    for (std::uint32_t i = 0; i < transitions_.size(); ++i)
        if (transitions_[i] == t) return i;
    return std::nullopt;
}

std::span<const std::uint32_t> RbnModel::receives_on(LetterId a,
                                                     StateId p) const {
    return receives_[a * state_count() + p];
}

AsmsModel::AsmsModel(std::vector<std::string> state_names,
                     std::vector<std::string> letter_names,
                     std::vector<AsmsTransition> transitions)
    : state_names_(std::move(state_names)),
      letter_names_(std::move(letter_names)),
      transitions_(std::move(transitions)) {
    check_names(state_names_, "state");
    check_names(letter_names_, "letter");
    for (const AsmsTransition& t : transitions_) {
        if (t.source >= state_count() || t.target >= state_count())
            throw DomainError("transition endpoint outside state set");
        if (t.letter >= letter_count())
            throw DomainError("transition letter outside alphabet");
    }
    check_no_duplicate_transitions(transitions_);
    if (letter_count() == 0)
        throw DomainError("shared-memory model needs a nonempty alphabet");
}

std::optional<StateId> AsmsModel::find_state(std::string_view name) const {
    return find_name(state_names_, name);
}

std::optional<LetterId> AsmsModel::find_letter(std::string_view name) const {
    return find_name(letter_names_, name);
}

std::optional<std::uint32_t> AsmsModel::find_transition(
    const AsmsTransition& t) const {
    for (std::uint32_t i = 0; i < transitions_.size(); ++i)
        if (transitions_[i] == t) return i;
    return std::nullopt;
}

IoNetModel::IoNetModel(std::vector<std::string> state_names,
                       std::vector<IoTransition> transitions)
    : state_names_(std::move(state_names)),
      transitions_(std::move(transitions)) {
    check_names(state_names_, "state");
    for (const IoTransition& t : transitions_) {
        if (t.source >= state_count() || t.observed >= state_count() ||
            t.target >= state_count())
            throw DomainError("transition endpoint outside state set");
    }
    check_no_duplicate_transitions(transitions_);
}

std::optional<StateId> IoNetModel::find_state(std::string_view name) const {
    return find_name(state_names_, name);
}

std::optional<std::uint32_t> IoNetModel::find_transition(
    const IoTransition& t) const {
    for (std::uint32_t i = 0; i < transitions_.size(); ++i)
        if (transitions_[i] == t) return i;
    return std::nullopt;
}

std::size_t hash_value(const AsmsConfig& c) {
    return hash_combine(hash_value(c.processes),
                        std::hash<LetterId>{}(c.reg));
}

} // namespace cubereach
