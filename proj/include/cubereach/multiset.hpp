// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "cubereach/common.hpp"

namespace cubereach {

/// A multiset over a finite state set: a map from state to natural count.
/// Stored as a sorted vector of (state, count) pairs with all counts > 0;
/// absent states have count 0. The representation is canonical, so equality
/// and ordering are plain vector comparisons and iteration order is by
/// state code. Immutable after construction.
class MultiSet {
public:
    using Entry = std::pair<StateId, Count>;

    MultiSet() = default;

    /// Normalizes: sorts by state, merges duplicates, drops zero counts.
    explicit MultiSet(std::vector<Entry> entries);

    MultiSet(std::initializer_list<Entry> entries)
        : MultiSet(std::vector<Entry>(entries)) {}

    static MultiSet singleton(StateId s, Count c = 1);

    Count count(StateId s) const;
    Count size() const; // total number of occurrences
    bool empty() const { return entries_.empty(); }

    std::span<const Entry> entries() const { return entries_; }
    std::vector<StateId> support() const;

    /// Largest state in the support; pre: !empty().
    StateId max_state() const { return entries_.back().first; }

    friend bool operator==(const MultiSet&, const MultiSet&) = default;
    friend std::strong_ordering operator<=>(const MultiSet&,
                                            const MultiSet&) = default;

private:
    std::vector<Entry> entries_;
};

MultiSet operator+(const MultiSet& a, const MultiSet& b);

/// Componentwise subtraction; throws DomainError if any component would go
/// negative.
MultiSet checked_subtract(const MultiSet& a, const MultiSet& b);

/// a <= b componentwise.
bool componentwise_leq(const MultiSet& a, const MultiSet& b);

/// Concatenation of multisets over disjoint state sets; throws DomainError
/// if the supports overlap.
MultiSet disjoint_concat(const MultiSet& a, const MultiSet& b);

std::size_t hash_value(const MultiSet& m);

/// Dense view over states 0..n-1; throws DomainError if the support
/// mentions a state >= n.
std::vector<Count> to_dense(const MultiSet& m, std::size_t n);
MultiSet from_dense(std::span<const Count> counts);

/// All multisets over states 0..n-1 whose total size lies in
/// [size_lo, size_hi], in canonical order.
std::vector<MultiSet> enumerate_multisets(std::size_t n_states, Count size_lo,
                                          Count size_hi);

} // namespace cubereach

template <>
struct std::hash<cubereach::MultiSet> {
    std::size_t operator()(const cubereach::MultiSet& m) const {
        return cubereach::hash_value(m);
    }
};
