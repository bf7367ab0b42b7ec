// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cubereach/multiset.hpp"

#include <algorithm>

namespace cubereach {

MultiSet::MultiSet(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    // merge duplicates, drop zeros
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries_.size();) {
        StateId s = entries_[i].first;
        Count c = 0;
        while (i < entries_.size() && entries_[i].first == s) {
            c += entries_[i].second;
            ++i;
        }
        if (c > 0) entries_[out++] = {s, c};
    }
    entries_.resize(out);
}

MultiSet MultiSet::singleton(StateId s, Count c) {
    MultiSet m;
    if (c > 0) m.entries_.push_back({s, c});
    return m;
}

Count MultiSet::count(StateId s) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), s,
        [](const Entry& e, StateId v) { return e.first < v; });
    if (it != entries_.end() && it->first == s) return it->second;
    return 0;
}

Count MultiSet::size() const {
    Count total = 0;
    for (const auto& [s, c] : entries_) total += c;
    return total;
}

std::vector<StateId> MultiSet::support() const {
    std::vector<StateId> out;
    out.reserve(entries_.size());
    for (const auto& [s, c] : entries_) out.push_back(s);
    return out;
}

MultiSet operator+(const MultiSet& a, const MultiSet& b) {
    std::vector<MultiSet::Entry> merged;
    merged.reserve(a.entries().size() + b.entries().size());
    merged.insert(merged.end(), a.entries().begin(), a.entries().end());
    merged.insert(merged.end(), b.entries().begin(), b.entries().end());
    return MultiSet(std::move(merged));
}

MultiSet checked_subtract(const MultiSet& a, const MultiSet& b) {
    std::vector<MultiSet::Entry> out(a.entries().begin(), a.entries().end());
    for (const auto& [s, c] : b.entries()) {
        auto it = std::lower_bound(
            out.begin(), out.end(), s,
            [](const MultiSet::Entry& e, StateId v) { return e.first < v; });
        if (it == out.end() || it->first != s || it->second < c)
            throw DomainError("multiset subtraction below zero at state " +
                              std::to_string(s));
        it->second -= c;
    }
    return MultiSet(std::move(out));
}

bool componentwise_leq(const MultiSet& a, const MultiSet& b) {
    for (const auto& [s, c] : a.entries())
        if (b.count(s) < c) return false;
    return true;
}

MultiSet disjoint_concat(const MultiSet& a, const MultiSet& b) {
    for (const auto& [s, c] : a.entries())
        if (b.count(s) > 0)
            throw DomainError("disjoint concat: state " + std::to_string(s) +
                              " occurs on both sides");
    return a + b;
}

std::size_t hash_value(const MultiSet& m) {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const auto& [s, c] : m.entries()) {
        h = hash_combine(h, std::hash<StateId>{}(s));
        h = hash_combine(h, std::hash<Count>{}(c));
    }
    return h;
}

std::vector<Count> to_dense(const MultiSet& m, std::size_t n) {
    std::vector<Count> out(n, 0);
    for (const auto& [s, c] : m.entries()) {
        if (s >= n)
            throw DomainError("multiset mentions state " + std::to_string(s) +
                              " outside a universe of " + std::to_string(n) +
                              " states");
        out[s] = c;
    }
    return out;
}

MultiSet from_dense(std::span<const Count> counts) {
    std::vector<MultiSet::Entry> out;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] > 0) out.push_back({static_cast<StateId>(i), counts[i]});
    return MultiSet(std::move(out));
}

namespace {

void enumerate_rec(std::size_t n, std::size_t idx, Count remaining_hi,
                   std::vector<Count>& current, Count size_lo, Count placed,
                   std::vector<MultiSet>& out) {
    if (idx == n) {
        if (placed >= size_lo) out.push_back(from_dense(current));
        return;
    }
    for (Count c = 0; c <= remaining_hi; ++c) {
        current[idx] = c;
        enumerate_rec(n, idx + 1, remaining_hi - c, current, size_lo,
                      placed + c, out);
    }
    current[idx] = 0;
}

} // namespace

std::vector<MultiSet> enumerate_multisets(std::size_t n_states, Count size_lo,
                                          Count size_hi) {
    std::vector<MultiSet> out;
    if (n_states == 0) {
        if (size_lo == 0) out.push_back(MultiSet{});
        return out;
    }
    std::vector<Count> current(n_states, 0);
    enumerate_rec(n_states, 0, size_hi, current, size_lo, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cubereach
