// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cubereach/cube.hpp"

#include <algorithm>

namespace cubereach {

Cube::Cube(std::vector<Count> lower, std::vector<UBound> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size())
        throw DomainError("cube bound vectors differ in length");
    for (std::size_t q = 0; q < lower_.size(); ++q)
        if (!(lower_[q] <= upper_[q]))
            throw DomainError("cube lower bound exceeds upper bound at state " +
                              std::to_string(q));
}

Cube Cube::universal(std::size_t n_states) {
    return Cube(std::vector<Count>(n_states, 0),
                std::vector<UBound>(n_states, UBound::inf()));
}

Cube Cube::exact(const MultiSet& m, std::size_t n_states) {
    std::vector<Count> lo = to_dense(m, n_states);
    std::vector<UBound> hi(n_states);
    for (std::size_t q = 0; q < n_states; ++q) hi[q] = UBound::of(lo[q]);
    return Cube(std::move(lo), std::move(hi));
}

Cube Cube::with_bounds(StateId q, Count lo, UBound hi) const {
    std::vector<Count> l(lower_);
    std::vector<UBound> u(upper_);
    if (q >= l.size()) throw DomainError("state outside cube universe");
    l[q] = lo;
    u[q] = hi;
    return Cube(std::move(l), std::move(u));
}

bool Cube::contains(const MultiSet& m) const {
    std::vector<Count> dense = to_dense(m, state_count());
    for (std::size_t q = 0; q < dense.size(); ++q) {
        if (dense[q] < lower_[q]) return false;
        if (!(dense[q] <= upper_[q])) return false;
    }
    return true;
}

Count Cube::lower_sum() const {
    Count s = 0;
    for (Count c : lower_) s += c;
    return s;
}

Count Cube::finite_upper_sum() const {
    Count s = 0;
    for (UBound u : upper_)
        if (!u.is_inf()) s += u.value();
    return s;
}

bool Cube::all_uppers_finite() const {
    return std::none_of(upper_.begin(), upper_.end(),
                        [](UBound u) { return u.is_inf(); });
}

NormReport cube_norm(const Cube& c) {
    NormReport r;
    r.lnorm = c.lower_sum();
    r.unorm = c.finite_upper_sum();
    r.norm = std::max(r.lnorm, r.unorm);
    return r;
}

CountingConstraint::CountingConstraint(std::size_t n_states,
                                       std::vector<Cube> cubes)
    : n_states_(n_states), cubes_(std::move(cubes)) {
    for (const Cube& c : cubes_)
        if (c.state_count() != n_states_)
            throw DomainError("constraint mixes cubes over different state sets");
}

CountingConstraint CountingConstraint::empty_set(std::size_t n_states) {
    return CountingConstraint(n_states, {});
}

CountingConstraint CountingConstraint::universe(std::size_t n_states) {
    return CountingConstraint(n_states, {Cube::universal(n_states)});
}

CountingConstraint CountingConstraint::single(Cube c) {
    std::size_t n = c.state_count();
    std::vector<Cube> v;
    v.push_back(std::move(c));
    return CountingConstraint(n, std::move(v));
}

bool CountingConstraint::contains(const MultiSet& m) const {
    for (const Cube& c : cubes_)
        if (c.contains(m)) return true;
    return false;
}

namespace {

void require_same_universe(const CountingConstraint& x,
                           const CountingConstraint& y) {
    if (x.state_count() != y.state_count())
        throw DomainError("constraints range over different state sets");
}

} // namespace

CountingConstraint constraint_union(const CountingConstraint& x,
                                    const CountingConstraint& y) {
    require_same_universe(x, y);
    std::vector<Cube> cubes(x.cubes().begin(), x.cubes().end());
    cubes.insert(cubes.end(), y.cubes().begin(), y.cubes().end());
    return CountingConstraint(x.state_count(), std::move(cubes));
}

std::optional<Cube> cube_intersect(const Cube& a, const Cube& b) {
    if (a.state_count() != b.state_count())
        throw DomainError("cubes range over different state sets");
    std::size_t n = a.state_count();
    std::vector<Count> lo(n);
    std::vector<UBound> hi(n);
    for (std::size_t q = 0; q < n; ++q) {
        lo[q] = std::max(a.lower(q), b.lower(q));
        hi[q] = UBound::min(a.upper(q), b.upper(q));
        if (!(lo[q] <= hi[q])) return std::nullopt; // empty intersection
    }
    return Cube(std::move(lo), std::move(hi));
}

CountingConstraint constraint_intersect(const CountingConstraint& x,
                                        const CountingConstraint& y) {
    require_same_universe(x, y);
    std::vector<Cube> cubes;
    for (const Cube& a : x.cubes())
        for (const Cube& b : y.cubes())
            if (auto c = cube_intersect(a, b)) cubes.push_back(std::move(*c));
    return CountingConstraint(x.state_count(), std::move(cubes));
}

namespace {

// Complement of a single cube: for each state, the configurations strictly
// below its lower bound or strictly above its finite upper bound.
CountingConstraint complement_one(const Cube& c) {
    std::size_t n = c.state_count();
    std::vector<Cube> cubes;
    for (StateId q = 0; q < n; ++q) {
        if (c.lower(q) >= 1)
            cubes.push_back(
                Cube::universal(n).with_bounds(q, 0, UBound::of(c.lower(q) - 1)));
        if (!c.upper(q).is_inf())
            cubes.push_back(Cube::universal(n).with_bounds(
                q, c.upper(q).value() + 1, UBound::inf()));
    }
    return CountingConstraint(n, std::move(cubes));
}

} // namespace

CountingConstraint constraint_complement(const CountingConstraint& x) {
    CountingConstraint result = CountingConstraint::universe(x.state_count());
    for (const Cube& c : x.cubes())
        result = constraint_intersect(result, complement_one(c));
    return result;
}

ConstraintNorm constraint_norm(const CountingConstraint& x) {
    ConstraintNorm out;
    for (const Cube& c : x.cubes()) {
        out.per_cube.push_back(cube_norm(c));
        out.norm = std::max(out.norm, out.per_cube.back().norm);
    }
    return out;
}

bool constraint_equiv_bounded(const CountingConstraint& x,
                              const CountingConstraint& y, Count bound,
                              std::size_t enumeration_cap) {
    require_same_universe(x, y);
    std::size_t n = x.state_count();
    // (bound+1)^n points to visit
    std::size_t total = 1;
    for (std::size_t q = 0; q < n; ++q) {
        if (total > enumeration_cap / (bound + 1))
            throw ResourceLimitError(
                "bounded equivalence enumeration exceeds cap");
        total *= static_cast<std::size_t>(bound + 1);
    }
    std::vector<Count> point(n, 0);
    for (;;) {
        MultiSet m = from_dense(point);
        if (x.contains(m) != y.contains(m)) return false;
        std::size_t q = 0;
        while (q < n && point[q] == bound) point[q++] = 0;
        if (q == n) break;
        ++point[q];
    }
    return true;
}

namespace {

void enumerate_members_rec(const Cube& c, std::size_t q, Count budget,
                           Count size_lo, Count placed, Count slack,
                           std::vector<Count>& current,
                           std::vector<MultiSet>& out) {
    std::size_t n = c.state_count();
    if (q == n) {
        if (placed >= size_lo) out.push_back(from_dense(current));
        return;
    }
    Count lo = c.lower(q);
    if (lo > budget) return;
    Count hi = c.upper(q).is_inf() ? lo + slack
                                   : c.upper(q).value();
    hi = std::min(hi, budget);
    for (Count v = lo; v <= hi; ++v) {
        current[q] = v;
        enumerate_members_rec(c, q + 1, budget - v, size_lo, placed + v, slack,
                              current, out);
    }
    current[q] = 0;
}

} // namespace

std::vector<MultiSet> enumerate_cube_members(const Cube& c, Count size_lo,
                                             Count size_hi, Count slack) {
    std::vector<MultiSet> out;
    std::vector<Count> current(c.state_count(), 0);
    enumerate_members_rec(c, 0, size_hi, size_lo, 0, slack, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cubereach
