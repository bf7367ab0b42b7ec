// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cubereach/common.hpp"
#include "cubereach/multiset.hpp"

namespace cubereach {

/// An upper bound: a natural or infinity. Arithmetic saturates at infinity.
/// Infinity is never allowed in lower bounds, which stay plain Counts.
class UBound {
public:
    constexpr UBound() : v_(kInfRep) {} // default: unconstrained
    static constexpr UBound inf() { return UBound(); }
    static constexpr UBound of(Count c) {
        UBound u;
        u.v_ = c;
        return u;
    }

    constexpr bool is_inf() const { return v_ == kInfRep; }
    /// pre: !is_inf()
    constexpr Count value() const { return v_; }

    constexpr UBound plus(Count c) const {
        return is_inf() ? inf() : of(v_ + c);
    }

    friend constexpr bool operator==(UBound, UBound) = default;
    friend constexpr auto operator<=>(UBound, UBound) = default;
    friend constexpr bool operator<=(Count c, UBound u) {
        return u.is_inf() || c <= u.v_;
    }
    friend constexpr bool operator<=(UBound u, Count c) {
        return !u.is_inf() && u.v_ <= c;
    }

    static constexpr UBound min(UBound a, UBound b) { return a < b ? a : b; }

private:
    static constexpr Count kInfRep = std::numeric_limits<Count>::max();
    Count v_;
};

/// A cube over states 0..n-1: per-state lower and upper bounds, uppers
/// possibly infinite. Denotes { M : lower <= M <= upper componentwise }.
/// A valid cube is never empty (its lower-bound multiset is a member).
class Cube {
public:
    /// Throws DomainError unless lower[q] <= upper[q] for every q.
    Cube(std::vector<Count> lower, std::vector<UBound> upper);

    /// All states 0..inf.
    static Cube universal(std::size_t n_states);
    /// The single configuration m, over a universe of n states.
    static Cube exact(const MultiSet& m, std::size_t n_states);

    std::size_t state_count() const { return lower_.size(); }
    Count lower(StateId q) const { return lower_[q]; }
    UBound upper(StateId q) const { return upper_[q]; }
    std::span<const Count> lowers() const { return lower_; }
    std::span<const UBound> uppers() const { return upper_; }

    /// Copy with the bounds of one state replaced.
    Cube with_bounds(StateId q, Count lo, UBound hi) const;

    /// Membership; throws DomainError if m mentions states outside the
    /// universe.
    bool contains(const MultiSet& m) const;

    Count lower_sum() const;            // sum of lower components
    Count finite_upper_sum() const;     // sum of finite uppers, 0 if none
    bool all_uppers_finite() const;

    friend bool operator==(const Cube&, const Cube&) = default;

private:
    std::vector<Count> lower_;
    std::vector<UBound> upper_;
};

/// Per-cube norm data: lnorm = sum of lowers, unorm = sum of finite uppers
/// (0 if none finite), norm = max of the two.
struct NormReport {
    Count lnorm = 0;
    Count unorm = 0;
    Count norm = 0;
    friend bool operator==(const NormReport&, const NormReport&) = default;
};

NormReport cube_norm(const Cube& c);

/// A finite union of cubes over a shared state set. The empty list denotes
/// the empty set of configurations.
class CountingConstraint {
public:
    /// Throws DomainError if the cubes disagree on the state count.
    CountingConstraint(std::size_t n_states, std::vector<Cube> cubes);

    static CountingConstraint empty_set(std::size_t n_states);
    static CountingConstraint universe(std::size_t n_states);
    static CountingConstraint single(Cube c);

    std::size_t state_count() const { return n_states_; }
    std::span<const Cube> cubes() const { return cubes_; }
    bool is_empty_union() const { return cubes_.empty(); }

    bool contains(const MultiSet& m) const;

    friend bool operator==(const CountingConstraint&,
                           const CountingConstraint&) = default;

private:
    std::size_t n_states_;
    std::vector<Cube> cubes_;
};

/// Union is list concatenation; norm never exceeds the max of the inputs.
CountingConstraint constraint_union(const CountingConstraint& x,
                                    const CountingConstraint& y);

/// Pairwise cube intersection (max of lowers, min of uppers), dropping empty
/// results; norm never exceeds the sum of the input norms.
CountingConstraint constraint_intersect(const CountingConstraint& x,
                                        const CountingConstraint& y);
std::optional<Cube> cube_intersect(const Cube& a, const Cube& b);

/// Complement. The output is correct by membership but not minimized.
CountingConstraint constraint_complement(const CountingConstraint& x);

struct ConstraintNorm {
    std::vector<NormReport> per_cube;
    Count norm = 0; // max over member cubes; 0 for the empty union
};

ConstraintNorm constraint_norm(const CountingConstraint& x);

/// True iff the two constraints agree on every multiset whose components are
/// all <= bound. Throws ResourceLimitError when the enumeration would exceed
/// enumeration_cap configurations.
bool constraint_equiv_bounded(const CountingConstraint& x,
                              const CountingConstraint& y, Count bound,
                              std::size_t enumeration_cap = 1u << 24);

/// Members of a cube whose total size lies in [size_lo, size_hi]; states
/// with infinite upper bound are capped at lower + slack. Canonical order.
std::vector<MultiSet> enumerate_cube_members(const Cube& c, Count size_lo,
                                             Count size_hi, Count slack);

} // namespace cubereach
