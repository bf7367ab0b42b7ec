// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubereach {

// Process counts are naturals; 64 bits regardless of how constants are
// written in input files.
using Count = std::uint64_t;

// States and alphabet letters are interned per model as dense indices with
// stable iteration order.
using StateId = std::uint32_t;
using LetterId = std::uint32_t;

// Ill-formed input: mismatched state sets, malformed labels, broken
// invariants. Distinct from a step that is merely not enabled (reported by
// value, not by exception).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured cap was exceeded and a partial answer would be unsound.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    // splitmix-style mixing; good enough for configuration stores
    v += 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
    return seed ^ v;
}

} // namespace cubereach
