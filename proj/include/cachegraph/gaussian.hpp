#pragma once

#include "cachegraph/exact.hpp"

#include <cstdint>

namespace cachegraph {

/// Gaussian binomial [a, b]_q: the number of b-dimensional subspaces of an
/// a-dimensional space over GF(q). Computed from the product formula
///   prod_{i=0}^{b-1} (q^{a-i} - 1) / (q^{b-i} - 1)
/// in exact arithmetic; equals 1 when b == 0 or b == a.
/// Throws InvalidArgs if b > a or q < 2.
BigInt gaussian_binomial(std::uint64_t a, std::uint64_t b, std::uint64_t q);

/// Number of m-dimensional subspaces of an (m+t)-dimensional space meeting a
/// fixed t-dimensional subspace in exactly dimension i:
///   q^{(m-i)(t-i)} [m, i]_q [t, i]_q.
/// Requires 1 <= i <= min(m, t).
BigInt count_intersecting(std::uint64_t m, std::uint64_t t, std::uint64_t i, std::uint64_t q);

/// Convenience for values known to fit (enumeration sizes); throws CapExceeded
/// if the value does not fit in 64 bits.
std::uint64_t to_u64(const BigInt& value);

}  // namespace cachegraph
