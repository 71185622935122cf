#pragma once

#include "cachegraph/scheme_io.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cachegraph::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kUsage = 2 };

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// One row of the projective sweep. Parameters are computed in closed form;
/// the scheme itself is built (and checked against them) unless the
/// enumeration cap is hit, in which case lb_general is left empty.
/// Throws InternalError if the built scheme disagrees with the closed form.
SweepRow sweep_row(std::uint32_t q, std::uint32_t k, std::uint32_t m, std::uint32_t t, std::uint64_t cap);

/// All (q, k, m, t) with q in qs, k in [k_min, k_max], m, t >= 1, m + t <= k,
/// built in parallel and returned sorted by tuple.
std::vector<SweepRow> sweep_rows(const std::vector<std::uint32_t>& qs, std::uint32_t k_min, std::uint32_t k_max,
                                 std::uint64_t cap);

}  // namespace cachegraph::cli
