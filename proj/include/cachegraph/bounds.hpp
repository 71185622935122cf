#pragma once

// Converse bounds on the delivery rate for a fixed placement, plus exact
// checks of the Gaussian-binomial estimates used to size projective schemes.

#include "cachegraph/exact.hpp"
#include "cachegraph/linegraph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cachegraph {

struct LowerBoundResult {
  UserId user = 0;        // k, adjacent to a maximum-degree subfile
  SubfileId subfile = 0;  // that subfile
  std::vector<UserId> ordering;  // k_1 = k, ..., k_{N'}
  /// rho[j]: subfiles missed by every one of k_1..k_{j+1}.
  std::vector<std::uint64_t> rho;
  Rational bound;        // sum(rho) / F
  Rational closed_form;  // rate_lower_bound_closed for the same B and N
};

/// Virtual-receiver bound for the placement B with N files. k is the lowest
/// user adjacent to the lowest-index subfile of maximum degree; later users
/// are drawn from N(N(k)), each time taking the one that keeps the most
/// subfiles in the running intersection (lowest index on ties).
/// Throws InvalidArgs if N == 0 or B is empty.
LowerBoundResult rate_lower_bound_general(const BipartiteCachingGraph& b, std::uint64_t N);

/// (min((K + F) u, F u + N) - 1) / F with u = 1 - M/N.
/// Throws InvalidArgs unless 0 < u <= 1 and K, F, N >= 1.
Rational rate_lower_bound_closed(const BigInt& K, const BigInt& F, const Rational& uncached, const BigInt& N);

struct GapCheck {
  Rational rate;         // c / d
  Rational closed_form;  // rate_lower_bound_closed(K, F, c/K, K)
  Rational identity_rhs; // R d (1/F + 1/K) - 1/F
  bool first_branch = false;  // min() picked (K + F) u
  bool identity_holds = false;
  /// (R* + 1/F) / (d (1/F + 1/K)) evaluated at the supplied R*.
  Rational rate_ceiling;
  bool gap_holds = false;  // rate <= rate_ceiling
};

/// For a (c, d)-uniform scheme with N = K files. identity_holds is only
/// meaningful when first_branch is set.
GapCheck check_gap_bound(const BigInt& c, const BigInt& d, const BigInt& K, const BigInt& F,
                         const Rational& r_star_lower);

enum class CheckStatus { Pass, Fail, NotApplicable };
std::string to_string(CheckStatus s);

struct InequalityCheck {
  std::string name;
  CheckStatus status = CheckStatus::NotApplicable;
  Rational lhs, rhs;  // verdict is lhs <= rhs
};

/// Six two-sided estimates:
///   gbinom_lower/upper   q^{(a-b)b}       <= [a,b]         <= q^{(a-b+1)b}
///   ratio_fb_lower/upper q^{(a-f-1)b}     <= [a,b]/[f,b]   <= q^{(a-f+1)b}
///   ratio_af_lower/upper q^{(a-f-b-1)δ}   <= [a,b]/[a,f]   <= q^{(a-f-b+1)δ}, δ = |b - f|
/// The ratio_fb pair needs b <= f and the ratio_af pair f <= a; outside
/// those they are NotApplicable. The ratio_af pair is false in general for
/// b < f (a=2, b=1, f=2, q=2 gives 3 <= 1), and is reported as Fail there.
/// Throws InvalidArgs if b > a or q < 2.
std::vector<InequalityCheck> gaussian_bounds_check(std::uint64_t a, std::uint64_t b, std::uint64_t f,
                                                   std::uint64_t q);

struct RegimeReport {
  std::uint64_t q = 0, k = 0, m = 0, t = 0;
  BigInt K, F, c, d;
  Rational uncached, rate;
  std::vector<InequalityCheck> checks;
  bool all_pass() const;
};

/// Closed-form parameters of the projective scheme and the finite
/// inequalities behind its growth rates:
///   uncached_floor        q^{(m+t-k-1)t} <= u
///   subpacketization_poly F^t <= K^{k-t-m+1}
///   rate_lower            K q^{-2(k-m-t+1)t} <= R
///   rate_upper            R <= K q^{-2(k-m-t-1)t}
///   rate_power            R <= q^{(2m+t-k+1)t}
///   uncached_sqrt_lower   q^{(2m-k+t-2)t} / K <= u^2
///   uncached_sqrt_upper   u^2 <= q^{(2m-k+t+2)t} / K
/// Throws InvalidArgs unless m >= 1, t >= 1, m + t <= k, and
/// NotPrimePower if q is not a prime power.
RegimeReport regime_analysis(std::uint64_t q, std::uint64_t k, std::uint64_t m, std::uint64_t t);

}  // namespace cachegraph
