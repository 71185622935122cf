#include "cachegraph/bounds.hpp"

#include "cachegraph/error.hpp"
#include "cachegraph/field.hpp"
#include "cachegraph/gaussian.hpp"

#include <algorithm>

namespace cachegraph {

LowerBoundResult rate_lower_bound_general(const BipartiteCachingGraph& b, std::uint64_t N) {
  if (N == 0) throw Error(ErrorCode::InvalidArgs, "N must be at least 1");
  if (b.K == 0 || b.F == 0) throw Error(ErrorCode::InvalidArgs, "empty caching graph");
  b.validate();

  std::vector<std::vector<UserId>> users_of(b.F);
  for (UserId k = 0; k < b.K; ++k)
    for (SubfileId f : b.missing[k]) users_of[f].push_back(k);

  LowerBoundResult r;
  for (SubfileId f = 1; f < b.F; ++f)
    if (users_of[f].size() > users_of[r.subfile].size()) r.subfile = f;
  r.user = users_of[r.subfile].empty() ? 0 : users_of[r.subfile].front();

  // N(N(k)): users sharing a missing subfile with k, k included.
  std::vector<char> in_h(b.K, 0);
  in_h[r.user] = 1;
  for (SubfileId f : b.missing[r.user])
    for (UserId u : users_of[f]) in_h[u] = 1;
  const auto h_users = static_cast<std::uint64_t>(std::count(in_h.begin(), in_h.end(), 1));
  const std::uint64_t n_prime = std::min(N, h_users);

  std::vector<SubfileId> common = b.missing[r.user];
  std::vector<char> used(b.K, 0);
  used[r.user] = 1;
  r.ordering.push_back(r.user);
  r.rho.push_back(common.size());
  std::vector<SubfileId> scratch;
  while (r.ordering.size() < n_prime) {
    UserId best = b.K;
    std::size_t best_size = 0;
    for (UserId u = 0; u < b.K; ++u) {
      if (!in_h[u] || used[u]) continue;
      scratch.clear();
      std::set_intersection(common.begin(), common.end(), b.missing[u].begin(), b.missing[u].end(),
                            std::back_inserter(scratch));
      if (best == b.K || scratch.size() > best_size) {
        best = u;
        best_size = scratch.size();
      }
    }
    scratch.clear();
    std::set_intersection(common.begin(), common.end(), b.missing[best].begin(), b.missing[best].end(),
                          std::back_inserter(scratch));
    common.swap(scratch);
    used[best] = 1;
    r.ordering.push_back(best);
    r.rho.push_back(common.size());
  }

  std::uint64_t total = 0;
  for (auto x : r.rho) total += x;
  r.bound = Rational(BigInt(total), BigInt(b.F));
  r.closed_form = rate_lower_bound_closed(BigInt(b.K), BigInt(b.F), b.uncached_fraction(), BigInt(N));
  return r;
}

Rational rate_lower_bound_closed(const BigInt& K, const BigInt& F, const Rational& uncached, const BigInt& N) {
  if (K <= 0 || F <= 0 || N <= 0) throw Error(ErrorCode::InvalidArgs, "K, F and N must be positive");
  if (uncached <= 0 || uncached > 1) throw Error(ErrorCode::InvalidArgs, "uncached fraction must lie in (0, 1]");
  const Rational first = Rational(K + F) * uncached;
  const Rational second = Rational(F) * uncached + Rational(N);
  return (std::min(first, second) - 1) / Rational(F);
}

GapCheck check_gap_bound(const BigInt& c, const BigInt& d, const BigInt& K, const BigInt& F,
                         const Rational& r_star_lower) {
  if (c <= 0 || d <= 0 || F <= 0 || c > K)
    throw Error(ErrorCode::InvalidArgs, "need 1 <= c <= K and d, F >= 1");
  GapCheck g;
  const Rational u{c, K};
  const Rational inv_f{BigInt(1), F}, inv_k{BigInt(1), K};
  g.rate = Rational(c, d);
  g.closed_form = rate_lower_bound_closed(K, F, u, K);
  g.first_branch = Rational(K + F) * u <= Rational(F) * u + Rational(K);
  g.identity_rhs = g.rate * Rational(d) * (inv_f + inv_k) - inv_f;
  g.identity_holds = g.first_branch && g.identity_rhs == g.closed_form;
  g.rate_ceiling = (r_star_lower + inv_f) / (Rational(d) * (inv_f + inv_k));
  g.gap_holds = g.rate <= g.rate_ceiling;
  return g;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "n/a";
  }
  return "?";
}

namespace {

InequalityCheck compare(std::string name, Rational lhs, Rational rhs) {
  InequalityCheck c{std::move(name), CheckStatus::Pass, std::move(lhs), std::move(rhs)};
  if (c.lhs > c.rhs) c.status = CheckStatus::Fail;
  return c;
}

long long signed_exp(std::uint64_t x) { return static_cast<long long>(x); }

}  // namespace

std::vector<InequalityCheck> gaussian_bounds_check(std::uint64_t a, std::uint64_t b, std::uint64_t f,
                                                   std::uint64_t q) {
  if (b > a) throw Error(ErrorCode::InvalidArgs, "need b <= a");
  if (q < 2) throw Error(ErrorCode::InvalidArgs, "need q >= 2");
  const long long A = signed_exp(a), B = signed_exp(b), Fd = signed_exp(f);
  const Rational ab(gaussian_binomial(a, b, q));

  std::vector<InequalityCheck> out;
  out.push_back(compare("gbinom_lower", rational_pow(q, (A - B) * B), ab));
  out.push_back(compare("gbinom_upper", ab, rational_pow(q, (A - B + 1) * B)));

  if (b <= f) {
    const Rational ratio = ab / Rational(gaussian_binomial(f, b, q));
    out.push_back(compare("ratio_fb_lower", rational_pow(q, (A - Fd - 1) * B), ratio));
    out.push_back(compare("ratio_fb_upper", ratio, rational_pow(q, (A - Fd + 1) * B)));
  } else {
    out.push_back({"ratio_fb_lower", CheckStatus::NotApplicable, {}, {}});
    out.push_back({"ratio_fb_upper", CheckStatus::NotApplicable, {}, {}});
  }

  if (f <= a) {
    const long long delta = B > Fd ? B - Fd : Fd - B;
    const Rational ratio = ab / Rational(gaussian_binomial(a, f, q));
    out.push_back(compare("ratio_af_lower", rational_pow(q, (A - Fd - B - 1) * delta), ratio));
    out.push_back(compare("ratio_af_upper", ratio, rational_pow(q, (A - Fd - B + 1) * delta)));
  } else {
    out.push_back({"ratio_af_lower", CheckStatus::NotApplicable, {}, {}});
    out.push_back({"ratio_af_upper", CheckStatus::NotApplicable, {}, {}});
  }
  return out;
}

bool RegimeReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Pass; });
}

RegimeReport regime_analysis(std::uint64_t q, std::uint64_t k, std::uint64_t m, std::uint64_t t) {
  if (!is_prime_power(q)) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (m < 1 || t < 1 || m + t > k) throw Error(ErrorCode::InvalidArgs, "need m >= 1, t >= 1 and m + t <= k");
  RegimeReport r{q, k, m, t, {}, {}, {}, {}, {}, {}, {}};
  r.K = gaussian_binomial(k, t, q);
  r.F = gaussian_binomial(k, m + t, q);
  r.c = gaussian_binomial(m + t, t, q);
  r.d = gaussian_binomial(k - m, t, q);
  r.uncached = Rational(r.c, r.K);
  r.rate = Rational(r.c, r.d);

  const long long K_ = signed_exp(k), M = signed_exp(m), T = signed_exp(t);
  const Rational Kr(r.K);
  const auto ipow = [](const BigInt& base, long long e) {
    return Rational(boost::multiprecision::pow(base, static_cast<unsigned>(e)));
  };
  r.checks.push_back(compare("uncached_floor", rational_pow(q, (M + T - K_ - 1) * T), r.uncached));
  r.checks.push_back(compare("subpacketization_poly", ipow(r.F, T), ipow(r.K, K_ - T - M + 1)));
  r.checks.push_back(compare("rate_lower", Kr * rational_pow(q, -2 * (K_ - M - T + 1) * T), r.rate));
  r.checks.push_back(compare("rate_upper", r.rate, Kr * rational_pow(q, -2 * (K_ - M - T - 1) * T)));
  r.checks.push_back(compare("rate_power", r.rate, rational_pow(q, (2 * M + T - K_ + 1) * T)));
  const Rational u2 = r.uncached * r.uncached;
  r.checks.push_back(compare("uncached_sqrt_lower", rational_pow(q, (2 * M - K_ + T - 2) * T) / Kr, u2));
  r.checks.push_back(compare("uncached_sqrt_upper", u2, rational_pow(q, (2 * M - K_ + T + 2) * T) / Kr));
  return r;
}

}  // namespace cachegraph
