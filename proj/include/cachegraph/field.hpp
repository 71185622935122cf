#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace cachegraph {

/// Field elements are encoded as the integers 0..q-1. For an extension
/// field GF(p^e) the encoding is the base-p number whose digit i is the
/// coefficient of x^i in the polynomial representative.
using Elem = std::uint32_t;

/// Arithmetic in GF(q) for a prime power q <= 2^16.
///
/// Prime fields use modular arithmetic. Extension fields are built over the
/// lexicographically least monic irreducible polynomial of degree e, where
/// polynomials are ordered by the base-p value of their non-leading
/// coefficients (c_0 + c_1 p + ... + c_{e-1} p^{e-1}). Multiplication goes
/// through exp/log tables of the smallest primitive element, addition through
/// digit-wise addition mod p. Tables are shared and immutable, so copies are
/// cheap and concurrent use is safe.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  /// Throws Error(NotPrimePower) unless q is a prime power in [2, 2^16].
  explicit Field(std::uint32_t q);

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return e_; }
  /// Coefficients c_0..c_e of the reduction polynomial (c_e = 1); {0, 1}
  /// (i.e. x) for prime fields.
  const std::vector<Elem>& reduction() const noexcept;
  /// The primitive element used for the exp/log tables.
  Elem generator() const noexcept;

  Elem add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (e_ == 1) {
      Elem s = a + b;
      return s >= q_ ? s - q_ : s;
    }
    return add_digits(a, b);
  }
  Elem neg(Elem a) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (e_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % q_);
    const auto& t = *tables_;
    std::uint32_t s = t.log[a] + t.log[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return t.exp[s];
  }
  /// Multiplicative inverse; a must be nonzero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const noexcept;

  bool operator==(const Field& other) const noexcept { return q_ == other.q_; }

 private:
  struct Tables {
    std::vector<Elem> reduction;
    Elem generator = 0;
    std::vector<Elem> exp;  // size q-1
    std::vector<std::uint32_t> log;  // size q, log[0] unused
    std::vector<Elem> inv;  // size q, inv[0] unused
  };

  Elem add_digits(Elem a, Elem b) const noexcept;

  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::shared_ptr<const Tables> tables_;
};

/// Returns (p, e) with q = p^e, or throws Error(NotPrimePower).
std::pair<std::uint32_t, std::uint32_t> prime_power_decomposition(std::uint64_t q);

bool is_prime_power(std::uint64_t q);

}  // namespace cachegraph
