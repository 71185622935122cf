#include "cachegraph/field.hpp"

#include "cachegraph/error.hpp"

#include <string>

namespace cachegraph {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, lowest degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod_prime(std::uint32_t a, std::uint32_t p) {
  // a^(p-2) mod p
  std::uint64_t result = 1, base = a % p;
  std::uint32_t n = p - 2;
  while (n) {
    if (n & 1) result = result * base % p;
    base = base * base % p;
    n >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo a monic divisor, coefficients in GF(p).
Poly poly_mod(Poly a, const Poly& monic, std::uint32_t p) {
  trim(a);
  const std::size_t db = monic.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = lead * monic[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly digits_of(std::uint32_t value, std::uint32_t p, std::uint32_t count) {
  Poly d(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    d[i] = value % p;
    value /= p;
  }
  return d;
}

std::uint32_t value_of(const Poly& d, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= deg / 2; ++d) {
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t v = 0; v < count; ++v) {
      Poly g = digits_of(v, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly least_irreducible(std::uint32_t p, std::uint32_t e) {
  std::uint32_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  for (std::uint32_t v = 0; v < count; ++v) {
    Poly f = digits_of(v, p, e);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw Error(ErrorCode::InternalError, "no irreducible polynomial found");
}

std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p, std::uint32_t e,
                       const Poly& reduction) {
  if (e == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
  const Poly da = digits_of(a, p, e), db = digits_of(b, p, e);
  Poly prod(2 * e - 1, 0);
  for (std::uint32_t i = 0; i < e; ++i)
    for (std::uint32_t j = 0; j < e; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p);
  Poly r = poly_mod(prod, reduction, p);
  r.resize(e, 0);
  return value_of(r, p);
}

}  // namespace

std::pair<std::uint32_t, std::uint32_t> prime_power_decomposition(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {static_cast<std::uint32_t>(q), 1};
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) throw Error(ErrorCode::NotPrimePower, "order has two distinct prime factors");
  return {static_cast<std::uint32_t>(p), e};
}

bool is_prime_power(std::uint64_t q) {
  try {
    prime_power_decomposition(q);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Field::Field(std::uint32_t q) : q_(q) {
  if (q < 2 || q > kMaxOrder)
    throw Error(ErrorCode::NotPrimePower, "field order must be a prime power in [2, 65536], got " + std::to_string(q));
  std::tie(p_, e_) = prime_power_decomposition(q);

  auto tables = std::make_shared<Tables>();
  if (e_ == 1) {
    tables->reduction = {0, 1};
  } else {
    tables->reduction = least_irreducible(p_, e_);
  }

  // Smallest primitive element: walk powers until they cycle back to 1.
  tables->exp.assign(q - 1, 0);
  tables->log.assign(q, 0);
  bool found = false;
  for (Elem g = 1; g < q && !found; ++g) {
    Elem x = 1;
    std::uint32_t n = 0;
    do {
      tables->exp[n] = x;
      x = slow_mul(x, g, p_, e_, tables->reduction);
      ++n;
    } while (x != 1 && n < q - 1);
    if (x == 1 && n == q - 1) {
      tables->generator = g;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::InternalError, "no primitive element in GF(" + std::to_string(q) + ")");

  std::vector<bool> seen(q, false);
  for (std::uint32_t i = 0; i + 1 < q; ++i) {
    const Elem v = tables->exp[i];
    if (v == 0 || seen[v]) throw Error(ErrorCode::InternalError, "exp table is not a bijection");
    seen[v] = true;
    tables->log[v] = i;
  }

  tables->inv.assign(q, 0);
  for (Elem a = 1; a < q; ++a) {
    if (e_ == 1) {
      tables->inv[a] = inverse_mod_prime(a, p_);
    } else {
      const std::uint32_t l = tables->log[a];
      tables->inv[a] = tables->exp[l == 0 ? 0 : (q - 1 - l)];
    }
  }
  tables_ = std::move(tables);
}

const std::vector<Elem>& Field::reduction() const noexcept { return tables_->reduction; }

Elem Field::generator() const noexcept { return tables_->generator; }

Elem Field::add_digits(Elem a, Elem b) const noexcept {
  Elem result = 0, place = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const Elem da = a % p_, db = b % p_;
    Elem s = da + db;
    if (s >= p_) s -= p_;
    result += s * place;
    place *= p_;
    a /= p_;
    b /= p_;
  }
  return result;
}

Elem Field::neg(Elem a) const noexcept {
  if (p_ == 2 || a == 0) return a;
  if (e_ == 1) return q_ - a;
  Elem result = 0, place = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const Elem d = a % p_;
    result += (d == 0 ? 0 : p_ - d) * place;
    place *= p_;
    a /= p_;
  }
  return result;
}

Elem Field::inv(Elem a) const {
  if (a == 0 || a >= q_) throw Error(ErrorCode::InvalidArgs, "inverse of zero or out-of-range element");
  return tables_->inv[a];
}

Elem Field::pow(Elem a, std::uint64_t n) const noexcept {
  if (n == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t l = std::uint64_t{tables_->log[a]} * (n % (q_ - 1)) % (q_ - 1);
  return tables_->exp[l];
}

}  // namespace cachegraph
