#include "cachegraph/subspace.hpp"

#include "cachegraph/error.hpp"
#include "cachegraph/gaussian.hpp"

#include <algorithm>
#include <string>

namespace cachegraph {

namespace {

// In-place Gauss-Jordan on a rows x k row-major matrix. Returns the rank;
// the first `rank` rows are then the reduced row echelon basis.
std::size_t reduce(const Field& f, std::size_t k, std::vector<Elem>& m) {
  const std::size_t rows = k == 0 ? 0 : m.size() / k;
  std::size_t r = 0;
  for (std::size_t col = 0; col < k && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && m[piv * k + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      std::swap_ranges(m.begin() + piv * k, m.begin() + (piv + 1) * k, m.begin() + r * k);
    Elem* pr = m.data() + r * k;
    if (pr[col] != 1) {
      const Elem s = f.inv(pr[col]);
      for (std::size_t j = col; j < k; ++j) pr[j] = f.mul(pr[j], s);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Elem* pi = m.data() + i * k;
      const Elem factor = pi[col];
      if (factor == 0) continue;
      for (std::size_t j = col; j < k; ++j) pi[j] = f.sub(pi[j], f.mul(factor, pr[j]));
    }
    ++r;
  }
  return r;
}

void check_ambient(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorCode::InvalidArgs, "subspaces live in different ambient spaces");
}

void check_cap(const BigInt& count, std::uint64_t cap) {
  if (count > cap)
    throw Error(ErrorCode::CapExceeded,
                "enumeration of " + count.str() + " subspaces exceeds cap " + std::to_string(cap));
}

std::vector<Elem> concat(const SubspaceBasis& a, const SubspaceBasis& b) {
  std::vector<Elem> m(a.entries());
  m.insert(m.end(), b.entries().begin(), b.entries().end());
  return m;
}

}  // namespace

std::vector<Vector> SubspaceBasis::rows() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::vector<std::size_t> SubspaceBasis::pivots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i) {
    auto r = row(i);
    out.push_back(static_cast<std::size_t>(std::find_if(r.begin(), r.end(), [](Elem e) { return e != 0; }) -
                                           r.begin()));
  }
  return out;
}

std::size_t SubspaceHash::operator()(const SubspaceBasis& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ s.ambient_dim();
  for (Elem e : s.entries()) {
    h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

SubspaceBasis rref(const Field& field, std::size_t k, std::span<const Elem> flat_rows) {
  if (k == 0 ? !flat_rows.empty() : flat_rows.size() % k != 0)
    throw Error(ErrorCode::InvalidArgs, "matrix rows must all have length k");
  std::vector<Elem> m(flat_rows.begin(), flat_rows.end());
  for (Elem e : m)
    if (e >= field.order()) throw Error(ErrorCode::InvalidArgs, "matrix entry outside the field");
  const std::size_t r = reduce(field, k, m);
  m.resize(r * k);
  SubspaceBasis s;
  s.k_ = k;
  s.entries_ = std::move(m);
  return s;
}

SubspaceBasis rref(const Field& field, std::size_t k, const std::vector<Vector>& rows) {
  std::vector<Elem> flat;
  flat.reserve(rows.size() * k);
  for (const auto& r : rows) {
    if (r.size() != k) throw Error(ErrorCode::InvalidArgs, "matrix rows must all have length k");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return rref(field, k, std::span<const Elem>(flat));
}

SubspaceBasis subspace_from_canonical(std::size_t k, std::vector<Elem> entries) {
  if (k == 0 ? !entries.empty() : entries.size() % k != 0)
    throw Error(ErrorCode::InvalidArgs, "canonical entries must be a multiple of k");
  SubspaceBasis s;
  s.k_ = k;
  s.entries_ = std::move(entries);
  return s;
}

std::size_t rank(const Field& field, std::size_t k, std::span<const Elem> flat_rows) {
  std::vector<Elem> m(flat_rows.begin(), flat_rows.end());
  return reduce(field, k, m);
}

SubspaceBasis whole_space(std::size_t k) {
  std::vector<Elem> id(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) id[i * k + i] = 1;
  return subspace_from_canonical(k, std::move(id));
}

std::vector<SubspaceBasis> enumerate_subspaces(const Field& field, std::size_t k, std::size_t d,
                                               std::uint64_t cap) {
  if (d > k) throw Error(ErrorCode::InvalidArgs, "subspace dimension exceeds ambient dimension");
  const BigInt total = gaussian_binomial(k, d, field.order());
  check_cap(total, cap);

  std::vector<SubspaceBasis> out;
  out.reserve(total.convert_to<std::size_t>());
  const Elem q = field.order();

  std::vector<std::size_t> piv(d);
  for (std::size_t i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    std::vector<Elem> tmpl(d * k, 0);
    std::vector<bool> is_pivot(k, false);
    for (std::size_t r = 0; r < d; ++r) {
      tmpl[r * k + piv[r]] = 1;
      is_pivot[piv[r]] = true;
    }
    std::vector<std::size_t> free;  // flat positions, row-major
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = piv[r] + 1; c < k; ++c)
        if (!is_pivot[c]) free.push_back(r * k + c);

    // Odometer over the free entries, first position most significant.
    std::vector<Elem> digits(free.size(), 0);
    while (true) {
      for (std::size_t j = 0; j < free.size(); ++j) tmpl[free[j]] = digits[j];
      out.push_back(subspace_from_canonical(k, tmpl));
      std::size_t j = free.size();
      while (j > 0 && digits[j - 1] == q - 1) digits[--j] = 0;
      if (j == 0) break;
      ++digits[j - 1];
    }

    // Next pivot set in lexicographic order.
    std::size_t i = d;
    while (i > 0 && piv[i - 1] == k - d + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

std::vector<SubspaceBasis> subspaces_containing(const Field& field, const SubspaceBasis& v,
                                                std::size_t m, std::uint64_t cap) {
  const std::size_t k = v.ambient_dim(), d = v.dim();
  if (m < d || m > k) throw Error(ErrorCode::InvalidArgs, "need dim(V) <= m <= k");

  // F^k = V (+) span{e_c : c not a pivot of V}, and every W >= V is V (+) (W meet that complement).
  std::vector<bool> is_pivot(k, false);
  for (std::size_t p : v.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> complement;
  for (std::size_t c = 0; c < k; ++c)
    if (!is_pivot[c]) complement.push_back(c);

  const auto parts = enumerate_subspaces(field, k - d, m - d, cap);
  std::vector<SubspaceBasis> out;
  out.reserve(parts.size());
  std::vector<Elem> flat;
  for (const auto& u : parts) {
    flat.assign(v.entries().begin(), v.entries().end());
    for (std::size_t r = 0; r < u.dim(); ++r) {
      std::vector<Elem> row(k, 0);
      auto ur = u.row(r);
      for (std::size_t j = 0; j < complement.size(); ++j) row[complement[j]] = ur[j];
      flat.insert(flat.end(), row.begin(), row.end());
    }
    out.push_back(rref(field, k, std::span<const Elem>(flat)));
  }
  return out;
}

SubspaceBasis embed_in(const Field& field, const SubspaceBasis& relative, const SubspaceBasis& x) {
  const std::size_t k = x.ambient_dim(), n = x.dim();
  if (relative.ambient_dim() != n)
    throw Error(ErrorCode::InvalidArgs, "relative subspace must live in F^{dim x}");
  std::vector<Elem> flat(relative.dim() * k, 0);
  for (std::size_t r = 0; r < relative.dim(); ++r) {
    auto coeffs = relative.row(r);
    Elem* out = flat.data() + r * k;
    for (std::size_t i = 0; i < n; ++i) {
      if (coeffs[i] == 0) continue;
      auto xr = x.row(i);
      for (std::size_t c = 0; c < k; ++c) out[c] = field.add(out[c], field.mul(coeffs[i], xr[c]));
    }
  }
  return rref(field, k, std::span<const Elem>(flat));
}

std::vector<SubspaceBasis> subspaces_within(const Field& field, const SubspaceBasis& x,
                                            std::size_t d, std::uint64_t cap) {
  const auto rel = enumerate_subspaces(field, x.dim(), d, cap);
  std::vector<SubspaceBasis> out;
  out.reserve(rel.size());
  for (const auto& r : rel) out.push_back(embed_in(field, r, x));
  return out;
}

SubspaceBasis subspace_sum(const Field& field, const SubspaceBasis& a, const SubspaceBasis& b) {
  check_ambient(a, b);
  const auto m = concat(a, b);
  return rref(field, a.ambient_dim(), std::span<const Elem>(m));
}

std::size_t sum_dim(const Field& field, const SubspaceBasis& a, const SubspaceBasis& b) {
  check_ambient(a, b);
  auto m = concat(a, b);
  return reduce(field, a.ambient_dim(), m);
}

SubspaceBasis direct_sum(const Field& field, const SubspaceBasis& a, const SubspaceBasis& b) {
  SubspaceBasis s = subspace_sum(field, a, b);
  if (s.dim() != a.dim() + b.dim())
    throw Error(ErrorCode::NotDirect, "subspaces intersect nontrivially");
  return s;
}

SubspaceBasis subspace_intersection(const Field& field, const SubspaceBasis& a,
                                    const SubspaceBasis& b) {
  check_ambient(a, b);
  // Zassenhaus: reduce [a | a ; b | 0]; rows with a zero left half span the
  // intersection in their right half.
  const std::size_t k = a.ambient_dim(), w = 2 * k;
  std::vector<Elem> m;
  m.reserve((a.dim() + b.dim()) * w);
  for (std::size_t r = 0; r < a.dim(); ++r) {
    auto ar = a.row(r);
    m.insert(m.end(), ar.begin(), ar.end());
    m.insert(m.end(), ar.begin(), ar.end());
  }
  for (std::size_t r = 0; r < b.dim(); ++r) {
    auto br = b.row(r);
    m.insert(m.end(), br.begin(), br.end());
    m.insert(m.end(), k, 0);
  }
  const std::size_t rk = reduce(field, w, m);
  std::vector<Elem> inter;
  for (std::size_t r = 0; r < rk; ++r) {
    const Elem* row = m.data() + r * w;
    if (std::all_of(row, row + k, [](Elem e) { return e == 0; })) inter.insert(inter.end(), row + k, row + w);
  }
  return rref(field, k, std::span<const Elem>(inter));
}

bool subspace_contains(const Field& field, const SubspaceBasis& a, const SubspaceBasis& b) {
  return sum_dim(field, a, b) == a.dim();
}

}  // namespace cachegraph
