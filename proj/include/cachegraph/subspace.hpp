#pragma once

#include "cachegraph/field.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cachegraph {

using Vector = std::vector<Elem>;

/// A subspace of F_q^k held as its unique reduced-row-echelon basis.
///
/// Rows are stored row-major in one flat array. The only ways to obtain one
/// are rref() and the enumeration helpers below, all of which produce the
/// canonical form, so `==` is subspace equality and `<=>` gives a total order
/// usable for maps.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;

  std::size_t ambient_dim() const noexcept { return k_; }
  std::size_t dim() const noexcept { return k_ == 0 ? 0 : entries_.size() / k_; }

  std::span<const Elem> row(std::size_t i) const noexcept {
    return {entries_.data() + i * k_, k_};
  }
  std::vector<Vector> rows() const;
  const std::vector<Elem>& entries() const noexcept { return entries_; }
  /// Pivot column of each row, strictly increasing.
  std::vector<std::size_t> pivots() const;

  friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;
  friend auto operator<=>(const SubspaceBasis&, const SubspaceBasis&) = default;

 private:
  friend SubspaceBasis rref(const Field&, std::size_t, std::span<const Elem>);
  friend SubspaceBasis subspace_from_canonical(std::size_t, std::vector<Elem>);

  std::size_t k_ = 0;
  std::vector<Elem> entries_;
};

struct SubspaceHash {
  std::size_t operator()(const SubspaceBasis& s) const noexcept;
};

/// Canonical basis of the row span of a flat row-major matrix with k columns.
/// Zero rows are dropped.
SubspaceBasis rref(const Field& field, std::size_t k, std::span<const Elem> flat_rows);
SubspaceBasis rref(const Field& field, std::size_t k, const std::vector<Vector>& rows);

/// Wraps entries already known to be in reduced row echelon form. Used by the
/// enumerator; not validated beyond the shape.
SubspaceBasis subspace_from_canonical(std::size_t k, std::vector<Elem> entries);

/// Rank of the row span of a flat row-major matrix, without building a basis.
std::size_t rank(const Field& field, std::size_t k, std::span<const Elem> flat_rows);

constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// All d-dimensional subspaces of F_q^k in canonical form. Ordered by pivot
/// column set (lexicographic), then by the free entries read row-major as a
/// base-q number. Throws CapExceeded if there are more than `cap` of them.
std::vector<SubspaceBasis> enumerate_subspaces(const Field& field, std::size_t k, std::size_t d,
                                               std::uint64_t cap = kDefaultEnumerationCap);

/// All m-dimensional subspaces containing v, ordered by the enumeration order
/// of their intersection with the coordinate complement of v.
std::vector<SubspaceBasis> subspaces_containing(const Field& field, const SubspaceBasis& v,
                                                std::size_t m,
                                                std::uint64_t cap = kDefaultEnumerationCap);

/// All d-dimensional subspaces of x, enumerated in coordinates relative to
/// x's canonical basis and mapped back to the ambient space.
std::vector<SubspaceBasis> subspaces_within(const Field& field, const SubspaceBasis& x,
                                            std::size_t d,
                                            std::uint64_t cap = kDefaultEnumerationCap);

/// Image of a subspace of F_q^{dim x} under coordinates -> ambient vectors of x.
SubspaceBasis embed_in(const Field& field, const SubspaceBasis& relative, const SubspaceBasis& x);

SubspaceBasis subspace_sum(const Field& field, const SubspaceBasis& a, const SubspaceBasis& b);

/// a (+) b; throws NotDirect when a and b share a nonzero vector.
SubspaceBasis direct_sum(const Field& field, const SubspaceBasis& a, const SubspaceBasis& b);

SubspaceBasis subspace_intersection(const Field& field, const SubspaceBasis& a,
                                    const SubspaceBasis& b);

/// True when b is a subspace of a.
bool subspace_contains(const Field& field, const SubspaceBasis& a, const SubspaceBasis& b);

/// dim(a + b) without materializing the basis.
std::size_t sum_dim(const Field& field, const SubspaceBasis& a, const SubspaceBasis& b);

/// a and b intersect only in zero.
inline bool trivially_intersecting(const Field& field, const SubspaceBasis& a,
                                   const SubspaceBasis& b) {
  return sum_dim(field, a, b) == a.dim() + b.dim();
}

SubspaceBasis whole_space(std::size_t k);

}  // namespace cachegraph
