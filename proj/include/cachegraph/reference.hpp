#pragma once

// Single-threaded, index-free versions of the delivery kernels. Kept as the
// baseline the OpenMP kernels are tested and benchmarked against.

#include "cachegraph/delivery.hpp"

namespace cachegraph::reference {

std::vector<Transmission> encode_transmissions(const CodedCachingScheme& scheme, const DemandVector& demands,
                                               const FileLibrary& library);

/// Locates each missing subfile by scanning the transmission list.
DecodeResult decode_all(const CodedCachingScheme& scheme, const DemandVector& demands,
                        const std::vector<Transmission>& transmissions, const std::vector<UserCache>& caches,
                        const FileLibrary& library);

/// Pairwise check of every clique, O(sum |clique|^2) with no early exit.
bool delivery_cover_valid(const CachingLineGraph& l, const DeliveryCliqueCover& cover);

}  // namespace cachegraph::reference
