#pragma once

#include <cstdint>
#include <vector>

#include "psaga/rng.hpp"

namespace psaga {

/// Indices are zero-based, strictly increasing, all in [0, n).
struct SubsetSample {
  std::vector<std::size_t> indices;
  std::uint64_t iteration = 0;
};

inline constexpr std::uint64_t kEnumerationCap = 1'000'000;

/// Uniformly random s-element subset of {0, ..., n-1}.
///
/// Partial Fisher-Yates over the identity permutation: for k = 0..s-1 swap
/// slot k with slot k + rng.below(n - k), then sort the first s slots. Throws
/// invalid_batch_size unless 1 <= s <= n.
SubsetSample sample_k_subset(Rng& rng, std::size_t n, std::size_t s, std::uint64_t iteration = 0);

/// All C(n, s) subsets in lexicographic order. Throws enumeration_too_large
/// when C(n, s) > cap.
std::vector<SubsetSample> enumerate_k_subsets(std::size_t n, std::size_t s,
                                              std::uint64_t cap = kEnumerationCap);

/// C(n, s), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t s);

}  // namespace psaga
