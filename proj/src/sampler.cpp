#include "psaga/sampler.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "psaga/error.hpp"

namespace psaga {
namespace {

void check_batch(std::size_t n, std::size_t s) {
  if (s < 1 || s > n)
    fail(Errc::invalid_batch_size, "minibatch size " + std::to_string(s) + " not in [1, " +
                                       std::to_string(n) + "]");
}

}  // namespace

SubsetSample sample_k_subset(Rng& rng, std::size_t n, std::size_t s, std::uint64_t iteration) {
  check_batch(n, s);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t k = 0; k < s; ++k) {
    const auto j = k + static_cast<std::size_t>(rng.below(n - k));
    std::swap(perm[k], perm[j]);
  }
  perm.resize(s);
  std::sort(perm.begin(), perm.end());
  return {std::move(perm), iteration};
}

std::uint64_t binomial(std::size_t n, std::size_t s) {
  if (s > n) return 0;
  s = std::min(s, n - s);
  unsigned __int128 acc = 1;
  for (std::size_t k = 1; k <= s; ++k) {
    acc = acc * (n - s + k) / k;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<SubsetSample> enumerate_k_subsets(std::size_t n, std::size_t s, std::uint64_t cap) {
  check_batch(n, s);
  const std::uint64_t count = binomial(n, s);
  if (count > cap)
    fail(Errc::enumeration_too_large,
         "C(" + std::to_string(n) + ", " + std::to_string(s) + ") exceeds " + std::to_string(cap));

  std::vector<SubsetSample> out;
  out.reserve(count);
  std::vector<std::size_t> idx(s);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    out.push_back({idx, 0});
    // rightmost slot that can still advance
    std::size_t k = s;
    while (k > 0 && idx[k - 1] == n - s + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace psaga
