#include "mbg/random_hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mbg {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;  // exact: product of i consecutive ints
    if (result > kBinomialSaturated) return kBinomialSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<int> unrank_subset(std::uint64_t rank, int n, int s) {
  if (s < 0 || s > n) throw InputError("subset size out of range");
  const std::uint64_t total = binomial(n, s);
  if (rank >= total) {
    throw InputError("rank " + std::to_string(rank) +
                     " out of range for C(" + std::to_string(n) + ", " +
                     std::to_string(s) + ")");
  }
  std::vector<int> subset(s);
  for (int i = s; i >= 1; --i) {
    // Largest a with C(a, i) <= rank; saturated values compare as too big.
    int lo = i - 1, hi = n - 1;
    while (lo < hi) {
      const int mid = lo + (hi - lo + 1) / 2;
      if (binomial(mid, i) <= rank) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    subset[i - 1] = lo;
    rank -= binomial(lo, i);
  }
  return subset;
}

std::uint64_t rank_subset(const std::vector<int>& subset, int n) {
  const int s = static_cast<int>(subset.size());
  if (binomial(n, s) == kBinomialSaturated) {
    throw GuardError("C(n, s) exceeds the 64-bit rank space");
  }
  std::uint64_t rank = 0;
  for (int i = 0; i < s; ++i) {
    if (subset[i] < 0 || subset[i] >= n || (i > 0 && subset[i] <= subset[i - 1])) {
      throw InputError("subset must be strictly increasing in [0, n)");
    }
    rank += binomial(subset[i], i + 1);
  }
  return rank;
}

Hypergraph sample_hypergraph(int n, int s, double p, const SeedSpec& seed,
                             std::uint64_t max_edges) {
  if (s < 1 || s > n) throw InputError("uniformity s must satisfy 1 <= s <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability p must lie in [0, 1]");

  const std::uint64_t total = binomial(n, s);
  if (total == kBinomialSaturated) {
    throw GuardError("C(n, s) exceeds the 64-bit subset space; board too large");
  }

  std::vector<Edge> edges;
  if (p > 0.0 && total > 0) {
    Xoshiro256StarStar rng(seed);
    const double log_q = std::log1p(-p);  // -inf when p == 1, giving skip 0
    std::uint64_t next = 0;
    while (next < total) {
      const double u = rng.next_unit();
      if (p < 1.0) {
        const double t = std::log1p(-u) / log_q;
        if (t >= static_cast<double>(total - next)) break;
        next += static_cast<std::uint64_t>(t);
        if (next >= total) break;
      }
      edges.push_back(unrank_subset(next, n, s));
      if (edges.size() > max_edges) {
        throw GuardError("sample exceeds the realized-edge guard of " +
                         std::to_string(max_edges) + " edges");
      }
      ++next;
    }
  }
  return Hypergraph::build(n, std::move(edges), s);
}

}  // namespace mbg
