#pragma once

#include <cstdint>
#include <vector>

#include "mbg/hypergraph.hpp"
#include "mbg/rng.hpp"

namespace mbg {

/// Sentinel returned by binomial() when the true value exceeds 64 bits.
inline constexpr std::uint64_t kBinomialSaturated = ~0ULL;

/// Binomial coefficient, saturating at kBinomialSaturated on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// The s-subset of {0..n-1} with the given colexicographic rank: subset
/// {a_1 < ... < a_s} has rank sum_i C(a_i, i). Rank 0 is {0..s-1}.
std::vector<int> unrank_subset(std::uint64_t rank, int n, int s);

/// Inverse of unrank_subset. `subset` must be strictly increasing in [0, n).
std::uint64_t rank_subset(const std::vector<int>& subset, int n);

/// Samples H_{n,s,p}: every s-subset of the n vertices is an edge
/// independently with probability p. Runtime is proportional to the number
/// of realized edges via geometric skips over the colex-ranked subsets:
/// each skip length is floor(log(1-u) / log(1-p)) for one uniform draw u,
/// so P(skip = j) = (1-p)^j p. Identical seeds give identical boards.
Hypergraph sample_hypergraph(int n, int s, double p, const SeedSpec& seed,
                             std::uint64_t max_edges = kDefaultWorkCap);

}  // namespace mbg
