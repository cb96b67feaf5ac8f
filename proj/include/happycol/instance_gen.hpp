#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "happycol/graph.hpp"

namespace happycol {

/// Parameters of the planted-partition model G(n, k, p, q) plus the
/// precolouring protocol (pcc vertices per community).
struct SbmParams {
    std::size_t n = 0;
    int k = 2;
    double p = 0.5;
    double q = 0.1;
    int pcc = 1;
    std::uint64_t seed = 0;
    /// Recorded in the instance metadata only.
    std::optional<double> rho_suggested;
};

/// Throws std::invalid_argument unless 0 < q <= p/2, p <= 1, 2 <= k <= n and
/// 1 <= pcc <= floor(n / k).
void validate(const SbmParams& params);

inline constexpr int resample_attempts = 50;

/// Community of each vertex (1-based ids). The first n mod k communities
/// receive one extra vertex; vertices are assigned in contiguous blocks.
std::vector<Colour> community_layout(std::size_t n, int k);

/// Samples a connected partially coloured instance. Disconnected samples are
/// redrawn up to `resample_attempts` times; after that the components of the
/// last draw are joined by random inter-component edges and the number of
/// added edges is stored as `bridges` in the metadata.
Instance sample_instance(const SbmParams& params);

/// Source of edge decisions: returns whether a vertex pair with edge
/// probability `prob` becomes an edge. sample_instance uses a seeded
/// Bernoulli draw; tests can substitute a deterministic one.
using EdgeCoin = std::function<bool(double prob)>;
Instance sample_instance(const SbmParams& params, const EdgeCoin& coin);

/// Closed integer range.
struct IntRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

/// Parameter ranges for batch generation. p is drawn uniformly from (0, 1],
/// q from (0, p/2], and the suggested rho from (0, 1].
struct BatchRanges {
    IntRange n{200, 2999};
    IntRange k{2, 20};
    IntRange pcc{1, 10};
    /// When positive, n runs through the range sequentially with this many
    /// instances per value instead of being drawn uniformly.
    int instances_per_n = 0;
};

class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters of instance `index` within a batch. Pure in (ranges, seed, index).
SbmParams batch_params(const BatchRanges& ranges, std::uint64_t master_seed, std::size_t index);

/// Samples `count` instances. Throws ConfigurationError when the ranges admit
/// no valid parameter combination.
std::vector<Instance> sample_batch(const BatchRanges& ranges, std::size_t count, std::uint64_t master_seed);

} // namespace happycol
