#include "happycol/instance_gen.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

#include "happycol/random.hpp"

namespace happycol {

void validate(const SbmParams& params)
{
    if (params.k < 2) {
        throw std::invalid_argument(fmt::format("k = {} must be at least 2", params.k));
    }
    if (params.n < static_cast<std::size_t>(params.k)) {
        throw std::invalid_argument(fmt::format("k = {} exceeds n = {}", params.k, params.n));
    }
    if (!(params.p > 0.0 && params.p <= 1.0)) {
        throw std::invalid_argument(fmt::format("p = {} outside (0, 1]", params.p));
    }
    if (!(params.q > 0.0 && params.q <= params.p / 2)) {
        throw std::invalid_argument(fmt::format("q = {} outside (0, p/2]", params.q));
    }
    const auto per_community = params.n / static_cast<std::size_t>(params.k);
    if (params.pcc < 1 || static_cast<std::size_t>(params.pcc) > per_community) {
        throw std::invalid_argument(fmt::format("pcc = {} outside 1..{}", params.pcc, per_community));
    }
}

std::vector<Colour> community_layout(std::size_t n, int k)
{
    std::vector<Colour> community(n);
    const auto kk = static_cast<std::size_t>(k);
    const std::size_t base = n / kk;
    const std::size_t extra = n % kk;
    std::size_t v = 0;
    for (std::size_t c = 0; c < kk; ++c) {
        const std::size_t size = base + (c < extra ? 1 : 0);
        for (std::size_t i = 0; i < size; ++i) {
            community[v++] = static_cast<Colour>(c + 1);
        }
    }
    return community;
}

namespace {

template <typename Coin>
std::vector<Edge> draw_edges(const std::vector<Colour>& community, double p, double q, Coin&& coin)
{
    std::vector<Edge> edges;
    const auto n = static_cast<Vertex>(community.size());
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (coin(community[u] == community[v] ? p : q)) {
                edges.push_back({u, v});
            }
        }
    }
    return edges;
}

/// Adds one edge per missing link so that the graph becomes connected.
int join_components(const Graph& graph, std::vector<Edge>& edges, Rng& rng)
{
    std::vector<std::uint32_t> label;
    const auto count = graph.components(label);
    if (count <= 1) {
        return 0;
    }
    // Vertices grouped by component, so components 0..i-1 form a prefix.
    std::vector<std::size_t> start(count + 1, 0);
    for (auto l : label) {
        ++start[l + 1];
    }
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<Vertex> grouped(label.size());
    auto cursor = start;
    for (Vertex v = 0; v < label.size(); ++v) {
        grouped[cursor[label[v]]++] = v;
    }
    for (std::size_t c = 1; c < count; ++c) {
        Vertex a = grouped[start[c] + rng.below(start[c + 1] - start[c])];
        Vertex b = grouped[rng.below(start[c])];
        edges.push_back({a, b});
    }
    return static_cast<int>(count - 1);
}

template <typename Coin>
Instance sample_with(const SbmParams& params, Coin&& coin)
{
    validate(params);
    auto community = community_layout(params.n, params.k);

    std::vector<Edge> edges;
    bool connected = false;
    for (int attempt = 0; attempt < resample_attempts && !connected; ++attempt) {
        edges = draw_edges(community, params.p, params.q, coin);
        std::vector<std::uint32_t> label;
        connected = Graph(params.n, edges).components(label) <= 1;
    }
    int bridges = 0;
    if (!connected) {
        Rng rng(derive_seed(params.seed, {2}));
        bridges = join_components(Graph(params.n, edges), edges, rng);
    }

    std::vector<Colour> precolour(params.n, no_colour);
    Rng rng(derive_seed(params.seed, {3}));
    std::size_t begin = 0;
    while (begin < params.n) {
        std::size_t end = begin;
        while (end < params.n && community[end] == community[begin]) {
            ++end;
        }
        std::vector<Vertex> block(end - begin);
        std::iota(block.begin(), block.end(), static_cast<Vertex>(begin));
        for (int i = 0; i < params.pcc; ++i) {
            auto j = i + rng.below(block.size() - static_cast<std::size_t>(i));
            std::swap(block[static_cast<std::size_t>(i)], block[j]);
            precolour[block[static_cast<std::size_t>(i)]] = community[begin];
        }
        begin = end;
    }

    GeneratorParams gp;
    gp.p = params.p;
    gp.q = params.q;
    gp.pcc = params.pcc;
    gp.seed = params.seed;
    gp.rho_suggested = params.rho_suggested;
    gp.bridges = bridges;
    return Instance(Graph(params.n, edges), params.k, std::move(precolour), std::move(community), gp);
}

} // namespace

Instance sample_instance(const SbmParams& params)
{
    Rng rng(derive_seed(params.seed, {1}));
    return sample_with(params, [&rng](double prob) { return rng.bernoulli(prob); });
}

Instance sample_instance(const SbmParams& params, const EdgeCoin& coin)
{
    return sample_with(params, coin);
}

namespace {

void check_ranges(const BatchRanges& r)
{
    auto bad = [](const IntRange& x) { return x.lo > x.hi; };
    if (bad(r.n) || bad(r.k) || bad(r.pcc)) {
        throw ConfigurationError("empty parameter range");
    }
    if (r.k.lo < 2) {
        throw ConfigurationError(fmt::format("k range starts at {}, must be at least 2", r.k.lo));
    }
    if (r.pcc.lo < 1) {
        throw ConfigurationError(fmt::format("pcc range starts at {}, must be at least 1", r.pcc.lo));
    }
    if (r.k.lo * r.pcc.lo > r.n.lo) {
        throw ConfigurationError(fmt::format("n = {} cannot hold k = {} communities with pcc = {}", r.n.lo, r.k.lo,
                                             r.pcc.lo));
    }
}

} // namespace

SbmParams batch_params(const BatchRanges& ranges, std::uint64_t master_seed, std::size_t index)
{
    check_ranges(ranges);
    Rng rng(derive_seed(master_seed, {index}));
    SbmParams params;
    if (ranges.instances_per_n > 0) {
        const auto span = static_cast<std::size_t>(ranges.n.hi - ranges.n.lo + 1);
        params.n = static_cast<std::size_t>(ranges.n.lo) +
                   (index / static_cast<std::size_t>(ranges.instances_per_n)) % span;
    } else {
        params.n = static_cast<std::size_t>(rng.between(ranges.n.lo, ranges.n.hi));
    }
    const auto n = static_cast<std::int64_t>(params.n);
    const auto k_max = std::min(ranges.k.hi, n / ranges.pcc.lo);
    params.k = static_cast<int>(rng.between(ranges.k.lo, k_max));
    const auto pcc_max = std::min(ranges.pcc.hi, n / params.k);
    params.pcc = static_cast<int>(rng.between(ranges.pcc.lo, pcc_max));
    params.p = rng.uniform_open_closed();
    params.q = params.p / 2 * rng.uniform_open_closed();
    params.rho_suggested = rng.uniform_open_closed();
    params.seed = derive_seed(master_seed, {index, 0x5eed});
    return params;
}

std::vector<Instance> sample_batch(const BatchRanges& ranges, std::size_t count, std::uint64_t master_seed)
{
    check_ranges(ranges);
    std::vector<Instance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(sample_instance(batch_params(ranges, master_seed, i)));
    }
    return out;
}

} // namespace happycol
