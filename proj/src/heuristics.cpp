#include "happycol/heuristics.hpp"

#include <vector>

namespace happycol {

namespace {

/// Colour multiplicities over one neighbourhood, reset in O(touched).
class ColourTally {
public:
    explicit ColourTally(int k) : count_(static_cast<std::size_t>(k) + 1, 0) {}

    void add(Colour c)
    {
        if (count_[static_cast<std::size_t>(c)]++ == 0) {
            touched_.push_back(c);
        }
    }

    bool empty() const noexcept { return touched_.empty(); }

    /// Most frequent colour, ties broken uniformly at random. Clears the tally.
    Colour take_majority(Rng& rng)
    {
        Colour best = no_colour;
        std::uint32_t best_count = 0;
        std::uint64_t ties = 0;
        for (Colour c : touched_) {
            const auto cnt = count_[static_cast<std::size_t>(c)];
            if (cnt > best_count) {
                best = c;
                best_count = cnt;
                ties = 1;
            } else if (cnt == best_count && rng.below(++ties) == 0) {
                best = c;
            }
            count_[static_cast<std::size_t>(c)] = 0;
        }
        touched_.clear();
        return best;
    }

private:
    std::vector<std::uint32_t> count_;
    std::vector<Colour> touched_;
};

struct PassResult {
    std::size_t unhappy = 0;
    std::size_t changed = 0;
};

PassResult ls_pass(const Instance& inst, Colouring& sigma, double rho, Rng& rng, ColourTally& tally,
                   HeuristicStats& stats)
{
    const auto& g = inst.graph();
    std::vector<Vertex> unhappy;
    for (Vertex v : inst.free_vertices()) {
        std::size_t same = 0;
        for (Vertex u : g.adj(v)) {
            same += sigma[u] == sigma[v] ? 1 : 0;
        }
        stats.neighbour_inspections += g.deg(v);
        if (same < happy_threshold(rho, g.deg(v))) {
            unhappy.push_back(v);
        }
    }
    PassResult result{unhappy.size(), 0};
    rng.shuffle(std::span<Vertex>(unhappy));
    for (Vertex v : unhappy) {
        for (Vertex u : g.adj(v)) {
            tally.add(sigma[u]);
        }
        stats.neighbour_inspections += g.deg(v);
        ++stats.vertices_examined;
        // Unhappy vertices have degree >= 1, so the tally is non-empty.
        const Colour c = tally.take_majority(rng);
        if (c != sigma[v]) {
            sigma[v] = c;
            ++result.changed;
        }
    }
    stats.recoloured += result.changed;
    ++stats.passes;
    return result;
}

} // namespace

Colouring random_completion(const Instance& inst, std::uint64_t seed)
{
    Rng rng(seed);
    Colouring sigma(inst.precolour().begin(), inst.precolour().end());
    const auto k = static_cast<std::uint64_t>(inst.k());
    for (Vertex v : inst.free_vertices()) {
        sigma[v] = static_cast<Colour>(1 + rng.below(k));
    }
    return sigma;
}

Colouring lmc(const Instance& inst, std::uint64_t seed, HeuristicStats* stats_out)
{
    HeuristicStats stats;
    Rng rng(seed);
    const auto& g = inst.graph();
    const auto n = inst.n();
    Colouring sigma(inst.precolour().begin(), inst.precolour().end());

    constexpr auto absent = static_cast<std::size_t>(-1);
    std::vector<Vertex> frontier;
    std::vector<std::size_t> slot(n, absent);
    auto enter = [&](Vertex u) {
        if (sigma[u] == no_colour && slot[u] == absent) {
            slot[u] = frontier.size();
            frontier.push_back(u);
        }
    };

    for (Vertex v = 0; v < n; ++v) {
        if (sigma[v] != no_colour) {
            for (Vertex u : g.adj(v)) {
                enter(u);
            }
            stats.neighbour_inspections += g.deg(v);
        }
    }

    ColourTally tally(inst.k());
    std::vector<Vertex> uncoloured;
    while (!frontier.empty()) {
        const auto pick = rng.below(frontier.size());
        const Vertex v = frontier[pick];
        frontier[pick] = frontier.back();
        slot[frontier[pick]] = pick;
        frontier.pop_back();
        slot[v] = absent;

        for (Vertex u : g.adj(v)) {
            if (sigma[u] != no_colour) {
                tally.add(sigma[u]);
            } else {
                uncoloured.push_back(u);
            }
        }
        stats.neighbour_inspections += g.deg(v);
        sigma[v] = tally.take_majority(rng);
        ++stats.vertices_coloured;
        for (Vertex u : uncoloured) {
            enter(u);
        }
        uncoloured.clear();
    }

    const auto k = static_cast<std::uint64_t>(inst.k());
    for (Vertex v = 0; v < n; ++v) {
        if (sigma[v] == no_colour) {
            sigma[v] = static_cast<Colour>(1 + rng.below(k));
            ++stats.unreachable;
        }
    }
    if (stats_out) {
        *stats_out = stats;
    }
    return sigma;
}

Colouring ls(const Instance& inst, Colouring sigma, double rho, std::uint64_t seed, HeuristicStats* stats_out)
{
    return rls(inst, std::move(sigma), rho, seed, 1, stats_out);
}

Colouring rls(const Instance& inst, Colouring sigma, double rho, std::uint64_t seed, int max_passes,
              HeuristicStats* stats_out)
{
    HeuristicStats stats;
    Rng rng(seed);
    ColourTally tally(inst.k());
    for (int pass = 0; pass < max_passes; ++pass) {
        const auto r = ls_pass(inst, sigma, rho, rng, tally, stats);
        if (r.unhappy == 0 || r.changed == 0) {
            break;
        }
    }
    if (stats_out) {
        *stats_out = stats;
    }
    return sigma;
}

} // namespace happycol
