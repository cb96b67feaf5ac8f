#pragma once

#include <cstdint>

#include "happycol/graph.hpp"
#include "happycol/metrics.hpp"
#include "happycol/random.hpp"

namespace happycol {

/// Work counters filled in by the heuristics. Every read of an adjacency
/// entry counts as one neighbour inspection.
struct HeuristicStats {
    std::uint64_t neighbour_inspections = 0;
    std::uint64_t vertices_coloured = 0;
    std::uint64_t vertices_examined = 0;
    std::uint64_t recoloured = 0;
    std::uint64_t passes = 0;
    /// LMC only: vertices unreachable from any precoloured vertex, which
    /// received a uniform random colour instead.
    std::uint64_t unreachable = 0;
};

/// Precolouring plus an independent uniform colour for every free vertex.
Colouring random_completion(const Instance& inst, std::uint64_t seed);

/// Local Maximal Colouring. Repeatedly picks a uniformly random uncoloured
/// vertex adjacent to a coloured one and gives it the colour that occurs most
/// often among its coloured neighbours (ties broken uniformly). Each vertex
/// is scanned once, so the total work is bounded by 2m inspections.
Colouring lmc(const Instance& inst, std::uint64_t seed, HeuristicStats* stats = nullptr);

/// Local Search. Collects the rho-unhappy free vertices into U and visits
/// each once in random order, moving it to its current neighbourhood
/// majority colour (ties broken uniformly). U is not refilled.
Colouring ls(const Instance& inst, Colouring sigma, double rho, std::uint64_t seed, HeuristicStats* stats = nullptr);

inline constexpr int default_rls_passes = 50;

/// Repeated Local Search: LS passes with U refilled from the current
/// colouring, until U is empty, a pass changes nothing, or `max_passes`
/// passes have run. With max_passes = 1 this is exactly `ls`.
Colouring rls(const Instance& inst, Colouring sigma, double rho, std::uint64_t seed,
              int max_passes = default_rls_passes, HeuristicStats* stats = nullptr);

} // namespace happycol
