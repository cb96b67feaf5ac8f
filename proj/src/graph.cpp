#include "happycol/graph.hpp"

#include <algorithm>
#include <fmt/core.h>

namespace happycol {

const char* to_string(ValidationKind kind) noexcept
{
    switch (kind) {
    case ValidationKind::self_loop: return "self-loop";
    case ValidationKind::duplicate_edge: return "duplicate-edge";
    case ValidationKind::vertex_out_of_range: return "vertex-out-of-range";
    case ValidationKind::colour_count: return "colour-count";
    case ValidationKind::colour_out_of_range: return "colour-out-of-range";
    case ValidationKind::community_out_of_range: return "community-out-of-range";
    case ValidationKind::community_missing: return "community-missing";
    case ValidationKind::precolour_conflict: return "precolour-conflict";
    case ValidationKind::precolour_community_mismatch: return "precolour-community-mismatch";
    }
    return "unknown";
}

Graph::Graph(std::size_t n, std::span<const Edge> edges)
{
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw ValidationError(ValidationKind::vertex_out_of_range,
                                  fmt::format("edge ({}, {}) has an endpoint outside 0..{}", e.u, e.v, n));
        }
        if (e.u == e.v) {
            throw ValidationError(ValidationKind::self_loop, fmt::format("self-loop at vertex {}", e.u));
        }
        edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        throw ValidationError(ValidationKind::duplicate_edge, fmt::format("duplicate edge ({}, {})", dup->u, dup->v));
    }

    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) {
        offsets_[v + 1] += offsets_[v];
    }
    adjacency_.resize(offsets_[n]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted, so filling in this order leaves each list sorted:
    // for v, smaller neighbours u arrive via (u, v) before larger ones via (v, w).
    for (const auto& e : edges_) {
        adjacency_[cursor[e.u]++] = e.v;
        adjacency_[cursor[e.v]++] = e.u;
    }
}

std::span<const Vertex> Graph::neighbours(Vertex v) const
{
    if (v >= vertex_count()) {
        throw std::out_of_range(fmt::format("vertex {} out of range (n = {})", v, vertex_count()));
    }
    return adj(v);
}

std::size_t Graph::degree(Vertex v) const
{
    return neighbours(v).size();
}

std::size_t Graph::components(std::vector<std::uint32_t>& label) const
{
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    const auto n = vertex_count();
    label.assign(n, unset);
    std::vector<Vertex> stack;
    std::uint32_t next = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (label[s] != unset) {
            continue;
        }
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex u : adj(v)) {
                if (label[u] == unset) {
                    label[u] = next;
                    stack.push_back(u);
                }
            }
        }
        ++next;
    }
    return next;
}

Instance::Instance(Graph graph, int k, std::vector<Colour> precolour, std::vector<Colour> community,
                   std::optional<GeneratorParams> params)
    : graph_(std::move(graph)), k_(k), precolour_(std::move(precolour)), community_(std::move(community)),
      params_(std::move(params))
{
    const auto n = graph_.vertex_count();
    if (k_ < 2) {
        throw ValidationError(ValidationKind::colour_count, fmt::format("k must be at least 2, got {}", k_));
    }
    if (precolour_.size() != n) {
        throw std::invalid_argument(fmt::format("precolour has {} entries for {} vertices", precolour_.size(), n));
    }
    if (!community_.empty() && community_.size() != n) {
        throw ValidationError(ValidationKind::community_missing,
                              fmt::format("community labels given for {} of {} vertices", community_.size(), n));
    }
    for (Vertex v = 0; v < n; ++v) {
        if (precolour_[v] < 0 || precolour_[v] > k_) {
            throw ValidationError(ValidationKind::colour_out_of_range,
                                  fmt::format("vertex {} precoloured {} outside 1..{}", v + 1, precolour_[v], k_));
        }
    }
    if (!community_.empty()) {
        for (Vertex v = 0; v < n; ++v) {
            if (community_[v] == no_colour) {
                throw ValidationError(ValidationKind::community_missing,
                                      fmt::format("vertex {} has no community label", v + 1));
            }
            if (community_[v] < 1 || community_[v] > k_) {
                throw ValidationError(ValidationKind::community_out_of_range,
                                      fmt::format("vertex {} in community {} outside 1..{}", v + 1, community_[v], k_));
            }
        }
        std::vector<Colour> seen(static_cast<std::size_t>(k_) + 1, no_colour);
        for (Vertex v = 0; v < n; ++v) {
            if (precolour_[v] == no_colour) {
                continue;
            }
            auto& first = seen[static_cast<std::size_t>(community_[v])];
            if (first != no_colour && first != precolour_[v]) {
                throw ValidationError(ValidationKind::precolour_conflict,
                                      fmt::format("community {} has precoloured vertices of colours {} and {}",
                                                  community_[v], first, precolour_[v]));
            }
            first = precolour_[v];
        }
        for (Vertex v = 0; v < n; ++v) {
            if (precolour_[v] != no_colour && precolour_[v] != community_[v]) {
                throw ValidationError(ValidationKind::precolour_community_mismatch,
                                      fmt::format("vertex {} precoloured {} but belongs to community {}", v + 1,
                                                  precolour_[v], community_[v]));
            }
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (precolour_[v] == no_colour) {
            free_.push_back(v);
        }
    }
}

} // namespace happycol
