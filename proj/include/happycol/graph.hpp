#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace happycol {

using Vertex = std::uint32_t;
/// Colours and community ids live in 1..k. Zero means "no colour".
using Colour = std::int32_t;
inline constexpr Colour no_colour = 0;

struct Edge {
    Vertex u;
    Vertex v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Which instance invariant a validation failure violated.
enum class ValidationKind {
    self_loop,
    duplicate_edge,
    vertex_out_of_range,
    colour_count,         // k < 2
    colour_out_of_range,
    community_out_of_range,
    community_missing,    // community labels present for some vertices only
    precolour_conflict,   // two precoloured vertices of one community disagree
    precolour_community_mismatch,
};

const char* to_string(ValidationKind kind) noexcept;

class ValidationError : public std::runtime_error {
public:
    ValidationError(ValidationKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind)
    {
    }
    ValidationKind kind() const noexcept { return kind_; }

private:
    ValidationKind kind_;
};

/// Immutable undirected simple graph in compressed adjacency form.
/// Neighbour lists are sorted ascending.
class Graph {
public:
    Graph() = default;

    /// Builds the graph from an edge list. Endpoint order within an edge does
    /// not matter. Throws ValidationError on self-loops, duplicate edges or
    /// endpoints >= n.
    Graph(std::size_t n, std::span<const Edge> edges);

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Canonical edge list: u < v, sorted lexicographically.
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// Throws std::out_of_range when v >= n.
    std::span<const Vertex> neighbours(Vertex v) const;
    std::size_t degree(Vertex v) const;

    /// Unchecked variants for hot loops.
    std::span<const Vertex> adj(Vertex v) const noexcept
    {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t deg(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    /// Connected components as a label per vertex (labels 0..c-1 in order of
    /// smallest member). Returns the number of components.
    std::size_t components(std::vector<std::uint32_t>& label) const;

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
    }

private:
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adjacency_;
};

/// Generator record stored alongside a sampled instance.
struct GeneratorParams {
    double p = 0.0;
    double q = 0.0;
    int pcc = 0;
    std::uint64_t seed = 0;
    std::optional<double> rho_suggested;
    /// Edges added to join components after resampling gave up.
    int bridges = 0;

    friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

/// A partially coloured graph: the input of every solver.
class Instance {
public:
    /// precolour[v] is no_colour for free vertices. community is either empty
    /// (no ground truth) or has one entry per vertex. Throws ValidationError.
    Instance(Graph graph, int k, std::vector<Colour> precolour, std::vector<Colour> community,
             std::optional<GeneratorParams> params = std::nullopt);

    const Graph& graph() const noexcept { return graph_; }
    std::size_t n() const noexcept { return graph_.vertex_count(); }
    int k() const noexcept { return k_; }

    std::span<const Colour> precolour() const noexcept { return precolour_; }
    bool is_precoloured(Vertex v) const noexcept { return precolour_[v] != no_colour; }
    /// Free vertices in ascending order.
    std::span<const Vertex> free_vertices() const noexcept { return free_; }
    std::size_t precoloured_count() const noexcept { return n() - free_.size(); }

    bool has_communities() const noexcept { return !community_.empty(); }
    std::span<const Colour> community() const noexcept { return community_; }

    const std::optional<GeneratorParams>& params() const noexcept { return params_; }

    friend bool operator==(const Instance& a, const Instance& b)
    {
        return a.k_ == b.k_ && a.graph_ == b.graph_ && a.precolour_ == b.precolour_ &&
               a.community_ == b.community_ && a.params_ == b.params_;
    }

private:
    Graph graph_;
    int k_;
    std::vector<Colour> precolour_;
    std::vector<Colour> community_;
    std::vector<Vertex> free_;
    std::optional<GeneratorParams> params_;
};

} // namespace happycol
