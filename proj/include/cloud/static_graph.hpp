#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cloud {

using Vertex = std::uint32_t;   // vertex labels are 1..n
using ArcIndex = std::uint32_t; // position of an arc inside an adjacency array

/// Immutable undirected graph in adjacency-array form.  Each undirected
/// edge {u,v} is stored as the two arcs uv and vu; every arc carries a
/// crosspointer: the position of its co-arc inside the other endpoint's
/// adjacency array.  Neighbor lists are sorted by label.
class StaticGraph {
public:
    StaticGraph() = default;

    /// Build from an undirected edge list.  Throws on self-loops and
    /// duplicate edges.  Does not require connectivity.
    static StaticGraph from_edges(std::size_t n,
                                  const std::vector<std::pair<Vertex, Vertex>>& edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }
    std::size_t arc_count() const { return 2 * m_; }

    std::size_t degree(Vertex v) const {
        return offsets_[v] - offsets_[v - 1];
    }
    Vertex neighbor(Vertex v, std::size_t k) const {
        return nbr_[offsets_[v - 1] + k];
    }
    ArcIndex cross(Vertex v, std::size_t k) const {
        return cross_[offsets_[v - 1] + k];
    }
    /// Global arc slot of the k-th arc out of v (used as a bit index by
    /// dynamic subgraphs).
    std::size_t arc_slot(Vertex v, std::size_t k) const {
        return offsets_[v - 1] + k;
    }
    std::size_t adjacency_offset(Vertex v) const { return offsets_[v - 1]; }

    template <typename F>
    void for_each_neighbor(Vertex v, F&& fn) const {
        const std::size_t b = offsets_[v - 1], e = offsets_[v];
        for (std::size_t a = b; a < e; ++a)
            fn(static_cast<std::size_t>(a - b), nbr_[a]);
    }

    /// Position of u inside v's sorted neighbor list, or degree(v) if absent.
    std::size_t find_arc(Vertex v, Vertex u) const;

    bool adjacent(Vertex v, Vertex u) const {
        return find_arc(v, u) != degree(v);
    }

    bool is_connected() const;
    std::size_t component_count() const;

    std::size_t footprint_bits() const {
        return (offsets_.capacity() * sizeof(std::size_t)
                + nbr_.capacity() * sizeof(Vertex)
                + cross_.capacity() * sizeof(ArcIndex)) * 8;
    }

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::size_t> offsets_; // offsets_[v] for v in 0..n
    std::vector<Vertex> nbr_;
    std::vector<ArcIndex> cross_;
};

} // namespace cloud
