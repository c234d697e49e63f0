#pragma once

#include "cloud/dynamic_subgraph.hpp"

namespace cloud {

/// Bounded in-degree orientation.  The retained arc uv means the edge is
/// directed u -> v (v is the head).  Every vertex has in-degree at most
/// 2 * density.
class Orientation {
public:
    Orientation() = default;
    Orientation(DynamicSubgraph directed, std::size_t bound)
        : arcs_(std::move(directed)), bound_(bound) {}

    const DynamicSubgraph& arcs() const { return arcs_; }
    std::size_t in_degree_bound() const { return bound_; }

    /// Visit each out-arc (k, head) of v, i.e. edges directed away from v.
    template <typename F>
    void for_each_out(Vertex v, F&& fn) const {
        arcs_.for_each_arc(v, fn);
    }

    /// O(degree) in-degree count, for verification.
    std::size_t in_degree(Vertex v) const {
        const StaticGraph& g = arcs_.parent();
        std::size_t d = 0;
        for (std::size_t k = 0; k < g.degree(v); ++k)
            if (arcs_.contains_arc(g.neighbor(v, k), g.cross(v, k))) ++d;
        return d;
    }

    std::size_t rounds_used() const { return rounds_; }
    void set_rounds_used(std::size_t r) { rounds_ = r; }

    std::size_t footprint_bits() const { return arcs_.footprint_bits(); }

private:
    DynamicSubgraph arcs_;
    std::size_t bound_ = 0;
    std::size_t rounds_ = 0;
};

/// Peel vertices of degree <= 2*density round by round, directing every
/// edge toward the peeled endpoint; ties inside one round direct the edge
/// toward the smaller label.  Throws if a round removes no vertex, which
/// means the density precondition is violated.
Orientation orient_bounded(const StaticGraph& g, std::size_t density = 3);

/// Adjacency of the reversed orientation: for each vertex its at most
/// 2*density in-neighbors, so that all edges inside a marked vertex set
/// can be enumerated in time linear in the set.
class ReversedOrientation {
public:
    ReversedOrientation() = default;
    explicit ReversedOrientation(const Orientation& o);

    std::size_t in_count(Vertex v) const { return off_[v] - off_[v - 1]; }
    Vertex in_neighbor(Vertex v, std::size_t i) const {
        return tails_[off_[v - 1] + i];
    }

    template <typename F>
    void for_each_in(Vertex v, F&& fn) const {
        for (std::size_t a = off_[v - 1]; a < off_[v]; ++a) fn(tails_[a]);
    }

    std::size_t footprint_bits() const {
        return (off_.capacity() * sizeof(std::uint32_t)
                + tails_.capacity() * sizeof(Vertex)) * 8;
    }

private:
    std::vector<std::uint32_t> off_;
    std::vector<Vertex> tails_;
};

} // namespace cloud
