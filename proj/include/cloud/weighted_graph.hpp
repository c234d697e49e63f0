#pragma once

#include <cstdint>
#include <vector>

#include "cloud/structure_minor.hpp"

namespace cloud {

/// Node-weighted graph in CSR form; the search domain of the separator
/// backends.  Node ids are 1-indexed like everywhere else.
struct WeightedGraph {
    std::vector<std::size_t> off;   // size n+1
    std::vector<std::uint32_t> nbr;
    std::vector<std::uint64_t> weight; // size n

    std::size_t node_count() const { return weight.size(); }
    std::size_t degree(std::uint32_t u) const { return off[u] - off[u - 1]; }
    std::uint32_t neighbor(std::uint32_t u, std::size_t i) const {
        return nbr[off[u - 1] + i];
    }

    template <typename F>
    void for_each_neighbor(std::uint32_t u, F&& fn) const {
        for (std::size_t a = off[u - 1]; a < off[u]; ++a) fn(nbr[a]);
    }

    std::uint64_t total_weight() const {
        std::uint64_t w = 0;
        for (auto x : weight) w += x;
        return w;
    }

    bool has_edge(std::uint32_t u, std::uint32_t v) const {
        for (std::size_t a = off[u - 1]; a < off[u]; ++a)
            if (nbr[a] == v) return true;
        return false;
    }

    static WeightedGraph from_minor(const StructureMinor& f);

    /// Subgraph induced by `keep` (1-indexed ids into this graph); the
    /// returned mapping lists, per new node, the old id.
    WeightedGraph induced(const std::vector<std::uint32_t>& keep,
                          std::vector<std::uint32_t>* mapping = nullptr) const;

    std::size_t footprint_bits() const {
        return (off.capacity() * sizeof(std::size_t)
                + nbr.capacity() * sizeof(std::uint32_t)
                + weight.capacity() * sizeof(std::uint64_t)) * 8;
    }
};

} // namespace cloud
