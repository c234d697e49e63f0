#pragma once

#include <stdexcept>

#include "cloud/choice_dict.hpp"
#include "cloud/static_alloc.hpp"
#include "cloud/static_graph.hpp"

namespace cloud {

/// Mutable subgraph of a fixed parent graph.  Arcs are addressed in the
/// parent's index space (vertex, arc position); per-vertex presence bits
/// live in one static allocation, a packed counter tracks the present
/// out-degree, and the choice dictionary D' holds the non-isolated
/// vertices.  Deleting a single arc direction "directs" the edge.
class DynamicSubgraph {
public:
    enum class Init { Full, Empty };

    DynamicSubgraph() = default;
    DynamicSubgraph(const StaticGraph& g, Init init);

    const StaticGraph& parent() const { return *g_; }

    bool contains_arc(Vertex v, std::size_t k) const {
        return presence_.payload().get(g_->arc_slot(v, k));
    }

    void insert_arc(Vertex v, std::size_t k);
    void delete_arc(Vertex v, std::size_t k);

    /// Delete both directions of the edge given by the k-th arc of v.
    void delete_edge(Vertex v, std::size_t k) {
        delete_arc(v, k);
        delete_arc(g_->neighbor(v, k), g_->cross(v, k));
    }
    void insert_edge(Vertex v, std::size_t k) {
        insert_arc(v, k);
        insert_arc(g_->neighbor(v, k), g_->cross(v, k));
    }

    std::size_t present_degree(Vertex v) const { return counts_.get(v - 1); }

    /// Visit every present arc (k, neighbor) out of v; linear in the
    /// present degree plus the word count of v's slot range.
    template <typename F>
    void for_each_arc(Vertex v, F&& fn) const {
        const std::size_t base = g_->adjacency_offset(v);
        const std::size_t deg = g_->degree(v);
        const BitVec& bits = presence_.payload();
        std::size_t k = 0;
        while (k < deg) {
            const unsigned chunk = static_cast<unsigned>(
                std::min<std::size_t>(64, deg - k));
            std::uint64_t word = bits.read_bits(base + k, chunk);
            while (word) {
                const std::size_t kk = k + static_cast<unsigned>(__builtin_ctzll(word));
                fn(kk, g_->neighbor(v, kk));
                word &= word - 1;
            }
            k += chunk;
        }
    }

    bool any_nonisolated() const { return !nonisolated_.empty(); }
    /// Some vertex with a present outgoing arc, or 0 if none.
    Vertex choice_vertex() const { return static_cast<Vertex>(nonisolated_.choice()); }
    const ChoiceDictionary& nonisolated() const { return nonisolated_; }

    std::size_t present_arc_count() const { return present_arcs_; }

    std::size_t footprint_bits() const {
        return presence_.footprint_bits() + counts_.footprint_bits()
             + nonisolated_.footprint_bits();
    }

private:
    const StaticGraph* g_ = nullptr;
    StaticAllocator presence_; // one d_v-bit presence item per vertex
    PackedIntVec counts_;      // present out-degree per vertex
    ChoiceDictionary nonisolated_;
    std::size_t present_arcs_ = 0;
};

} // namespace cloud
