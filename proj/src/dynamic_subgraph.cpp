#include "cloud/dynamic_subgraph.hpp"

namespace cloud {

DynamicSubgraph::DynamicSubgraph(const StaticGraph& g, Init init) : g_(&g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> sizes(n);
    std::size_t maxdeg = 0;
    for (Vertex v = 1; v <= n; ++v) {
        sizes[v - 1] = g.degree(v);
        maxdeg = std::max(maxdeg, g.degree(v));
    }
    presence_ = StaticAllocator(sizes);
    counts_ = PackedIntVec(n, bit_width_for(maxdeg));
    nonisolated_ = ChoiceDictionary(n);

    if (init == Init::Full) {
        presence_.payload().fill(true);
        for (Vertex v = 1; v <= n; ++v) {
            counts_.set(v - 1, g.degree(v));
            if (g.degree(v) > 0) nonisolated_.insert(v);
        }
        present_arcs_ = g.arc_count();
    }
}

void DynamicSubgraph::insert_arc(Vertex v, std::size_t k) {
    const std::size_t slot = g_->arc_slot(v, k);
    if (presence_.payload().get(slot))
        throw std::logic_error("insert_arc: arc already present");
    presence_.payload().set(slot);
    const std::size_t deg = counts_.get(v - 1) + 1;
    counts_.set(v - 1, deg);
    if (deg == 1) nonisolated_.insert(v);
    ++present_arcs_;
}

void DynamicSubgraph::delete_arc(Vertex v, std::size_t k) {
    const std::size_t slot = g_->arc_slot(v, k);
    if (!presence_.payload().get(slot))
        throw std::logic_error("delete_arc: arc not present");
    presence_.payload().clear(slot);
    const std::size_t deg = counts_.get(v - 1) - 1;
    counts_.set(v - 1, deg);
    if (deg == 0) nonisolated_.erase(v);
    --present_arcs_;
}

} // namespace cloud
