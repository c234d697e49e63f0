#include "cloud/weighted_graph.hpp"

namespace cloud {

WeightedGraph WeightedGraph::from_minor(const StructureMinor& f) {
    const std::size_t n = f.node_count();
    WeightedGraph g;
    g.off.assign(n + 1, 0);
    g.weight.resize(n);
    for (NodeId u = 1; u <= n; ++u) {
        g.off[u] = g.off[u - 1] + f.degree(u);
        g.weight[u - 1] = f.weight(u);
    }
    g.nbr.resize(g.off[n]);
    std::size_t a = 0;
    for (NodeId u = 1; u <= n; ++u)
        f.for_each_neighbor(u, [&](NodeId v) { g.nbr[a++] = v; });
    return g;
}

WeightedGraph WeightedGraph::induced(const std::vector<std::uint32_t>& keep,
                                     std::vector<std::uint32_t>* mapping) const {
    std::vector<std::uint32_t> local(node_count() + 1, 0);
    for (std::size_t i = 0; i < keep.size(); ++i)
        local[keep[i]] = static_cast<std::uint32_t>(i + 1);

    WeightedGraph g;
    g.off.assign(keep.size() + 1, 0);
    g.weight.resize(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        g.weight[i] = weight[keep[i] - 1];
        std::size_t d = 0;
        for_each_neighbor(keep[i], [&](std::uint32_t w) { d += local[w] != 0; });
        g.off[i + 1] = g.off[i] + d;
    }
    g.nbr.resize(g.off[keep.size()]);
    std::size_t a = 0;
    for (std::size_t i = 0; i < keep.size(); ++i)
        for_each_neighbor(keep[i], [&](std::uint32_t w) {
            if (local[w]) g.nbr[a++] = local[w];
        });
    if (mapping) *mapping = keep;
    return g;
}

} // namespace cloud
