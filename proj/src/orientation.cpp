#include "cloud/orientation.hpp"

#include <stdexcept>
#include <vector>

namespace cloud {

Orientation orient_bounded(const StaticGraph& g, std::size_t density) {
    const std::size_t n = g.vertex_count();
    const std::size_t cap = 2 * density;
    DynamicSubgraph helper(g, DynamicSubgraph::Init::Full);
    DynamicSubgraph directed(g, DynamicSubgraph::Init::Full);
    ChoiceDictionary queue(n);

    std::size_t rounds = 0;
    while (helper.any_nonisolated()) {
        ++rounds;
        helper.nonisolated().for_each([&](std::size_t v) {
            if (helper.present_degree(static_cast<Vertex>(v)) <= cap)
                queue.insert(v);
        });
        if (queue.empty())
            throw std::runtime_error(
                "orient_bounded: no vertex of degree <= " + std::to_string(cap)
                + " left; the graph violates the density bound "
                + std::to_string(density));

        // Direct first (the helper graph stays fixed during the pass), then
        // peel.  For an edge with both endpoints queued, the arc leaving
        // the smaller label is removed, directing the edge toward it.
        queue.for_each([&](std::size_t uv) {
            const Vertex u = static_cast<Vertex>(uv);
            helper.for_each_arc(u, [&](std::size_t k, Vertex w) {
                if (!queue.contains(w) || u < w) directed.delete_arc(u, k);
            });
        });
        queue.for_each([&](std::size_t uv) {
            const Vertex u = static_cast<Vertex>(uv);
            helper.for_each_arc(u, [&](std::size_t k, Vertex w) {
                (void)w;
                if (helper.contains_arc(u, k)) helper.delete_edge(u, k);
            });
        });
        ChoiceDictionary fresh(n);
        queue = std::move(fresh);
    }

    Orientation o(std::move(directed), cap);
    o.set_rounds_used(rounds);
    return o;
}

ReversedOrientation::ReversedOrientation(const Orientation& o) {
    const StaticGraph& g = o.arcs().parent();
    const std::size_t n = g.vertex_count();
    off_.assign(n + 1, 0);
    for (Vertex v = 1; v <= n; ++v)
        o.for_each_out(v, [&](std::size_t, Vertex head) { ++off_[head]; });
    for (std::size_t v = 1; v <= n; ++v) off_[v] += off_[v - 1];
    tails_.resize(off_[n]);
    std::vector<std::uint32_t> cur(off_.begin(), off_.end() - 1);
    for (Vertex v = 1; v <= n; ++v)
        o.for_each_out(v, [&](std::size_t, Vertex head) {
            tails_[cur[head - 1]++] = v;
        });
}

} // namespace cloud
