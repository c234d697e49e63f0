#include "cloud/static_graph.hpp"

#include <algorithm>
#include <string>

namespace cloud {

StaticGraph StaticGraph::from_edges(
    std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    StaticGraph g;
    g.n_ = n;
    g.m_ = edges.size();
    g.offsets_.assign(n + 1, 0);

    for (auto [u, v] : edges) {
        if (u == v)
            throw std::invalid_argument("graph has a self-loop at vertex "
                                        + std::to_string(u));
        if (u < 1 || v < 1 || u > n || v > n)
            throw std::invalid_argument("edge endpoint out of range");
        ++g.offsets_[u];
        ++g.offsets_[v];
    }
    for (std::size_t v = 1; v <= n; ++v) g.offsets_[v] += g.offsets_[v - 1];

    g.nbr_.resize(2 * g.m_);
    g.cross_.resize(2 * g.m_);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.nbr_[cursor[u - 1]++] = v;
        g.nbr_[cursor[v - 1]++] = u;
    }
    for (std::size_t v = 1; v <= n; ++v)
        std::sort(g.nbr_.begin() + g.offsets_[v - 1], g.nbr_.begin() + g.offsets_[v]);

    for (std::size_t v = 1; v <= n; ++v) {
        const std::size_t b = g.offsets_[v - 1], e = g.offsets_[v];
        for (std::size_t a = b + 1; a < e; ++a)
            if (g.nbr_[a] == g.nbr_[a - 1])
                throw std::invalid_argument(
                    "graph has a multi-edge between " + std::to_string(v)
                    + " and " + std::to_string(g.nbr_[a]));
        for (std::size_t a = b; a < e; ++a) {
            const Vertex w = g.nbr_[a];
            const std::size_t j = g.find_arc(w, static_cast<Vertex>(v));
            g.cross_[a] = static_cast<ArcIndex>(j);
        }
    }
    return g;
}

std::size_t StaticGraph::find_arc(Vertex v, Vertex u) const {
    const std::size_t b = offsets_[v - 1], e = offsets_[v];
    auto it = std::lower_bound(nbr_.begin() + b, nbr_.begin() + e, u);
    if (it != nbr_.begin() + e && *it == u)
        return static_cast<std::size_t>(it - (nbr_.begin() + b));
    return e - b;
}

std::size_t StaticGraph::component_count() const {
    if (n_ == 0) return 0;
    std::vector<bool> seen(n_ + 1, false);
    std::vector<Vertex> stack;
    std::size_t comps = 0;
    for (Vertex s = 1; s <= n_; ++s) {
        if (seen[s]) continue;
        ++comps;
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for_each_neighbor(v, [&](std::size_t, Vertex w) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            });
        }
    }
    return comps;
}

bool StaticGraph::is_connected() const { return component_count() <= 1; }

} // namespace cloud
