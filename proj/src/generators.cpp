#include "cloud/generators.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace cloud {

namespace {

Vertex grid_id(std::size_t w, std::size_t r, std::size_t c) {
    return static_cast<Vertex>(r * w + c + 1);
}

std::vector<std::pair<Vertex, Vertex>> grid_edges(std::size_t w, std::size_t h) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(2 * w * h);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) {
            if (c + 1 < w) edges.emplace_back(grid_id(w, r, c), grid_id(w, r, c + 1));
            if (r + 1 < h) edges.emplace_back(grid_id(w, r, c), grid_id(w, r + 1, c));
        }
    return edges;
}

// Deterministic uniform double in [0,1): independent of libstdc++'s
// distribution internals, so fixtures stay byte-stable across platforms.
double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

StaticGraph make_grid(std::size_t width, std::size_t height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("grid dimensions must be >= 1");
    return StaticGraph::from_edges(width * height, grid_edges(width, height));
}

StaticGraph make_tri_grid(std::size_t width, std::size_t height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("grid dimensions must be >= 1");
    auto edges = grid_edges(width, height);
    for (std::size_t r = 0; r + 1 < height; ++r)
        for (std::size_t c = 0; c + 1 < width; ++c)
            edges.emplace_back(grid_id(width, r, c), grid_id(width, r + 1, c + 1));
    return StaticGraph::from_edges(width * height, edges);
}

StaticGraph make_star(std::size_t n) {
    if (n < 1) throw std::invalid_argument("star size must be >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t v = 2; v <= n; ++v)
        edges.emplace_back(1, static_cast<Vertex>(v));
    return StaticGraph::from_edges(n, edges);
}

StaticGraph make_path(std::size_t n) {
    if (n < 1) throw std::invalid_argument("path size must be >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t v = 1; v < n; ++v)
        edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(v + 1));
    return StaticGraph::from_edges(n, edges);
}

StaticGraph make_random_planar(std::size_t width, std::size_t height,
                               double p, std::uint64_t seed) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("grid dimensions must be >= 1");
    std::mt19937_64 rng(seed);
    auto edges = grid_edges(width, height);
    for (std::size_t r = 0; r + 1 < height; ++r)
        for (std::size_t c = 0; c + 1 < width; ++c)
            if (unit_real(rng) < p)
                edges.emplace_back(grid_id(width, r, c), grid_id(width, r + 1, c + 1));
    // Grid edges are always kept, so the largest (and only) connected
    // component is the whole graph.
    return StaticGraph::from_edges(width * height, edges);
}

StaticGraph make_crossed_grid(std::size_t width, std::size_t height,
                              std::size_t extra, std::uint64_t seed) {
    const std::size_t n = width * height;
    auto edges = grid_edges(width, height);
    std::set<std::pair<Vertex, Vertex>> have(edges.begin(), edges.end());
    std::mt19937_64 rng(seed);
    std::size_t added = 0, attempts = 0;
    while (added < extra && attempts++ < 64 * (extra + 1)) {
        Vertex u = static_cast<Vertex>(rng() % n + 1);
        Vertex v = static_cast<Vertex>(rng() % n + 1);
        if (u == v) continue;
        const Vertex a = std::min(u, v), b = std::max(u, v);
        if (!have.insert({a, b}).second) continue;
        edges.emplace_back(a, b);
        ++added;
    }
    return StaticGraph::from_edges(n, edges);
}

StaticGraph generate(const GenParams& params) {
    if (params.kind == "grid") return make_grid(params.width, params.height);
    if (params.kind == "tri-grid") return make_tri_grid(params.width, params.height);
    if (params.kind == "star") return make_star(params.width);
    if (params.kind == "path") return make_path(params.width);
    if (params.kind == "random-planar")
        return make_random_planar(params.width, params.height, params.p, params.seed);
    if (params.kind == "crossed-grid")
        return make_crossed_grid(params.width, params.height, params.extra, params.seed);
    throw std::invalid_argument("unknown generator kind: " + params.kind);
}

} // namespace cloud
