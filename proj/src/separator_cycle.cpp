#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/property_map/property_map.hpp>

#include "separator_internal.hpp"

namespace cloud::detail {

namespace {

constexpr double kEps = 1e-9;
constexpr std::uint32_t kNone = ~0u;

using BoostGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
    boost::property<boost::edge_index_t, std::size_t>>;

/// Static halfedge view of an embedded planar graph.  Halfedges 2e and
/// 2e+1 are the two directions of edge e; rotation order comes from the
/// Boyer-Myrvold embedding.
struct Embedded {
    std::size_t n = 0, m = 0;
    std::vector<std::uint32_t> he_src, he_dst; // 1-indexed vertices
    std::vector<std::uint32_t> rot_next;       // next halfedge around src
    std::vector<std::uint32_t> rot_head;       // first halfedge out of v

    std::uint32_t twin(std::uint32_t h) const { return h ^ 1u; }
};

Embedded embed(const WeightedGraph& f) {
    const std::size_t n = f.node_count();
    BoostGraph bg(n);
    for (std::uint32_t u = 1; u <= n; ++u)
        f.for_each_neighbor(u, [&](std::uint32_t w) {
            if (w > u) boost::add_edge(u - 1, w - 1, bg);
        });
    std::size_t m = 0;
    for (auto [ei, eend] = boost::edges(bg); ei != eend; ++ei)
        boost::put(boost::edge_index, bg, *ei, m++);

    using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;
    std::vector<std::vector<EdgeDesc>> storage(n);
    auto emb = boost::make_iterator_property_map(storage.begin(),
                                                 boost::get(boost::vertex_index, bg));
    if (!boost::boyer_myrvold_planarity_test(
            boost::boyer_myrvold_params::graph = bg,
            boost::boyer_myrvold_params::embedding = emb))
        throw std::runtime_error("cycle separator backend: input graph is not planar");

    Embedded e;
    e.n = n;
    e.m = m;
    e.he_src.resize(2 * m);
    e.he_dst.resize(2 * m);
    e.rot_next.assign(2 * m, kNone);
    e.rot_head.assign(n + 1, kNone);
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t prev = kNone;
        for (const EdgeDesc& ed : storage[v]) {
            const std::size_t idx = boost::get(boost::edge_index, bg, ed);
            const bool at_source = boost::source(ed, bg) == v;
            const std::uint32_t h = static_cast<std::uint32_t>(2 * idx + (at_source ? 0 : 1));
            e.he_src[h] = static_cast<std::uint32_t>(v + 1);
            e.he_dst[h] = static_cast<std::uint32_t>(
                (at_source ? boost::target(ed, bg) : boost::source(ed, bg)) + 1);
            if (prev == kNone) e.rot_head[v + 1] = h;
            else e.rot_next[prev] = h;
            prev = h;
        }
        if (prev != kNone) e.rot_next[prev] = e.rot_head[v + 1];
    }
    return e;
}

struct Contour {
    std::vector<std::int64_t> pos;     // corner of each halfedge
    std::vector<std::int64_t> enter;   // first corner of each vertex
    std::vector<std::uint32_t> parent; // tree parent (0 at root)
    std::vector<std::uint32_t> depth;
    std::vector<char> is_tree;         // per halfedge
    std::vector<std::uint64_t> prefix; // prefix[c+1] = sum of w(x) with enter[x] <= c
    std::size_t radius = 0;
    std::size_t nontree_edges = 0;
};

/// BFS spanning tree plus the tree's contour: a DFS that scans every
/// vertex's full rotation, advancing a corner counter on each tree-edge
/// traversal.  By planarity, a chord's two corner positions (p1, p2)
/// enclose exactly the first-visit corners of the vertices strictly on one
/// side of its fundamental cycle, apart from cycle vertices themselves.
Contour build_contour(const Embedded& e, const WeightedGraph& f, std::uint32_t root) {
    Contour c;
    c.pos.assign(2 * e.m, 0);
    c.enter.assign(e.n + 1, -1);
    c.parent.assign(e.n + 1, 0);
    c.depth.assign(e.n + 1, 0);
    c.is_tree.assign(2 * e.m, 0);

    {
        std::vector<std::uint32_t> queue{root};
        std::vector<char> seen(e.n + 1, 0);
        seen[root] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t v = queue[head];
            const std::uint32_t h0 = e.rot_head[v];
            if (h0 == kNone) continue;
            std::uint32_t h = h0;
            do {
                const std::uint32_t w = e.he_dst[h];
                if (!seen[w]) {
                    seen[w] = 1;
                    c.parent[w] = v;
                    c.depth[w] = c.depth[v] + 1;
                    c.radius = std::max<std::size_t>(c.radius, c.depth[w]);
                    c.is_tree[h] = c.is_tree[e.twin(h)] = 1;
                    queue.push_back(w);
                }
                h = e.rot_next[h];
            } while (h != h0);
        }
        for (std::uint32_t v = 1; v <= e.n; ++v)
            if (!seen[v])
                throw std::runtime_error("cycle separator backend: disconnected input");
    }
    for (std::size_t h = 0; h < 2 * e.m; ++h) c.nontree_edges += !c.is_tree[h];
    c.nontree_edges /= 2;

    struct Frame {
        std::uint32_t v;
        std::uint32_t wrap; // iteration ends when cur reaches wrap
        std::uint32_t cur;  // kNone = done
        bool pending_bump;  // counter bump owed after a child returns
    };
    std::int64_t counter = 0;
    c.enter[root] = 0;
    std::vector<Frame> stack;
    if (e.rot_head[root] != kNone)
        stack.push_back({root, e.rot_head[root], e.rot_head[root], false});
    while (!stack.empty()) {
        Frame& fr = stack.back();
        if (fr.pending_bump) {
            ++counter;
            fr.pending_bump = false;
        }
        if (fr.cur == kNone) {
            stack.pop_back();
            continue;
        }
        const std::uint32_t h = fr.cur;
        c.pos[h] = counter;
        const std::uint32_t next = e.rot_next[h];
        fr.cur = next == fr.wrap ? kNone : next;

        const std::uint32_t w = e.he_dst[h];
        if (c.is_tree[h] && c.parent[w] == fr.v && c.enter[w] < 0) {
            ++counter;
            c.enter[w] = counter;
            fr.pending_bump = true;
            const std::uint32_t tw = e.twin(h);
            const std::uint32_t start = e.rot_next[tw];
            stack.push_back({w, tw, start == tw ? kNone : start, false});
        }
    }

    c.prefix.assign(static_cast<std::size_t>(counter) + 2, 0);
    for (std::uint32_t v = 1; v <= e.n; ++v) {
        assert(c.enter[v] >= 0 && "contour walk must visit every vertex");
        c.prefix[static_cast<std::size_t>(c.enter[v]) + 1] += f.weight[v - 1];
    }
    for (std::size_t i = 1; i < c.prefix.size(); ++i) c.prefix[i] += c.prefix[i - 1];
    return c;
}

} // namespace

SeparatorResult cycle_separator(const WeightedGraph& f, double alpha) {
    const std::size_t n = f.node_count();
    const std::uint64_t total = f.total_weight();
    const double cap = alpha * static_cast<double>(total) + kEps;

    Embedded e = embed(f);
    if (e.m == 0) return level_separator(f, alpha);
    Contour c = build_contour(e, f, 1);

    // Tree-like or very deep inputs gain nothing from fundamental cycles.
    if (c.nontree_edges == 0) return level_separator(f, alpha);
    if (n > 200 && 2 * c.radius + 1 >= n) return level_separator(f, alpha);

    // Candidates: every nontree edge, plus a virtual fan-triangulation
    // chord for every face corner pair.  Virtual chords never get spliced;
    // only their two corner positions matter.
    struct Cand {
        std::uint32_t u, v;
        std::int64_t p1, p2;
    };
    std::vector<Cand> cands;
    for (std::size_t ei = 0; ei < e.m; ++ei)
        if (!c.is_tree[2 * ei])
            cands.push_back({e.he_src[2 * ei], e.he_dst[2 * ei],
                             c.pos[2 * ei], c.pos[2 * ei + 1]});
    {
        std::vector<char> face_seen(2 * e.m, 0);
        std::vector<std::uint32_t> face;
        for (std::size_t h0 = 0; h0 < 2 * e.m; ++h0) {
            if (face_seen[h0]) continue;
            face.clear();
            std::uint32_t h = static_cast<std::uint32_t>(h0);
            do {
                face_seen[h] = 1;
                face.push_back(h);
                h = e.rot_next[e.twin(h)];
            } while (h != h0);
            if (face.size() <= 3) continue;
            const std::uint32_t anchor = e.he_src[face[0]];
            for (std::size_t i = 1; i + 2 < face.size(); ++i) {
                const std::uint32_t w = e.he_dst[face[i]];
                if (w == anchor) continue;
                cands.push_back({anchor, w, c.pos[face[0]], c.pos[face[i + 1]]});
            }
        }
    }

    std::vector<std::uint32_t> path;
    auto collect_path = [&](std::uint32_t u, std::uint32_t v) {
        path.clear();
        std::vector<std::uint32_t> right;
        std::uint32_t a = u, b = v;
        while (c.depth[a] > c.depth[b]) {
            path.push_back(a);
            a = c.parent[a];
        }
        while (c.depth[b] > c.depth[a]) {
            right.push_back(b);
            b = c.parent[b];
        }
        while (a != b) {
            path.push_back(a);
            right.push_back(b);
            a = c.parent[a];
            b = c.parent[b];
        }
        path.push_back(a);
        path.insert(path.end(), right.rbegin(), right.rend());
    };

    struct Best {
        bool balanced = false;
        std::size_t cyclen = 0;
        double maxside = 0;
        std::size_t index = ~std::size_t(0);
    } best;

    for (std::size_t i = 0; i < cands.size(); ++i) {
        collect_path(cands[i].u, cands[i].v);
        std::int64_t p1 = cands[i].p1, p2 = cands[i].p2;
        if (p1 > p2) std::swap(p1, p2);
        std::uint64_t cycw = 0;
        for (auto x : path) cycw += f.weight[x - 1];
        std::uint64_t inside = 0;
        if (p2 > p1)
            inside = c.prefix[static_cast<std::size_t>(p2 - 1) + 1]
                   - c.prefix[static_cast<std::size_t>(p1) + 1];
        for (auto x : path)
            if (c.enter[x] > p1 && c.enter[x] < p2) inside -= f.weight[x - 1];
        const std::uint64_t outside = total - cycw - inside;
        const double maxside = static_cast<double>(std::max(inside, outside));
        const bool balanced = maxside <= cap;

        bool better = false;
        if (best.index == ~std::size_t(0)) better = true;
        else if (balanced != best.balanced) better = balanced;
        else if (balanced) better = path.size() < best.cyclen
                 || (path.size() == best.cyclen && maxside < best.maxside);
        else better = maxside < best.maxside
                 || (maxside == best.maxside && path.size() < best.cyclen);
        if (better) best = {balanced, path.size(), maxside, i};
    }

    // Degenerate embeddings (no balanced fundamental cycle) fall back to
    // the level search, which always balances.
    if (!best.balanced) return level_separator(f, alpha);

    SeparatorResult r;
    r.side.assign(n, Side::A);
    collect_path(cands[best.index].u, cands[best.index].v);
    for (auto x : path) r.side[x - 1] = Side::S;
    assemble_sides(f, r);
    // One-sided or unbalanced outcomes starve the recursive callers; the
    // level search always yields two usable sides.
    if (static_cast<double>(std::max(r.weight_a, r.weight_b)) > cap
        || r.weight_a == 0 || r.weight_b == 0)
        return level_separator(f, alpha);
    return r;
}

} // namespace cloud::detail
