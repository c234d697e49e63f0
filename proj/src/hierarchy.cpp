#include "cloud/hierarchy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>

namespace cloud {

namespace {

/// Node of a recursion instance: an F-node, possibly restricted to a
/// contiguous range of its expand-cloud ordinals (only emitted packs
/// restrict; recursed instances always carry whole nodes).
struct InstNode {
    NodeId node;
    std::uint32_t cloud_lo, cloud_hi;
    bool internal_owned; // false once the node sat in an ancestor separator
};

struct Instance {
    std::vector<InstNode> nodes;
    // local edges, 0-based pairs a<b; S-S edges are dropped on B-children
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::size_t depth = 0;
};

/// Shared state of one decomposition run.
struct Recursion {
    const StaticGraph& g;
    const StructureMinor& f;
    const CloudPartition& p;
    const ReversedOrientation& rev;
    double alpha;
    SeparatorBackend backend;
    bool planar;
    std::uint64_t limit; // emit when instance weight < limit

    CloudPartition::Scratch cs;
    StructureMinor::ExpandScratch es;

    // epoch-marked vertex maps reused across emissions
    std::vector<std::uint32_t> mark_epoch;
    std::vector<std::uint32_t> local_id;
    std::vector<std::uint32_t> local_node;
    std::uint32_t epoch = 0;

    MiniDecomposition out;
    std::vector<Instance> work;

    Recursion(const StaticGraph& g_, const CloudPartition& p_, const StructureMinor& f_,
              const ReversedOrientation& rev_, double alpha_, SeparatorBackend backend_,
              std::uint64_t limit_)
        : g(g_), f(f_), p(p_), rev(rev_), alpha(alpha_), backend(backend_),
          planar(p_.phi() == 0), limit(limit_), cs(p_.make_scratch()),
          mark_epoch(g_.vertex_count() + 1, 0), local_id(g_.vertex_count() + 1, 0),
          local_node(g_.vertex_count() + 1, 0) {}

    std::uint64_t node_weight(const InstNode& in) {
        if (in.cloud_lo == 0 && in.cloud_hi >= f.cloud_count_of(in.node))
            return f.weight(in.node);
        std::uint64_t w = 0;
        f.expand_clouds(in.node, cs, es, [&](std::uint32_t ord, Vertex) {
            if (ord >= in.cloud_lo && ord < in.cloud_hi) ++w;
        });
        return w;
    }

    std::uint64_t instance_weight(const Instance& inst) {
        std::uint64_t w = 0;
        for (const auto& in : inst.nodes) w += node_weight(in);
        return w;
    }

    void emit(const Instance& inst) {
        ++epoch;
        MiniGraph mg;
        mg.depth = inst.depth;
        for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
            const auto& in = inst.nodes[i];
            f.expand_clouds(in.node, cs, es, [&](std::uint32_t ord, Vertex v) {
                if (ord < in.cloud_lo || ord >= in.cloud_hi) return;
                mg.vertices.push_back(v);
                mark_epoch[v] = epoch;
                local_node[v] = static_cast<std::uint32_t>(i);
            });
        }
        std::sort(mg.vertices.begin(), mg.vertices.end());
        for (std::size_t i = 0; i < mg.vertices.size(); ++i)
            local_id[mg.vertices[i]] = static_cast<std::uint32_t>(i);

        // Owned edges: intra-node edges where the node still owns its
        // internals, plus border edges joining nodes connected in this
        // instance.  Enumerated once per edge at its orientation head via
        // the reversed adjacency.
        std::set<std::pair<std::uint32_t, std::uint32_t>> inst_edges(
            inst.edges.begin(), inst.edges.end());
        for (Vertex y : mg.vertices) {
            rev.for_each_in(y, [&](Vertex x) {
                if (mark_epoch[x] != epoch) return;
                const std::uint32_t nu = local_node[x], nv = local_node[y];
                bool owned;
                if (nu == nv) {
                    owned = inst.nodes[nu].internal_owned;
                } else {
                    owned = inst_edges.count({std::min(nu, nv), std::max(nu, nv)}) > 0;
                }
                if (owned)
                    mg.edges.emplace_back(std::min(local_id[x], local_id[y]),
                                          std::max(local_id[x], local_id[y]));
            });
        }
        std::sort(mg.edges.begin(), mg.edges.end());
        mg.duplicate.assign(mg.vertices.size(), 0);
        out.total_occurrences += mg.vertices.size();
        if (out.dups_by_depth.size() <= inst.depth)
            out.dups_by_depth.resize(inst.depth + 1, 0);
        out.minis.push_back(std::move(mg));
    }

    /// Greedy cloud packing for a node heavier than a third of its
    /// instance: every pack contains the expanded neighborhood separator
    /// plus as many of the heavy node's clouds as fit under the limit; the
    /// separator's own edges go to the first pack only.
    void emit_packs(const Instance& inst, std::size_t heavy_idx) {
        const InstNode heavy = inst.nodes[heavy_idx];
        std::vector<std::uint32_t> sep_idx;
        std::set<std::pair<std::uint32_t, std::uint32_t>> inst_edges(
            inst.edges.begin(), inst.edges.end());
        for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
            if (i == heavy_idx) continue;
            const std::uint32_t a = static_cast<std::uint32_t>(std::min(i, heavy_idx));
            const std::uint32_t b = static_cast<std::uint32_t>(std::max(i, heavy_idx));
            if (inst_edges.count({a, b}))
                sep_idx.push_back(static_cast<std::uint32_t>(i));
        }
        std::uint64_t sep_weight = 0;
        for (auto i : sep_idx) sep_weight += node_weight(inst.nodes[i]);

        const auto sizes = [&] {
            std::vector<std::uint64_t> s;
            f.expand_clouds(heavy.node, cs, es, [&](std::uint32_t ord, Vertex) {
                if (ord >= s.size()) s.resize(ord + 1, 0);
                ++s[ord];
            });
            return s;
        }();

        auto flush_pack = [&](std::uint32_t lo, std::uint32_t hi, bool first) {
            Instance pack;
            pack.depth = inst.depth + 1;
            pack.nodes.push_back({heavy.node, lo, hi, heavy.internal_owned});
            for (auto i : sep_idx) {
                InstNode s = inst.nodes[i];
                if (!first) s.internal_owned = false;
                pack.nodes.push_back(s);
            }
            // edges: heavy-to-separator always; separator-to-separator in
            // the first pack only
            for (std::uint32_t a = 1; a <= sep_idx.size(); ++a)
                pack.edges.emplace_back(0, a);
            if (first)
                for (std::uint32_t a = 0; a < sep_idx.size(); ++a)
                    for (std::uint32_t b = a + 1; b < sep_idx.size(); ++b) {
                        if (inst_edges.count({std::min(sep_idx[a], sep_idx[b]),
                                              std::max(sep_idx[a], sep_idx[b])}))
                            pack.edges.emplace_back(a + 1, b + 1);
                    }
            emit(pack);
        };

        bool first = true;
        std::uint32_t lo = heavy.cloud_lo;
        std::uint64_t acc = sep_weight;
        for (std::uint32_t c = heavy.cloud_lo; c < heavy.cloud_hi; ++c) {
            if (c < sizes.size() && acc + sizes[c] >= limit && c > lo) {
                flush_pack(lo, c, first);
                first = false;
                lo = c;
                acc = sep_weight;
            }
            acc += c < sizes.size() ? sizes[c] : 0;
        }
        flush_pack(lo, heavy.cloud_hi, first);

        // Continue without the heavy node; the separator nodes played the
        // A-side, so the continuation drops their internal edges and their
        // mutual edges.
        Instance rest;
        rest.depth = inst.depth + 1;
        std::vector<std::uint32_t> remap(inst.nodes.size(), ~0u);
        std::vector<char> in_sep(inst.nodes.size(), 0);
        for (auto i : sep_idx) in_sep[i] = 1;
        for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
            if (i == heavy_idx) continue;
            remap[i] = static_cast<std::uint32_t>(rest.nodes.size());
            InstNode c = inst.nodes[i];
            if (in_sep[i]) c.internal_owned = false;
            rest.nodes.push_back(c);
        }
        for (auto [a, b] : inst.edges) {
            if (remap[a] == ~0u || remap[b] == ~0u) continue;
            if (in_sep[a] && in_sep[b]) continue;
            rest.edges.emplace_back(std::min(remap[a], remap[b]),
                                    std::max(remap[a], remap[b]));
        }
        work.push_back(std::move(rest));
    }

    void run(Instance root) {
        work.push_back(std::move(root));
        while (!work.empty()) {
            Instance inst = std::move(work.back());
            work.pop_back();
            step(std::move(inst));
        }
    }

    void step(Instance inst) {
        // Work on connected pieces.
        const std::size_t k = inst.nodes.size();
        if (k == 0) return;
        std::vector<std::vector<std::uint32_t>> adj(k);
        for (auto [a, b] : inst.edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<std::uint32_t> comp_of(k, ~0u);
        std::uint32_t comps = 0;
        for (std::uint32_t s = 0; s < k; ++s) {
            if (comp_of[s] != ~0u) continue;
            std::vector<std::uint32_t> stack{s};
            comp_of[s] = comps;
            while (!stack.empty()) {
                const std::uint32_t v = stack.back();
                stack.pop_back();
                for (auto w : adj[v])
                    if (comp_of[w] == ~0u) {
                        comp_of[w] = comps;
                        stack.push_back(w);
                    }
            }
            ++comps;
        }
        if (comps > 1) {
            for (std::uint32_t ci = 0; ci < comps; ++ci) {
                Instance sub;
                sub.depth = inst.depth;
                std::vector<std::uint32_t> remap(k, ~0u);
                for (std::uint32_t i = 0; i < k; ++i)
                    if (comp_of[i] == ci) {
                        remap[i] = static_cast<std::uint32_t>(sub.nodes.size());
                        sub.nodes.push_back(inst.nodes[i]);
                    }
                for (auto [a, b] : inst.edges)
                    if (comp_of[a] == ci)
                        sub.edges.emplace_back(std::min(remap[a], remap[b]),
                                               std::max(remap[a], remap[b]));
                work.push_back(std::move(sub));
            }
            return;
        }

        const std::uint64_t w = instance_weight(inst);
        if (w < limit) {
            emit(inst);
            return;
        }

        // Heavy node: greedy packing against its neighborhood.  With no
        // heavy node every weight is <= w/3, so at least three nodes
        // remain and the separator search below is well-posed.
        std::size_t heavy = k;
        for (std::size_t i = 0; i < k; ++i) {
            const std::uint64_t nw = node_weight(inst.nodes[i]);
            if (3 * nw > w && (heavy == k || nw > node_weight(inst.nodes[heavy])))
                heavy = i;
        }
        if (heavy < k) {
            emit_packs(inst, heavy);
            return;
        }
        assert(k >= 3);

        // Balanced separator split.
        WeightedGraph wg;
        wg.off.assign(k + 1, 0);
        wg.weight.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            wg.weight[i] = node_weight(inst.nodes[i]);
            wg.off[i + 1] = wg.off[i] + adj[i].size();
        }
        wg.nbr.resize(wg.off[k]);
        {
            std::size_t a = 0;
            for (const auto& row : adj)
                for (auto v : row) wg.nbr[a++] = v + 1;
        }
        SeparatorResult sr = find_separator(wg, alpha, backend, planar);
        if (sr.degenerate || sr.count(Side::S) == k
            || sr.count(Side::A) == 0 || sr.count(Side::B) == 0) {
            // No usable split (degenerate graph or a one-sided separator):
            // emit as-is rather than recurse without progress.
            ++out.forced_emissions;
            emit(inst);
            return;
        }

        auto make_child = [&](Side keep, bool strip_s) {
            Instance child;
            child.depth = inst.depth + 1;
            std::vector<std::uint32_t> remap(k, ~0u);
            for (std::uint32_t i = 0; i < k; ++i) {
                const Side s = sr.side[i];
                if (s != keep && s != Side::S) continue;
                remap[i] = static_cast<std::uint32_t>(child.nodes.size());
                InstNode c = inst.nodes[i];
                if (strip_s && s == Side::S) c.internal_owned = false;
                child.nodes.push_back(c);
            }
            for (auto [a, b] : inst.edges) {
                if (remap[a] == ~0u || remap[b] == ~0u) continue;
                if (strip_s && sr.side[a] == Side::S && sr.side[b] == Side::S) continue;
                child.edges.emplace_back(std::min(remap[a], remap[b]),
                                         std::max(remap[a], remap[b]));
            }
            return child;
        };
        work.push_back(make_child(Side::B, true));
        work.push_back(make_child(Side::A, false));
    }
};

} // namespace

std::size_t micro_cap_for(std::size_t n) {
    const std::size_t log_n = n <= 2 ? 1
        : static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
    return std::min<std::size_t>(8, std::max<std::size_t>(4, log_n / 4));
}

MiniDecomposition mini_graphs(const StaticGraph& g, const CloudPartition& p,
                              const StructureMinor& f, unsigned delta, double alpha,
                              SeparatorBackend backend) {
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    const double logn = std::log2(static_cast<double>(std::max<std::size_t>(g.vertex_count(), 2)));
    double lim = std::pow(logn, static_cast<double>(delta));
    std::uint64_t limit = lim >= 1e18 ? ~0ull : static_cast<std::uint64_t>(std::ceil(lim));
    if (limit < 2) limit = 2;

    Orientation orient = orient_bounded(g, p.phi() ? p.phi() - 1 : 3);
    ReversedOrientation rev(orient);

    Recursion rec(g, p, f, rev, alpha, backend, limit);
    Instance root;
    root.depth = 0;
    for (NodeId u = 1; u <= f.node_count(); ++u)
        root.nodes.push_back({u, 0, std::max<std::uint32_t>(f.cloud_count_of(u), 1), true});
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (NodeId u = 1; u <= f.node_count(); ++u)
        f.for_each_neighbor(u, [&](NodeId v) {
            const std::uint32_t a = std::min(u, v) - 1, b = std::max(u, v) - 1;
            if (seen.insert({a, b}).second) root.edges.emplace_back(a, b);
        });
    rec.run(std::move(root));

    MiniDecomposition out = std::move(rec.out);
    out.duplicates = out.total_occurrences - g.vertex_count();

    // duplicate flags + per-depth histogram
    std::vector<std::uint32_t> occurrences(g.vertex_count() + 1, 0);
    for (const auto& m : out.minis)
        for (Vertex v : m.vertices) ++occurrences[v];
    std::size_t max_depth = 0;
    for (const auto& m : out.minis) max_depth = std::max(max_depth, m.depth);
    out.dups_by_depth.assign(max_depth + 1, 0);
    std::vector<char> seen_before(g.vertex_count() + 1, 0);
    for (auto& m : out.minis)
        for (std::size_t i = 0; i < m.vertices.size(); ++i) {
            const Vertex v = m.vertices[i];
            m.duplicate[i] = occurrences[v] > 1;
            if (seen_before[v]) ++out.dups_by_depth[m.depth];
            seen_before[v] = 1;
        }
    return out;
}

StaticGraph mini_local_graph(const MiniGraph& mini) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(mini.edges.size());
    for (auto [a, b] : mini.edges) edges.emplace_back(a + 1, b + 1);
    return StaticGraph::from_edges(mini.vertices.size(), edges);
}

MiniDecomposition micro_graphs(const MiniGraph& mini, std::size_t t, double alpha,
                               SeparatorBackend backend, std::size_t density,
                               bool planar) {
    if (t < 2) throw std::invalid_argument("micro cap must be >= 2");
    StaticGraph local = mini_local_graph(mini);
    if (local.vertex_count() == 0) return {};

    // Fresh cloud decomposition of the mini graph with cap 1: every vertex
    // is a big singleton cloud, so instance weight equals vertex count and
    // the t-vertex cap is exact.
    CloudPartition p = CloudPartition::build_with_cap(local, 1);
    StructureMinor f = StructureMinor::build(local, p);

    Orientation orient = orient_bounded(local, density);
    ReversedOrientation rev(orient);

    Recursion rec(local, p, f, rev, alpha, backend,
                  static_cast<std::uint64_t>(t) + 1);
    rec.planar = planar;
    Instance root;
    root.depth = 0;
    for (NodeId u = 1; u <= f.node_count(); ++u)
        root.nodes.push_back({u, 0, 1, true});
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (NodeId u = 1; u <= f.node_count(); ++u)
        f.for_each_neighbor(u, [&](NodeId v) {
            const std::uint32_t a = std::min(u, v) - 1, b = std::max(u, v) - 1;
            if (seen.insert({a, b}).second) root.edges.emplace_back(a, b);
        });
    rec.run(std::move(root));

    MiniDecomposition out = std::move(rec.out);
    out.duplicates = out.total_occurrences - local.vertex_count();
    std::vector<std::uint32_t> occurrences(local.vertex_count() + 1, 0);
    for (const auto& m : out.minis)
        for (Vertex v : m.vertices) ++occurrences[v];
    for (auto& m : out.minis)
        for (std::size_t i = 0; i < m.vertices.size(); ++i)
            m.duplicate[i] = occurrences[m.vertices[i]] > 1;
    return out;
}

} // namespace cloud
