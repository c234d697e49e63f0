#include "cloud/tree_decomposition.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace cloud {

namespace {

struct TdRecursion {
    const StructureMinor& f;
    double alpha;
    SeparatorBackend backend;
    bool planar;
    std::size_t leaf_threshold;
    const std::function<void(std::vector<Vertex>, std::size_t)>& emit;

    CloudPartition::Scratch cs;
    StructureMinor::ExpandScratch es;
    std::size_t emitted = 0;

    /// One recursion frame: original node ids, carried set X (original
    /// ids, disjoint from nothing in particular but always a subset of
    /// `nodes`), and the parent bag index.
    struct Frame {
        std::vector<NodeId> nodes;
        std::vector<NodeId> carried;
        std::size_t parent;
    };
    std::vector<Frame> work;

    TdRecursion(const StructureMinor& f_, double alpha_, SeparatorBackend backend_,
                std::size_t leaf_threshold_,
                const std::function<void(std::vector<Vertex>, std::size_t)>& emit_)
        : f(f_), alpha(alpha_), backend(backend_), planar(f_.partition().phi() == 0),
          leaf_threshold(leaf_threshold_), emit(emit_),
          cs(f_.partition().make_scratch()) {}

    std::size_t emit_bag(const std::vector<NodeId>& bag_nodes, std::size_t parent) {
        std::vector<Vertex> bag;
        for (NodeId u : bag_nodes)
            f.expand(u, cs, es, [&](Vertex v) { bag.push_back(v); });
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        const std::size_t idx = emitted++;
        emit(std::move(bag), parent == ~std::size_t(0) ? idx : parent);
        return idx;
    }

    void run(std::vector<NodeId> all) {
        work.push_back({std::move(all), {}, ~std::size_t(0)});
        while (!work.empty()) {
            Frame fr = std::move(work.back());
            work.pop_back();
            step(std::move(fr));
        }
    }

    void step(Frame fr) {
        const std::size_t k = fr.nodes.size();
        if (k == 0) return;

        // Split disconnected instances into components first; the carried
        // set follows its nodes and no bag is emitted for the split.
        WeightedGraph wg;
        std::vector<std::uint32_t> local(f.node_count() + 1, 0);
        for (std::size_t i = 0; i < k; ++i) local[fr.nodes[i]] = static_cast<std::uint32_t>(i + 1);
        {
            std::vector<std::uint32_t> comp(k, ~0u);
            std::uint32_t comps = 0;
            for (std::uint32_t s = 0; s < k; ++s) {
                if (comp[s] != ~0u) continue;
                std::vector<std::uint32_t> stack{s};
                comp[s] = comps;
                while (!stack.empty()) {
                    const std::uint32_t x = stack.back();
                    stack.pop_back();
                    f.for_each_neighbor(fr.nodes[x], [&](NodeId w) {
                        if (!local[w]) return;
                        const std::uint32_t j = local[w] - 1;
                        if (comp[j] == ~0u) {
                            comp[j] = comps;
                            stack.push_back(j);
                        }
                    });
                }
                ++comps;
            }
            if (comps > 1) {
                for (std::uint32_t ci = 0; ci < comps; ++ci) {
                    Frame sub;
                    sub.parent = fr.parent;
                    for (std::size_t i = 0; i < k; ++i)
                        if (comp[i] == ci) sub.nodes.push_back(fr.nodes[i]);
                    for (NodeId u : fr.carried)
                        if (comp[local[u] - 1] == ci) sub.carried.push_back(u);
                    work.push_back(std::move(sub));
                }
                return;
            }
        }

        if (k <= leaf_threshold) {
            std::vector<NodeId> bag = fr.nodes;
            for (NodeId u : fr.carried)
                if (std::find(bag.begin(), bag.end(), u) == bag.end()) bag.push_back(u);
            emit_bag(bag, fr.parent);
            return;
        }

        // Separator on the induced weighted subgraph.
        wg.off.assign(k + 1, 0);
        wg.weight.resize(k);
        std::vector<std::vector<std::uint32_t>> adj(k);
        for (std::size_t i = 0; i < k; ++i) {
            wg.weight[i] = f.weight(fr.nodes[i]);
            f.for_each_neighbor(fr.nodes[i], [&](NodeId w) {
                if (local[w]) adj[i].push_back(local[w]);
            });
            wg.off[i + 1] = wg.off[i] + adj[i].size();
        }
        wg.nbr.resize(wg.off[k]);
        {
            std::size_t a = 0;
            for (const auto& row : adj)
                for (auto v : row) wg.nbr[a++] = v;
        }
        SeparatorResult sr = find_separator(wg, alpha, backend, planar);
        if (sr.degenerate || sr.count(Side::S) == k || sr.count(Side::A) == 0
            || sr.count(Side::B) == 0) {
            std::vector<NodeId> bag = fr.nodes;
            for (NodeId u : fr.carried)
                if (std::find(bag.begin(), bag.end(), u) == bag.end()) bag.push_back(u);
            emit_bag(bag, fr.parent);
            return;
        }

        // bag = S united with X
        std::vector<NodeId> s_nodes;
        for (std::size_t i = 0; i < k; ++i)
            if (sr.side[i] == Side::S) s_nodes.push_back(fr.nodes[i]);
        std::vector<NodeId> bag = s_nodes;
        for (NodeId u : fr.carried)
            if (std::find(bag.begin(), bag.end(), u) == bag.end()) bag.push_back(u);
        const std::size_t me = emit_bag(bag, fr.parent);

        auto make_child = [&](Side keep) {
            Frame child;
            child.parent = me;
            for (std::size_t i = 0; i < k; ++i)
                if (sr.side[i] == keep || sr.side[i] == Side::S)
                    child.nodes.push_back(fr.nodes[i]);
            // X_side = (X union S) intersected with (side union S)
            std::vector<NodeId> xs = fr.carried;
            for (NodeId u : s_nodes)
                if (std::find(xs.begin(), xs.end(), u) == xs.end()) xs.push_back(u);
            for (NodeId u : xs) {
                const Side s = sr.side[local[u] - 1];
                if (s == keep || s == Side::S) child.carried.push_back(u);
            }
            return child;
        };
        work.push_back(make_child(Side::B));
        work.push_back(make_child(Side::A));
    }
};

} // namespace

void decompose_stream(const StaticGraph& g, const CloudPartition& p,
                      const StructureMinor& f, double alpha, SeparatorBackend backend,
                      const std::function<void(std::vector<Vertex>, std::size_t)>& emit,
                      std::size_t leaf_threshold) {
    (void)g;
    (void)p;
    TdRecursion rec(f, alpha, backend, leaf_threshold, emit);
    std::vector<NodeId> all(f.node_count());
    for (NodeId u = 1; u <= f.node_count(); ++u) all[u - 1] = u;
    rec.run(std::move(all));
}

TreeDecomposition decompose(const StaticGraph& g, const CloudPartition& p,
                            const StructureMinor& f, double alpha,
                            SeparatorBackend backend, std::size_t leaf_threshold) {
    TreeDecomposition td;
    decompose_stream(g, p, f, alpha, backend,
                     [&](std::vector<Vertex> bag, std::size_t parent) {
                         td.bags.push_back(std::move(bag));
                         td.parent.push_back(parent);
                     },
                     leaf_threshold);
    return td;
}

TdValidation validate_td(const StaticGraph& g, const TreeDecomposition& td) {
    TdValidation r;
    r.width = td.width();
    r.bag_count = td.bags.size();
    const std::size_t n = g.vertex_count();

    // Per-vertex bag membership lists.
    std::vector<std::vector<std::uint32_t>> bags_of(n + 1);
    for (std::size_t b = 0; b < td.bags.size(); ++b)
        for (Vertex v : td.bags[b]) {
            if (v < 1 || v > n) {
                r.violated = 1;
                r.witness = "bag " + std::to_string(b + 1) + " contains the unknown vertex "
                          + std::to_string(v);
                return r;
            }
            bags_of[v].push_back(static_cast<std::uint32_t>(b));
        }

    // Condition 1: coverage.
    for (Vertex v = 1; v <= n; ++v)
        if (bags_of[v].empty()) {
            r.violated = 1;
            r.witness = "vertex " + std::to_string(v) + " is in no bag";
            return r;
        }

    // Condition 2: every edge inside some bag.
    for (Vertex v = 1; v <= n; ++v) {
        bool bad = false;
        Vertex bad_w = 0;
        g.for_each_neighbor(v, [&](std::size_t, Vertex w) {
            if (w < v || bad) return;
            // intersect the two sorted membership lists
            const auto& a = bags_of[v];
            const auto& b = bags_of[w];
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] == b[j]) return;
                a[i] < b[j] ? ++i : ++j;
            }
            bad = true;
            bad_w = w;
        });
        if (bad) {
            r.violated = 2;
            r.witness = "edge {" + std::to_string(v) + "," + std::to_string(bad_w)
                      + "} is in no bag";
            return r;
        }
    }

    // Condition 3: the bags holding each vertex induce a connected subtree.
    std::vector<std::vector<std::uint32_t>> tree(td.bags.size());
    for (std::size_t b = 0; b < td.bags.size(); ++b)
        if (td.parent[b] != b && td.parent[b] < td.bags.size()) {
            tree[b].push_back(static_cast<std::uint32_t>(td.parent[b]));
            tree[td.parent[b]].push_back(static_cast<std::uint32_t>(b));
        }
    std::vector<char> in_set(td.bags.size(), 0), seen(td.bags.size(), 0);
    for (Vertex v = 1; v <= n; ++v) {
        const auto& bs = bags_of[v];
        if (bs.size() <= 1) continue;
        for (auto b : bs) in_set[b] = 1;
        std::vector<std::uint32_t> stack{bs[0]};
        seen[bs[0]] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const std::uint32_t b = stack.back();
            stack.pop_back();
            for (auto w : tree[b])
                if (in_set[w] && !seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        const bool ok = reached == bs.size();
        for (auto b : bs) {
            in_set[b] = 0;
            seen[b] = 0;
        }
        if (!ok) {
            r.violated = 3;
            r.witness = "bags containing vertex " + std::to_string(v)
                      + " are not connected in the tree";
            return r;
        }
    }

    r.valid = true;
    return r;
}

void write_pace(std::ostream& out, const TreeDecomposition& td, std::size_t n) {
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
    for (std::size_t b = 0; b < td.bags.size(); ++b) {
        out << "b " << b + 1;
        for (Vertex v : td.bags[b]) out << ' ' << v;
        out << '\n';
    }
    for (std::size_t b = 0; b < td.bags.size(); ++b)
        if (td.parent[b] != b) out << td.parent[b] + 1 << ' ' << b + 1 << '\n';
}

TreeDecomposition read_pace(std::istream& in, std::size_t* n_out) {
    TreeDecomposition td;
    std::string line;
    std::size_t bag_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 's') {
            std::string s1, s2;
            std::size_t width_plus1 = 0, n = 0;
            ls >> s1 >> s2 >> bag_count >> width_plus1 >> n;
            if (s1 != "s" || s2 != "td")
                throw std::invalid_argument("td file: bad solution line");
            td.bags.assign(bag_count, {});
            td.parent.assign(bag_count, 0);
            for (std::size_t b = 0; b < bag_count; ++b) td.parent[b] = b;
            if (n_out) *n_out = n;
        } else if (line[0] == 'b') {
            char c;
            std::size_t id;
            ls >> c >> id;
            if (id < 1 || id > bag_count)
                throw std::invalid_argument("td file: bag id out of range");
            Vertex v;
            while (ls >> v) td.bags[id - 1].push_back(v);
            std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
        } else {
            std::size_t a, b;
            if (ls >> a >> b) tree_edges.emplace_back(a, b);
        }
    }
    // Root the tree at bag 1 to recover parent pointers.
    std::vector<std::vector<std::size_t>> adj(bag_count);
    for (auto [a, b] : tree_edges) {
        if (a < 1 || a > bag_count || b < 1 || b > bag_count)
            throw std::invalid_argument("td file: tree edge out of range");
        adj[a - 1].push_back(b - 1);
        adj[b - 1].push_back(a - 1);
    }
    if (bag_count) {
        std::vector<char> seen(bag_count, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const std::size_t b = stack.back();
            stack.pop_back();
            for (auto w : adj[b])
                if (!seen[w]) {
                    seen[w] = 1;
                    td.parent[w] = b;
                    stack.push_back(w);
                }
        }
    }
    return td;
}

} // namespace cloud
