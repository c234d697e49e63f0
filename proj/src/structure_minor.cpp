#include "cloud/structure_minor.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace cloud {

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Big: return "big";
        case NodeKind::Critical: return "critical";
        case NodeKind::MetaLeaf: return "meta-leaf";
        case NodeKind::MetaBridge: return "meta-bridge";
        case NodeKind::PhiMetaBridge: return "phi-meta-bridge";
    }
    return "?";
}

namespace {

struct NodeDraft {
    NodeKind kind;
    std::uint64_t weight;
    Vertex anchor;
    std::uint32_t clouds;
    std::uint8_t color;
};

/// Shared mutable state of the minor construction.
struct Builder {
    const StaticGraph& g;
    const CloudPartition& p;
    CloudPartition::Scratch cs;
    std::vector<NodeDraft> nodes;
    std::vector<std::vector<NodeId>> adj;
    std::vector<Vertex> cloud_buf;

    // Marks reused across passes; every user resets the bits it set.
    BitVec mark_a, mark_b, discovered, tree_seen;

    explicit Builder(const StaticGraph& g_, const CloudPartition& p_)
        : g(g_), p(p_), cs(p_.make_scratch()),
          mark_a(g_.vertex_count()), mark_b(g_.vertex_count()),
          discovered(g_.vertex_count()), tree_seen(g_.vertex_count()) {}

    NodeId add_node(NodeKind k, std::uint64_t w, Vertex anchor,
                    std::uint32_t clouds, std::uint8_t color) {
        nodes.push_back({k, w, anchor, clouds, color});
        adj.emplace_back();
        return static_cast<NodeId>(nodes.size());
    }

    void add_edge(NodeId u, NodeId v) {
        adj[u - 1].push_back(v);
        adj[v - 1].push_back(u);
    }

    void collect_cloud(Vertex v, std::vector<Vertex>& out) {
        out.clear();
        p.cloud(v, cs, [&](Vertex x) { out.push_back(x); });
    }

    bool is_node_cloud_vertex(Vertex w) const {
        if (p.is_big(w)) return true;
        const CloudType t = p.type(w);
        return p.phi() ? t == CloudType::PhiCritical : t == CloudType::Critical;
    }

    /// Node id of the big/critical node anchored at the lowest vertex of
    /// the cloud containing w.  Valid once step-1 nodes exist (their
    /// anchors are ascending, so binary search suffices).
    NodeId node_of_cloud(Vertex w, std::size_t step1_count,
                         const std::vector<Vertex>& anchors) {
        Vertex lowest = w;
        p.cloud(w, cs, [&](Vertex x) { lowest = std::min(lowest, x); });
        auto it = std::lower_bound(anchors.begin(), anchors.begin() + step1_count, lowest);
        assert(it != anchors.begin() + step1_count && *it == lowest);
        return static_cast<NodeId>(it - anchors.begin()) + 1;
    }
};

/// Insert a BFS spanning tree of the cloud listed in `members` into
/// `forest`; arcs are taken from the partition's non-border subgraph.
void insert_intra_cloud_tree(Builder& b, DynamicSubgraph& forest,
                             const std::vector<Vertex>& members, Vertex root) {
    auto& seen = b.tree_seen;
    std::vector<Vertex> queue;
    queue.push_back(root);
    seen.set(root - 1);
    const DynamicSubgraph& gp = b.p.non_border_subgraph();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        gp.for_each_arc(v, [&](std::size_t k, Vertex w) {
            if (seen.get(w - 1)) return;
            seen.set(w - 1);
            forest.insert_edge(v, k);
            queue.push_back(w);
        });
    }
    for (Vertex v : members) {
        assert(seen.get(v - 1) && "cloud member unreachable inside its cloud");
        seen.clear(v - 1);
    }
}

/// Attach a member cloud to the helper cloud with a single border edge
/// (the first arc found into a helper-marked vertex).
void insert_attach_edge(Builder& b, DynamicSubgraph& forest,
                        const std::vector<Vertex>& members, std::size_t begin,
                        std::size_t end, const BitVec& helper_mark) {
    for (std::size_t i = begin; i < end; ++i) {
        const Vertex v = members[i];
        const std::size_t deg = b.g.degree(v);
        for (std::size_t k = 0; k < deg; ++k) {
            if (helper_mark.get(b.g.neighbor(v, k) - 1)) {
                forest.insert_edge(v, k);
                return;
            }
        }
    }
    assert(false && "member cloud has no border edge into its helper cloud");
}

DynamicSubgraph& forest_for(std::vector<DynamicSubgraph>& forests,
                            const StaticGraph& g, std::size_t index) {
    while (forests.size() <= index)
        forests.emplace_back(g, DynamicSubgraph::Init::Empty);
    return forests[index];
}

/// Assert vertex-disjointness of trees sharing a forest, then insert the
/// helper tree, all member trees and their attach edges.
void build_meta_tree(Builder& b, DynamicSubgraph& forest,
                     const std::vector<Vertex>& helper_cloud,
                     const BitVec& helper_mark,
                     const std::vector<Vertex>& members,
                     const std::vector<std::size_t>& begins) {
    for (Vertex v : helper_cloud)
        assert(forest.present_degree(v) == 0 && "colored forests must stay disjoint");
    for (Vertex v : members)
        assert(forest.present_degree(v) == 0 && "colored forests must stay disjoint");

    insert_intra_cloud_tree(b, forest, helper_cloud, helper_cloud.front());
    for (std::size_t ci = 0; ci < begins.size(); ++ci) {
        const std::size_t begin = begins[ci];
        const std::size_t end = ci + 1 < begins.size() ? begins[ci + 1] : members.size();
        std::vector<Vertex> member_cloud(members.begin() + begin, members.begin() + end);
        insert_intra_cloud_tree(b, forest, member_cloud, member_cloud.front());
        insert_attach_edge(b, forest, members, begin, end, helper_mark);
    }
}

} // namespace

StructureMinor StructureMinor::build(const StaticGraph& g, const CloudPartition& p) {
    const std::size_t n = g.vertex_count();
    const bool phi_mode = p.phi() != 0;
    const std::size_t density = phi_mode ? p.phi() - 1 : 3;

    StructureMinor f;
    f.g_ = &g;
    f.p_ = &p;

    Builder b(g, p);

    // ── Step 1: one node per big and per critical (phi-critical) cloud ──
    {
        BitVec done(n);
        std::vector<Vertex> members;
        for (Vertex v = 1; v <= n; ++v) {
            if (done.get(v - 1) || !b.is_node_cloud_vertex(v)) continue;
            b.collect_cloud(v, members);
            for (Vertex x : members) done.set(x - 1);
            // v is the lowest label of its cloud: the scan is ascending and
            // no member was seen before.
            b.add_node(p.is_big(v) ? NodeKind::Big : NodeKind::Critical,
                       members.size(), v, 1, kNoForest);
        }
    }
    const std::size_t step1 = b.nodes.size();
    std::vector<Vertex> step1_anchors(step1);
    for (std::size_t i = 0; i < step1; ++i) step1_anchors[i] = b.nodes[i].anchor;

    // ── Step 2: edges between big and critical nodes ──
    {
        std::vector<Vertex> members, other;
        std::vector<Vertex> touched;
        for (NodeId u = 1; u <= step1; ++u) {
            b.collect_cloud(b.nodes[u - 1].anchor, members);
            touched.clear();
            for (Vertex x : members) {
                const std::size_t deg = g.degree(x);
                for (std::size_t k = 0; k < deg; ++k) {
                    const Vertex w = g.neighbor(x, k);
                    if (!p.border(x, k) || !b.is_node_cloud_vertex(w)) continue;
                    if (b.discovered.get(w - 1)) continue;
                    b.collect_cloud(w, other);
                    for (Vertex y : other) {
                        b.discovered.set(y - 1);
                        touched.push_back(y);
                    }
                    const NodeId v = b.node_of_cloud(w, step1, step1_anchors);
                    b.adj[u - 1].push_back(v);
                }
            }
            for (Vertex y : touched) b.discovered.clear(y - 1);
        }
    }

    // ── Step 3: meta-leaf nodes, trees in forest 0 ──
    {
        std::vector<Vertex> helper_cloud, member_cloud;
        std::vector<Vertex> members;
        std::vector<std::size_t> begins;
        for (NodeId u = 1; u <= step1; ++u) {
            if (b.nodes[u - 1].kind != NodeKind::Big) continue;
            b.collect_cloud(b.nodes[u - 1].anchor, helper_cloud);
            for (Vertex x : helper_cloud) b.mark_a.set(x - 1);

            members.clear();
            begins.clear();
            Vertex lowest = 0;
            for (Vertex x : helper_cloud) {
                const std::size_t deg = g.degree(x);
                for (std::size_t k = 0; k < deg; ++k) {
                    const Vertex w = g.neighbor(x, k);
                    if (!p.border(x, k) || p.type(w) != CloudType::Leaf) continue;
                    if (b.discovered.get(w - 1)) continue;
                    b.collect_cloud(w, member_cloud);
                    begins.push_back(members.size());
                    for (Vertex y : member_cloud) {
                        b.discovered.set(y - 1);
                        members.push_back(y);
                        if (lowest == 0 || y < lowest) lowest = y;
                    }
                }
            }
            if (!members.empty()) {
                const NodeId id = b.add_node(NodeKind::MetaLeaf, members.size(), lowest,
                                             static_cast<std::uint32_t>(begins.size()), 0);
                b.add_edge(u, id);
                build_meta_tree(b, forest_for(f.forests_, g, 0), helper_cloud,
                                b.mark_a, members, begins);
            }
            for (Vertex y : members) b.discovered.clear(y - 1);
            for (Vertex x : helper_cloud) b.mark_a.clear(x - 1);
        }
    }

    // ── Step 4: meta-bridge nodes ──
    // Pass A discovers the pairs of big clouds connected by bridge clouds;
    // the contact graph of those pairs is oriented with bounded in-degree,
    // the head of each directed edge hosts the pair's spanning tree, and
    // pass B re-walks the identical order to build the trees.
    std::vector<NodeId> pair_u, pair_v;
    auto sweep_pairs = [&](auto&& on_pair) {
        BitVec handled(n);
        std::vector<Vertex> cloud_a, cloud_b, bridge0, other;
        std::vector<Vertex> members;
        std::vector<std::size_t> begins;
        for (NodeId u = 1; u <= step1; ++u) {
            if (b.nodes[u - 1].kind != NodeKind::Big) continue;
            b.collect_cloud(b.nodes[u - 1].anchor, cloud_a);
            for (Vertex x : cloud_a) b.mark_a.set(x - 1);

            for (Vertex x : cloud_a) {
                const std::size_t degx = g.degree(x);
                for (std::size_t k = 0; k < degx; ++k) {
                    const Vertex w0 = g.neighbor(x, k);
                    if (!p.border(x, k) || p.type(w0) != CloudType::Bridge) continue;
                    if (handled.get(w0 - 1)) continue;

                    members.clear();
                    begins.clear();
                    Vertex lowest = 0;
                    std::uint64_t weight = 0;
                    auto take_bridge_cloud = [&](const std::vector<Vertex>& bc) {
                        begins.push_back(members.size());
                        for (Vertex y : bc) {
                            handled.set(y - 1);
                            members.push_back(y);
                            if (lowest == 0 || y < lowest) lowest = y;
                        }
                        weight += bc.size();
                    };

                    b.collect_cloud(w0, bridge0);
                    take_bridge_cloud(bridge0);

                    // The second big cloud of the pair.
                    Vertex across = 0;
                    for (Vertex y : bridge0) {
                        const std::size_t degy = g.degree(y);
                        for (std::size_t j = 0; j < degy && across == 0; ++j) {
                            const Vertex z = g.neighbor(y, j);
                            if (p.is_big(z) && !b.mark_a.get(z - 1)) across = z;
                        }
                        if (across) break;
                    }
                    assert(across && "bridge cloud with a single adjacent big cloud");
                    b.collect_cloud(across, cloud_b);
                    for (Vertex y : cloud_b) b.mark_b.set(y - 1);
                    const NodeId u2 = b.node_of_cloud(across, step1, step1_anchors);

                    // Remaining bridge clouds adjacent to both sides.
                    std::vector<Vertex> probe_touched;
                    for (Vertex y : cloud_b) {
                        const std::size_t degy = g.degree(y);
                        for (std::size_t j = 0; j < degy; ++j) {
                            const Vertex z = g.neighbor(y, j);
                            if (!p.border(y, j) || p.type(z) != CloudType::Bridge) continue;
                            if (handled.get(z - 1) || b.discovered.get(z - 1)) continue;
                            b.collect_cloud(z, other);
                            bool touches_a = false;
                            for (Vertex t : other) {
                                b.discovered.set(t - 1);
                                probe_touched.push_back(t);
                                if (touches_a) continue;
                                const std::size_t degt = g.degree(t);
                                for (std::size_t kk = 0; kk < degt; ++kk)
                                    if (b.mark_a.get(g.neighbor(t, kk) - 1)) {
                                        touches_a = true;
                                        break;
                                    }
                            }
                            if (touches_a) take_bridge_cloud(other);
                        }
                    }
                    on_pair(u, u2, cloud_a, cloud_b, members, begins, weight, lowest);
                    for (Vertex t : probe_touched) b.discovered.clear(t - 1);
                    for (Vertex y : cloud_b) b.mark_b.clear(y - 1);
                }
            }
            for (Vertex x : cloud_a) b.mark_a.clear(x - 1);
        }
    };

    // Pass A: create the nodes, remember the pairs.
    sweep_pairs([&](NodeId u, NodeId u2, const std::vector<Vertex>&,
                    const std::vector<Vertex>&, const std::vector<Vertex>& members,
                    const std::vector<std::size_t>& begins, std::uint64_t weight,
                    Vertex lowest) {
        const NodeId id = b.add_node(NodeKind::MetaBridge, weight, lowest,
                                     static_cast<std::uint32_t>(begins.size()),
                                     kNoForest);
        b.add_edge(u, id);
        b.add_edge(u2, id);
        pair_u.push_back(u);
        pair_v.push_back(u2);
    });

    // Orient the big-node contact graph and assign helpers and colors.
    std::vector<std::uint32_t> tree_load(step1 + 1, 0);
    std::vector<NodeId> pair_helper(pair_u.size());
    std::vector<std::uint8_t> pair_color(pair_u.size());
    if (!pair_u.empty()) {
        std::vector<NodeId> big_ids;
        std::vector<std::uint32_t> big_index(step1 + 1, 0);
        for (NodeId u = 1; u <= step1; ++u)
            if (b.nodes[u - 1].kind == NodeKind::Big) {
                big_ids.push_back(u);
                big_index[u] = static_cast<std::uint32_t>(big_ids.size());
            }
        std::vector<std::pair<Vertex, Vertex>> contact_edges;
        contact_edges.reserve(pair_u.size());
        for (std::size_t i = 0; i < pair_u.size(); ++i)
            contact_edges.emplace_back(big_index[pair_u[i]], big_index[pair_v[i]]);
        StaticGraph contact = StaticGraph::from_edges(big_ids.size(), contact_edges);
        Orientation orient = orient_bounded(contact, density);
        for (std::size_t i = 0; i < pair_u.size(); ++i) {
            const Vertex a = big_index[pair_u[i]], v = big_index[pair_v[i]];
            const std::size_t k = contact.find_arc(a, v);
            // The retained arc points at the head; the head hosts the tree.
            const bool toward_v = orient.arcs().contains_arc(a, k);
            pair_helper[i] = toward_v ? pair_v[i] : pair_u[i];
            pair_color[i] = static_cast<std::uint8_t>(tree_load[pair_helper[i]]++);
        }
    }

    // Pass B: identical traversal, now building the trees.
    {
        std::size_t pi = 0;
        sweep_pairs([&](NodeId u, NodeId, const std::vector<Vertex>& cloud_a,
                        const std::vector<Vertex>& cloud_b,
                        const std::vector<Vertex>& members,
                        const std::vector<std::size_t>& begins, std::uint64_t, Vertex) {
            const NodeId helper = pair_helper[pi];
            const std::uint8_t color = pair_color[pi];
            ++pi;
            DynamicSubgraph& forest = forest_for(f.forests_, g, 1 + color);
            const bool helper_is_a = helper == u;
            build_meta_tree(b, forest, helper_is_a ? cloud_a : cloud_b,
                            helper_is_a ? b.mark_a : b.mark_b, members, begins);
        });
    }

    // Stamp forest colors onto the meta-bridge nodes (pass A order).
    {
        std::size_t pi = 0;
        for (std::size_t i = step1; i < b.nodes.size(); ++i)
            if (b.nodes[i].kind == NodeKind::MetaBridge)
                b.nodes[i].color = static_cast<std::uint8_t>(1 + pair_color[pi++]);
    }

    // ── Step 5: phi-meta-bridge nodes, grouped by identical big-cloud
    // neighborhood, added degree by degree ──
    if (phi_mode) {
        struct Group {
            std::uint64_t weight = 0;
            Vertex lowest = 0;
            std::vector<Vertex> reps; // one member cloud representative each
        };
        std::map<std::vector<NodeId>, Group> groups;
        BitVec done(n);
        std::vector<Vertex> member_cloud, big_cloud;
        for (Vertex v = 1; v <= n; ++v) {
            if (done.get(v - 1) || p.type(v) != CloudType::PhiBridge) continue;
            b.collect_cloud(v, member_cloud);
            for (Vertex x : member_cloud) done.set(x - 1);

            std::vector<NodeId> tuple;
            std::vector<Vertex> probe_touched;
            for (Vertex x : member_cloud) {
                const std::size_t deg = g.degree(x);
                for (std::size_t k = 0; k < deg; ++k) {
                    const Vertex w = g.neighbor(x, k);
                    if (!p.is_big(w) || b.discovered.get(w - 1)) continue;
                    b.collect_cloud(w, big_cloud);
                    for (Vertex y : big_cloud) {
                        b.discovered.set(y - 1);
                        probe_touched.push_back(y);
                    }
                    tuple.push_back(b.node_of_cloud(w, step1, step1_anchors));
                }
            }
            for (Vertex y : probe_touched) b.discovered.clear(y - 1);
            std::sort(tuple.begin(), tuple.end());
            assert(tuple.size() >= 3 && tuple.size() < p.phi());

            Group& grp = groups[tuple];
            grp.weight += member_cloud.size();
            Vertex lo = member_cloud.front();
            for (Vertex x : member_cloud) lo = std::min(lo, x);
            if (grp.lowest == 0 || lo < grp.lowest) grp.lowest = lo;
            grp.reps.push_back(lo);
        }

        std::vector<Vertex> helper_cloud;
        std::vector<Vertex> members;
        std::vector<std::size_t> begins;
        for (std::size_t deg_i = 3; deg_i < p.phi(); ++deg_i) {
            for (auto& [tuple, grp] : groups) {
                if (tuple.size() != deg_i) continue;
                // Helper: the least-loaded adjacent big node (tie: lowest id).
                NodeId helper = tuple.front();
                for (NodeId cand : tuple)
                    if (tree_load[cand] < tree_load[helper]) helper = cand;
                const std::uint8_t color = static_cast<std::uint8_t>(tree_load[helper]++);

                const NodeId id = b.add_node(NodeKind::PhiMetaBridge, grp.weight,
                                             grp.lowest,
                                             static_cast<std::uint32_t>(grp.reps.size()),
                                             static_cast<std::uint8_t>(1 + color));
                for (NodeId u : tuple) b.add_edge(u, id);

                b.collect_cloud(b.nodes[helper - 1].anchor, helper_cloud);
                for (Vertex x : helper_cloud) b.mark_a.set(x - 1);
                members.clear();
                begins.clear();
                for (Vertex rep : grp.reps) {
                    begins.push_back(members.size());
                    p.cloud(rep, b.cs, [&](Vertex x) { members.push_back(x); });
                }
                build_meta_tree(b, forest_for(f.forests_, g, 1 + color), helper_cloud,
                                b.mark_a, members, begins);
                for (Vertex x : helper_cloud) b.mark_a.clear(x - 1);
            }
        }
    }

    // ── Finalize: node arrays, CSR adjacency, anchor dictionary ──
    const std::size_t count = b.nodes.size();
    f.kind_.resize(count);
    f.weight_.resize(count);
    f.anchor_.resize(count);
    f.clouds_.resize(count);
    f.color_.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        f.kind_[i] = b.nodes[i].kind;
        f.weight_[i] = b.nodes[i].weight;
        f.anchor_[i] = b.nodes[i].anchor;
        f.clouds_[i] = b.nodes[i].clouds;
        f.color_[i] = b.nodes[i].color;
    }
    f.off_.assign(count + 1, 0);
    for (std::size_t i = 0; i < count; ++i) f.off_[i + 1] = f.off_[i] + b.adj[i].size();
    f.nbrs_.resize(f.off_[count]);
    for (std::size_t i = 0; i < count; ++i)
        std::copy(b.adj[i].begin(), b.adj[i].end(), f.nbrs_.begin() + f.off_[i]);

    BitVec marks(n);
    for (std::size_t i = 0; i < count; ++i) {
        assert(!marks.get(f.anchor_[i] - 1) && "anchors must be unique");
        marks.set(f.anchor_[i] - 1);
    }
    f.anchor_marks_ = IndexableDictionary(std::move(marks));
    f.node_by_anchor_rank_ = PackedIntVec(count ? count : 1,
                                          bit_width_for(count ? count : 1));
    for (std::size_t i = 0; i < count; ++i)
        f.node_by_anchor_rank_.set(f.anchor_marks_.rank(f.anchor_[i]) - 1,
                                   static_cast<NodeId>(i + 1));
    return f;
}

std::size_t StructureMinor::footprint_bits() const {
    std::size_t bits = (kind_.capacity() * sizeof(NodeKind)
                        + weight_.capacity() * sizeof(std::uint64_t)
                        + anchor_.capacity() * sizeof(Vertex)
                        + clouds_.capacity() * sizeof(std::uint32_t)
                        + color_.capacity() * sizeof(std::uint8_t)
                        + off_.capacity() * sizeof(std::size_t)
                        + nbrs_.capacity() * sizeof(NodeId)) * 8;
    bits += anchor_marks_.footprint_bits() + node_by_anchor_rank_.footprint_bits();
    for (const auto& forest : forests_) bits += forest.footprint_bits();
    return bits;
}

} // namespace cloud
