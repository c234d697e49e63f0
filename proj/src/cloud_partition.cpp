#include "cloud/cloud_partition.hpp"

#include <stdexcept>

namespace cloud {

const char* cloud_type_name(CloudType t) {
    switch (t) {
        case CloudType::Big: return "big";
        case CloudType::Leaf: return "leaf";
        case CloudType::Bridge: return "bridge";
        case CloudType::Critical: return "critical";
        case CloudType::PhiBridge: return "phi-bridge";
        case CloudType::PhiCritical: return "phi-critical";
        case CloudType::Small: return "small";
    }
    return "?";
}

std::size_t cloud_cap_for(std::size_t n, double c) {
    if (n <= 1) return 1;
    const double s = std::ceil(c * std::log2(static_cast<double>(n)));
    return s < 1.0 ? 1 : static_cast<std::size_t>(s);
}

CloudPartition CloudPartition::build(const StaticGraph& g, double c) {
    if (c <= 0.0) throw std::invalid_argument("cloud-size constant c must be > 0");
    return build_with_cap(g, cloud_cap_for(g.vertex_count(), c));
}

CloudPartition CloudPartition::build_with_cap(const StaticGraph& g, std::size_t cap) {
    const std::size_t n = g.vertex_count();
    if (n < 1) throw std::invalid_argument("cloud partition needs n >= 1");

    CloudPartition p;
    p.g_ = &g;
    p.cap_ = cap;
    p.big_ = BitVec(n);
    p.small_ = BitVec(n);
    p.leaf_ = BitVec(n);
    p.bridge_ = BitVec(n);
    p.critical_ = BitVec(n);
    p.start_ = BitVec(n);
    p.phi_bridge_ = BitVec(n);
    p.phi_critical_ = BitVec(n);
    p.gprime_ = DynamicSubgraph(g, DynamicSubgraph::Init::Full);

    BitVec visited(n);
    BitVec in_current(n);
    std::vector<Vertex> bfs;
    bfs.reserve(cap);

    for (Vertex root = 1; root <= n; ++root) {
        if (visited.get(root - 1)) continue;

        bfs.clear();
        bfs.push_back(root);
        visited.set(root - 1);
        p.start_.set(root - 1);
        std::size_t count = 1;
        for (std::size_t head = 0; head < bfs.size() && count < cap; ++head) {
            const Vertex v = bfs[head];
            const std::size_t deg = g.degree(v);
            for (std::size_t k = 0; k < deg && count < cap; ++k) {
                const Vertex w = g.neighbor(v, k);
                if (!visited.get(w - 1)) {
                    visited.set(w - 1);
                    bfs.push_back(w);
                    ++count;
                }
            }
        }
        ++p.cloud_count_;

        if (count == cap) {
            // Big cloud: mark it and strip its border edges from G'.
            ++p.big_clouds_;
            for (Vertex u : bfs) {
                p.big_.set(u - 1);
                in_current.set(u - 1);
            }
            for (Vertex u : bfs)
                g.for_each_neighbor(u, [&](std::size_t k, Vertex w) {
                    if (!in_current.get(w - 1) && p.gprime_.contains_arc(u, k))
                        p.gprime_.delete_edge(u, k);
                });
            for (Vertex u : bfs) in_current.clear(u - 1);
        } else {
            for (Vertex u : bfs) p.small_.set(u - 1);
        }
    }

    p.classify_small(3, false);
    return p;
}

void CloudPartition::classify_phi(std::size_t density) {
    const std::size_t phi = density + 1;
    if (phi < 3)
        throw std::invalid_argument("phi-mode needs density >= 2 (phi = d+1 >= 3)");
    phi_ = phi;
    phi_bridge_ = BitVec(g_->vertex_count());
    phi_critical_ = BitVec(g_->vertex_count());
    classify_small(phi, true);
}

/// Count, for every small cloud, the number of distinct adjacent big clouds,
/// saturating at count_cap; then set the type bits.  Each big cloud explores
/// each adjacent small cloud once per pass, and saturated clouds are never
/// re-entered.
void CloudPartition::classify_small(std::size_t count_cap, bool phi_mode) {
    const StaticGraph& g = *g_;
    const std::size_t n = g.vertex_count();

    PackedIntVec count(n, bit_width_for(count_cap));
    BitVec discovered(n);
    Scratch scratch(n);
    std::vector<Vertex> big_members;
    std::vector<Vertex> touched;

    for (Vertex b = 1; b <= n; ++b) {
        if (!(big_.get(b - 1) && start_.get(b - 1))) continue;
        big_members.clear();
        cloud(b, scratch, [&](Vertex u) { big_members.push_back(u); });
        touched.clear();
        for (Vertex u : big_members) {
            g.for_each_neighbor(u, [&](std::size_t k, Vertex w) {
                (void)k;
                if (big_.get(w - 1) || discovered.get(w - 1)) return;
                if (count.get(w - 1) >= count_cap) return;
                const std::uint64_t next = count.get(w - 1) + 1;
                cloud(w, scratch, [&](Vertex x) {
                    discovered.set(x - 1);
                    count.set(x - 1, next);
                    touched.push_back(x);
                });
            });
        }
        for (Vertex x : touched) discovered.clear(x - 1);
    }

    for (Vertex v = 1; v <= n; ++v) {
        if (big_.get(v - 1)) continue;
        const std::uint64_t cnt = count.get(v - 1);
        if (phi_mode) {
            phi_bridge_.set(v - 1, cnt > 2 && cnt < count_cap);
            phi_critical_.set(v - 1, cnt >= count_cap);
            leaf_.set(v - 1, cnt == 1);
            bridge_.set(v - 1, cnt == 2);
        } else {
            leaf_.set(v - 1, cnt == 1);
            bridge_.set(v - 1, cnt == 2);
            critical_.set(v - 1, cnt >= 3);
        }
    }
}

} // namespace cloud
