#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "cloud/bitvec.hpp"
#include "cloud/dynamic_subgraph.hpp"
#include "cloud/static_graph.hpp"

namespace cloud {

enum class CloudType : std::uint8_t {
    Big,
    Leaf,
    Bridge,
    Critical,
    PhiBridge,
    PhiCritical,
    Small, // small cloud with no classification bits (partition of one cloud)
};

const char* cloud_type_name(CloudType t);

/// Partition of V into connected clouds of at most ceil(c*log2(n)) vertices
/// plus the queryable cp-structure: per-type bitvectors, the start vertex of
/// every cloud's BFS, and the dynamic subgraph G' holding exactly the
/// non-border edges (so the connected components of G' are the clouds).
///
/// Vertices are 1-indexed; new BFS roots are the lowest-labeled unvisited
/// vertex and neighbors expand in adjacency-array order, so the partition is
/// a function of (graph, c) alone.
class CloudPartition {
public:
    /// Reusable working memory for cloud(), sized once per graph.
    class Scratch {
    public:
        explicit Scratch(std::size_t n) : mark_(n) {}

    private:
        friend class CloudPartition;
        BitVec mark_;
        std::vector<Vertex> queue_;
    };

    static CloudPartition build(const StaticGraph& g, double c = 1.0);
    /// Same construction with an explicit cloud-size cap (the micro-level
    /// recursion uses cap 1 so every vertex is its own big cloud).
    static CloudPartition build_with_cap(const StaticGraph& g, std::size_t cap);

    /// Relabel small clouds by number of adjacent big clouds >= phi = d+1:
    /// leaf (1), bridge (2), phi-bridge (3..phi-1), phi-critical (>= phi).
    void classify_phi(std::size_t density);

    const StaticGraph& graph() const { return *g_; }
    std::size_t cloud_cap() const { return cap_; }
    std::size_t cloud_count() const { return cloud_count_; }
    std::size_t big_cloud_count() const { return big_clouds_; }
    std::size_t phi() const { return phi_; }

    CloudType type(Vertex v) const {
        if (big_.get(v - 1)) return CloudType::Big;
        if (leaf_.get(v - 1)) return CloudType::Leaf;
        if (bridge_.get(v - 1)) return CloudType::Bridge;
        if (phi_ != 0) {
            if (phi_bridge_.get(v - 1)) return CloudType::PhiBridge;
            if (phi_critical_.get(v - 1)) return CloudType::PhiCritical;
        }
        if (critical_.get(v - 1)) return CloudType::Critical;
        return CloudType::Small;
    }

    bool is_big(Vertex v) const { return big_.get(v - 1); }
    bool is_small(Vertex v) const { return !big_.get(v - 1); }
    bool is_start(Vertex v) const { return start_.get(v - 1); }

    /// True iff the k-th arc of v crosses clouds (absent from G').
    bool border(Vertex v, std::size_t k) const {
        return !gprime_.contains_arc(v, k);
    }

    const DynamicSubgraph& non_border_subgraph() const { return gprime_; }

    Scratch make_scratch() const { return Scratch(g_->vertex_count()); }

    /// Visit every vertex of the cloud containing v (including v) in BFS
    /// order from v within G'; O(|C|) time using caller-provided scratch.
    template <typename F>
    void cloud(Vertex v, Scratch& scratch, F&& fn) const {
        auto& q = scratch.queue_;
        q.clear();
        q.push_back(v);
        scratch.mark_.set(v - 1);
        for (std::size_t head = 0; head < q.size(); ++head) {
            const Vertex u = q[head];
            fn(u);
            gprime_.for_each_arc(u, [&](std::size_t, Vertex w) {
                if (!scratch.mark_.get(w - 1)) {
                    scratch.mark_.set(w - 1);
                    q.push_back(w);
                }
            });
        }
        for (Vertex u : q) scratch.mark_.clear(u - 1);
    }

    std::vector<Vertex> cloud_vertices(Vertex v, Scratch& scratch) const {
        std::vector<Vertex> out;
        cloud(v, scratch, [&](Vertex u) { out.push_back(u); });
        return out;
    }

    /// Label of the cloud's start vertex; used as the cloud id in output.
    Vertex cloud_start(Vertex v, Scratch& scratch) const {
        Vertex s = 0;
        cloud(v, scratch, [&](Vertex u) {
            if (start_.get(u - 1)) s = u;
        });
        return s;
    }

    std::size_t footprint_bits() const {
        return big_.footprint_bits() + leaf_.footprint_bits()
             + bridge_.footprint_bits() + critical_.footprint_bits()
             + small_.footprint_bits() + start_.footprint_bits()
             + phi_bridge_.footprint_bits() + phi_critical_.footprint_bits()
             + gprime_.footprint_bits();
    }

private:
    void classify_small(std::size_t count_cap, bool phi_mode);

    const StaticGraph* g_ = nullptr;
    std::size_t cap_ = 0;
    std::size_t cloud_count_ = 0;
    std::size_t big_clouds_ = 0;
    std::size_t phi_ = 0;
    BitVec big_, small_, leaf_, bridge_, critical_, start_;
    BitVec phi_bridge_, phi_critical_;
    DynamicSubgraph gprime_;
};

/// Cloud-size cap ceil(c * log2(n)), at least 1.
std::size_t cloud_cap_for(std::size_t n, double c);

} // namespace cloud
