#pragma once

#include <cstdint>
#include <vector>

#include "cloud/cloud_partition.hpp"
#include "cloud/indexable_dict.hpp"
#include "cloud/orientation.hpp"

namespace cloud {

enum class NodeKind : std::uint8_t {
    Big,
    Critical,
    MetaLeaf,
    MetaBridge,
    PhiMetaBridge,
};

const char* node_kind_name(NodeKind k);

using NodeId = std::uint32_t; // 1..node_count, 0 = none

/// Structure-maintaining minor F induced by a cloud partition.
///
/// One node per big and per critical (phi-critical) cloud; one meta-leaf
/// node per big cloud with adjacent leaf clouds; one meta-bridge node per
/// pair of big clouds connected by bridge clouds; in phi mode one
/// phi-meta-bridge node per set of phi-bridge clouds sharing an identical
/// big-cloud neighborhood.  Every node's anchor is the lowest-labeled
/// vertex among the clouds it represents; expand() enumerates the
/// represented vertices, for meta nodes by walking a spanning tree that
/// borrows one adjacent ("helper") big cloud, stored in colored dynamic
/// subgraphs so that same-colored trees stay vertex-disjoint.
///
/// Node ids are dense, in creation order: big+critical ascending by anchor,
/// then meta-leaf, then meta-bridge, then phi-meta-bridge by degree.
class StructureMinor {
public:
    struct ExpandScratch {
        struct Frame {
            Vertex v;
            Vertex parent;
            std::uint32_t cloud_ordinal;
        };
        std::vector<Frame> stack;
    };

    static StructureMinor build(const StaticGraph& g, const CloudPartition& p);

    const CloudPartition& partition() const { return *p_; }
    const StaticGraph& graph() const { return *g_; }

    std::size_t node_count() const { return kind_.size(); }
    std::size_t edge_count() const { return nbrs_.size() / 2; }

    NodeKind kind(NodeId u) const { return kind_[u - 1]; }
    std::uint64_t weight(NodeId u) const { return weight_[u - 1]; }
    Vertex anchor_of(NodeId u) const { return anchor_[u - 1]; }
    std::size_t cloud_count_of(NodeId u) const { return clouds_[u - 1]; }

    std::size_t degree(NodeId u) const { return off_[u] - off_[u - 1]; }
    NodeId neighbor(NodeId u, std::size_t i) const { return nbrs_[off_[u - 1] + i]; }

    template <typename F>
    void for_each_neighbor(NodeId u, F&& fn) const {
        for (std::size_t a = off_[u - 1]; a < off_[u]; ++a) fn(nbrs_[a]);
    }

    /// Node anchored at v, or 0.
    NodeId node_of(Vertex v) const {
        if (!anchor_marks_.bits().get(v - 1)) return 0;
        return static_cast<NodeId>(
            node_by_anchor_rank_.get(anchor_marks_.rank(v - 1 + 1) - 1));
    }

    /// Visit every vertex of every cloud represented by u exactly once.
    template <typename F>
    void expand(NodeId u, CloudPartition::Scratch& cs, ExpandScratch& es, F&& fn) const {
        expand_clouds(u, cs, es, [&](std::uint32_t, Vertex v) { fn(v); });
    }

    /// Like expand, but also reports a dense per-node cloud ordinal
    /// (deterministic tree-walk order); used to split heavy nodes at cloud
    /// granularity.
    template <typename F>
    void expand_clouds(NodeId u, CloudPartition::Scratch& cs, ExpandScratch& es,
                       F&& fn) const;

    std::size_t forest_count() const { return forests_.size(); }
    const DynamicSubgraph& forest(std::size_t i) const { return forests_[i]; }
    std::uint8_t forest_of(NodeId u) const { return color_[u - 1]; }

    std::size_t footprint_bits() const;

private:
    static constexpr std::uint8_t kNoForest = 0xff;

    const StaticGraph* g_ = nullptr;
    const CloudPartition* p_ = nullptr;

    std::vector<NodeKind> kind_;
    std::vector<std::uint64_t> weight_;
    std::vector<Vertex> anchor_;
    std::vector<std::uint32_t> clouds_; // represented cloud count
    std::vector<std::uint8_t> color_;   // forest index, kNoForest for big/critical
    std::vector<std::size_t> off_;      // CSR adjacency over node ids
    std::vector<NodeId> nbrs_;

    IndexableDictionary anchor_marks_;  // marker bits over vertices
    PackedIntVec node_by_anchor_rank_;

    std::vector<DynamicSubgraph> forests_; // [0] leaf trees, then bridge colors
};

template <typename F>
void StructureMinor::expand_clouds(NodeId u, CloudPartition::Scratch& cs,
                                   ExpandScratch& es, F&& fn) const {
    const NodeKind k = kind(u);
    if (k == NodeKind::Big || k == NodeKind::Critical) {
        p_->cloud(anchor_of(u), cs, [&](Vertex v) { fn(0u, v); });
        return;
    }
    // Depth-first walk of the node's spanning tree; big vertices belong to
    // the helper cloud and are filtered out.  Crossing a border edge into a
    // small vertex enters the next represented cloud.
    const DynamicSubgraph& forest = forests_[color_[u - 1]];
    auto& stack = es.stack;
    stack.clear();
    std::uint32_t next_ordinal = 0;
    stack.push_back({anchor_of(u), 0, next_ordinal++});
    while (!stack.empty()) {
        const auto [v, parent, ordinal] = stack.back();
        stack.pop_back();
        if (!p_->is_big(v)) fn(ordinal, v);
        forest.for_each_arc(v, [&](std::size_t kk, Vertex w) {
            if (w == parent) return;
            std::uint32_t child_ordinal = ordinal;
            if (p_->border(v, kk) && !p_->is_big(w)) child_ordinal = next_ordinal++;
            stack.push_back({w, v, child_ordinal});
        });
    }
}

} // namespace cloud
