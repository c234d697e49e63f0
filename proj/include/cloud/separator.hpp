#pragma once

#include <cstdint>
#include <vector>

#include "cloud/bitvec.hpp"
#include "cloud/structure_minor.hpp"
#include "cloud/weighted_graph.hpp"

namespace cloud {

enum class SeparatorBackend : std::uint8_t { Exact, Level, Cycle, Auto };

SeparatorBackend parse_backend(const std::string& name);
const char* backend_name(SeparatorBackend b);

enum class Side : std::uint8_t { A, S, B };

/// Partition {A, S, B} of a weighted graph's nodes: no edge joins A and B,
/// and w(A), w(B) <= alpha * W unless `degenerate` is set (graphs of at
/// most two nodes fall back to S = V).
struct SeparatorResult {
    std::vector<Side> side; // per node, 0-indexed by node-1
    std::uint64_t weight_a = 0, weight_s = 0, weight_b = 0;
    bool degenerate = false;

    std::size_t count(Side s) const {
        std::size_t c = 0;
        for (auto x : side) c += x == s;
        return c;
    }
};

/// Separator search on a connected weighted graph.  alpha must be >= 2/3
/// (the component-grouping rule is only guaranteed to balance above that).
/// Backends:
///  - Exact: minimum-cardinality S by subset enumeration, |V| <= 18.
///  - Level: BFS level / weighted-median recursion.
///  - Cycle: planar fundamental-cycle search (Lipton-Tarjan style) on an
///    embedding computed per call; requires a planar input.
///  - Auto: Exact for |V| <= 18, else Cycle when planar_hint, else Level.
SeparatorResult find_separator(const WeightedGraph& f, double alpha,
                               SeparatorBackend backend, bool planar_hint = true);

/// Separator of the structure-maintaining minor with the heavy-node rule:
/// nodes heavier than W/3 are split into up to three fragments by
/// distributing their clouds as equally as possible (contiguously in
/// expand-cloud order); an unsplittable heavy node falls back to the
/// neighborhood separator S = N(v), A = {v}.
struct MinorSeparatorResult {
    struct Fragment {
        std::uint32_t cloud_lo = 0, cloud_hi = 0; // [lo, hi) expand ordinals
        Side side = Side::S;
    };
    struct SplitRecord {
        NodeId node = 0;
        std::vector<Fragment> fragments;
    };

    SeparatorResult on_f;            // side per original node
    std::vector<SplitRecord> splits; // nodes whose clouds straddle sides
    bool neighborhood_fallback = false;

    std::uint64_t weight(Side s) const {
        switch (s) {
            case Side::A: return on_f.weight_a;
            case Side::S: return on_f.weight_s;
            case Side::B: return on_f.weight_b;
        }
        return 0;
    }
};

MinorSeparatorResult find_minor_separator(const StructureMinor& f, double alpha,
                                          SeparatorBackend backend,
                                          bool allow_split = true);

/// Separator of G obtained by expanding every F-node of S (and the
/// S-fragments of split nodes) to its vertices.
struct LiftedSeparator {
    BitVec in_a, in_s, in_b;
    std::size_t size_a = 0, size_s = 0, size_b = 0;

    Side side_of(Vertex v) const {
        if (in_s.get(v - 1)) return Side::S;
        return in_a.get(v - 1) ? Side::A : Side::B;
    }
};

LiftedSeparator lift_separator(const StructureMinor& f, const MinorSeparatorResult& r);

/// Exhaustive A'-B' edge scan; true when no edge joins the two sides.
bool lifted_separator_valid(const StaticGraph& g, const LiftedSeparator& s);

} // namespace cloud
