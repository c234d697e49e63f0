#pragma once

#include <cstdint>
#include <vector>

#include "cloud/orientation.hpp"
#include "cloud/separator.hpp"
#include "cloud/structure_minor.hpp"

namespace cloud {

/// One piece of the recursive separator decomposition.  `vertices` holds
/// sorted global labels; `edges` holds exactly the edges this piece OWNS
/// (as local index pairs): edges whose endpoints both lie in an ancestor
/// separator belong to the first (A-side) piece only, so every graph edge
/// appears in exactly one piece.
struct MiniGraph {
    std::vector<Vertex> vertices;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // 0-based local
    std::vector<char> duplicate; // vertex also occurs in another piece
    std::size_t depth = 0;       // recursion depth at emission
};

struct MiniDecomposition {
    std::vector<MiniGraph> minis;
    std::size_t total_occurrences = 0;
    std::size_t duplicates = 0; // total_occurrences - n
    std::size_t forced_emissions = 0; // leaves emitted without a usable split
    std::vector<std::size_t> dups_by_depth;
};

/// Output all mini graphs: recursive separator search on F, stopping when
/// an instance's total weight drops below (log2 n)^delta; a node heavier
/// than a third of its instance is handled by greedy cloud packing against
/// its neighborhood separator.
MiniDecomposition mini_graphs(const StaticGraph& g, const CloudPartition& p,
                              const StructureMinor& f, unsigned delta,
                              double alpha = 2.0 / 3.0,
                              SeparatorBackend backend = SeparatorBackend::Auto);

/// The identical recursion one level down, on one mini graph's owned-edge
/// graph, stopping at `t` vertices (hard cap: the micro lookup table is
/// indexed by graphs of at most t vertices).  The fresh cloud
/// decomposition uses cloud cap 1, so nodes are single vertices and the
/// vertex cap is exact.
MiniDecomposition micro_graphs(const MiniGraph& mini, std::size_t t,
                               double alpha = 2.0 / 3.0,
                               SeparatorBackend backend = SeparatorBackend::Auto,
                               std::size_t density = 3, bool planar = true);

/// StaticGraph over a mini graph's local labels (1..|V|) and owned edges.
StaticGraph mini_local_graph(const MiniGraph& mini);

/// Default micro cap: max(4, floor(log2(n)/4)) clamped to 8.
std::size_t micro_cap_for(std::size_t n);

/// Default mini-stop exponent.
constexpr unsigned kDefaultDelta = 6;

} // namespace cloud
