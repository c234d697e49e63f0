#pragma once

#include "cloud/separator.hpp"

namespace cloud::detail {

/// Fundamental-cycle search on an embedded planar graph (separator_cycle.cpp).
SeparatorResult cycle_separator(const WeightedGraph& f, double alpha);

/// BFS level / weighted-median recursion (separator.cpp); also the fallback
/// of the cycle backend for tree-like inputs.
SeparatorResult level_separator(const WeightedGraph& f, double alpha);

/// Group the connected components of the non-S nodes into A and B,
/// first-fit-decreasing by weight (ties by smallest member id), and fill
/// in the side weights.
void assemble_sides(const WeightedGraph& f, SeparatorResult& r);

} // namespace cloud::detail
