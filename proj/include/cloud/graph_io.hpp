#pragma once

#include <iosfwd>
#include <string>

#include "cloud/static_graph.hpp"

namespace cloud {

enum class GraphFormat { Canonical, Metis };

/// Parse a graph and materialize crosspointers.  Throws std::invalid_argument
/// for malformed input, self-loops/multi-edges, and disconnected graphs
/// (the message carries the component count).
StaticGraph load_graph(std::istream& in, GraphFormat format = GraphFormat::Canonical);
StaticGraph load_graph_file(const std::string& path,
                            GraphFormat format = GraphFormat::Canonical);

/// Canonical text format: line 1 is `n m`, then n lines; line u holds the
/// sorted neighbor labels of vertex u.
void save_graph(std::ostream& out, const StaticGraph& g);
void save_graph_file(const std::string& path, const StaticGraph& g);

} // namespace cloud
