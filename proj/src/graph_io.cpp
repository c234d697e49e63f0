#include "cloud/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cloud {

namespace {

std::string next_data_line(std::istream& in, bool skip_comments) {
    std::string line;
    while (std::getline(in, line)) {
        if (skip_comments && !line.empty() && line[0] == '%') continue;
        return line;
    }
    throw std::invalid_argument("graph file: unexpected end of input");
}

} // namespace

StaticGraph load_graph(std::istream& in, GraphFormat format) {
    const bool metis = format == GraphFormat::Metis;
    std::istringstream header(next_data_line(in, metis));
    std::size_t n = 0, m = 0;
    if (!(header >> n >> m))
        throw std::invalid_argument("graph file: bad header, expected `n m`");
    if (metis) {
        // An optional METIS fmt field is accepted but only 0 (plain) is
        // supported.
        std::string fmt;
        if (header >> fmt && fmt != "0" && fmt != "00" && fmt != "000")
            throw std::invalid_argument("metis input: weighted formats unsupported");
    }

    // Collect directed arcs as (min, max, listed-at-min) triples so that
    // one-sided or repeated listings are caught before reconstruction.
    std::vector<std::uint64_t> arcs;
    arcs.reserve(2 * m);
    for (std::size_t u = 1; u <= n; ++u) {
        std::istringstream row(next_data_line(in, metis));
        std::uint64_t v;
        while (row >> v) {
            if (v < 1 || v > n)
                throw std::invalid_argument(
                    "graph file: neighbor label out of range on line " + std::to_string(u));
            if (v == u)
                throw std::invalid_argument("graph file: self-loop at vertex "
                                            + std::to_string(u));
            const std::uint64_t a = std::min<std::uint64_t>(u, v);
            const std::uint64_t b = std::max<std::uint64_t>(u, v);
            arcs.push_back(((a * (n + 1) + b) << 1) | (u == a ? 0 : 1));
        }
    }
    std::sort(arcs.begin(), arcs.end());
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < arcs.size(); i += 2) {
        const std::uint64_t key = arcs[i] >> 1;
        const Vertex a = static_cast<Vertex>(key / (n + 1));
        const Vertex b = static_cast<Vertex>(key % (n + 1));
        if (i + 1 >= arcs.size() || (arcs[i + 1] >> 1) != key)
            throw std::invalid_argument("graph file: edge {" + std::to_string(a) + ","
                                        + std::to_string(b) + "} is listed on one side only");
        if ((arcs[i] & 1) == (arcs[i + 1] & 1)
            || (i + 2 < arcs.size() && (arcs[i + 2] >> 1) == key))
            throw std::invalid_argument("graph file: multi-edge between "
                                        + std::to_string(a) + " and " + std::to_string(b));
        edges.emplace_back(a, b);
    }

    StaticGraph g = StaticGraph::from_edges(n, edges);
    if (g.edge_count() != m)
        throw std::invalid_argument("graph file: header claims " + std::to_string(m)
                                    + " edges, found " + std::to_string(g.edge_count()));
    if (std::size_t comps = g.component_count(); comps > 1)
        throw std::invalid_argument("graph is disconnected ("
                                    + std::to_string(comps) + " components)");
    return g;
}

StaticGraph load_graph_file(const std::string& path, GraphFormat format) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return load_graph(in, format);
}

void save_graph(std::ostream& out, const StaticGraph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        for (std::size_t k = 0; k < g.degree(v); ++k) {
            if (k) out << ' ';
            out << g.neighbor(v, k);
        }
        out << '\n';
    }
}

void save_graph_file(const std::string& path, const StaticGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    save_graph(out, g);
}

} // namespace cloud
