#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "cloud/encoding.hpp"
#include "cloud/generators.hpp"

using namespace cloud;

namespace {

SuccinctEncoding encode_graph(const StaticGraph& g, unsigned delta = kDefaultDelta,
                              std::size_t t = 0) {
    CloudPartition p = CloudPartition::build(g, 1.0);
    StructureMinor f = StructureMinor::build(g, p);
    if (t == 0) t = micro_cap_for(g.vertex_count());
    return encode(g, p, f, delta, t);
}

void check_queries(const StaticGraph& g, const SuccinctEncoding& e) {
    const std::size_t n = g.vertex_count();
    for (Vertex v = 1; v <= n; ++v) {
        REQUIRE(e.degree(v) == g.degree(v));
        std::set<Vertex> got;
        e.neighborhood(v, [&](Vertex w) { CHECK(got.insert(w).second); });
        std::set<Vertex> want;
        g.for_each_neighbor(v, [&](std::size_t, Vertex w) { want.insert(w); });
        REQUIRE(got == want);
    }
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = 1; v <= n; ++v)
            REQUIRE(e.adjacent(u, v) == g.adjacent(u, v));
}

} // namespace

TEST_CASE("K_1 encodes as a single micro graph with code 0") {
    StaticGraph g = make_path(1);
    SuccinctEncoding e = encode_graph(g);
    CHECK(e.mini_count() == 1);
    CHECK(e.micro_count() == 1);
    CHECK(e.degree(1) == 0);
    CHECK(!e.adjacent(1, 1));
}

TEST_CASE("queries equal the input graph, exhaustively on small graphs") {
    std::vector<StaticGraph> corpus;
    corpus.push_back(make_path(2));
    corpus.push_back(make_star(21));
    corpus.push_back(make_grid(6, 7));
    corpus.push_back(make_tri_grid(5, 5));
    corpus.push_back(make_random_planar(7, 7, 0.6, 21));
    for (const auto& g : corpus) {
        SuccinctEncoding e = encode_graph(g);
        check_queries(g, e);
    }
}

TEST_CASE("queries with a forced deep recursion (delta=2, small caps)") {
    StaticGraph g = make_grid(16, 16);
    SuccinctEncoding e = encode_graph(g, 2, 4);
    check_queries(g, e);

    StaticGraph star = make_star(64);
    SuccinctEncoding es = encode_graph(star, 2, 4);
    check_queries(star, es);
}

TEST_CASE("sampled queries on a larger grid") {
    StaticGraph g = make_grid(64, 64);
    SuccinctEncoding e = encode_graph(g);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20000; ++i) {
        const Vertex u = static_cast<Vertex>(rng() % 4096 + 1);
        const Vertex v = static_cast<Vertex>(rng() % 4096 + 1);
        REQUIRE(e.adjacent(u, v) == g.adjacent(u, v));
        REQUIRE(e.degree(u) == g.degree(u));
    }
}

TEST_CASE("save/load round-trips and answers identically") {
    StaticGraph g = make_tri_grid(9, 8);
    SuccinctEncoding e = encode_graph(g);
    std::stringstream buf;
    e.save(buf);
    SuccinctEncoding e2 = SuccinctEncoding::load(buf);
    check_queries(g, e2);

    std::stringstream buf2;
    e2.save(buf2);
    CHECK(buf.str() == buf2.str());
}

TEST_CASE("per-query lookup counts are bounded and size-independent") {
    StaticGraph small = make_grid(32, 32);
    StaticGraph large = make_grid(64, 64);
    SuccinctEncoding es = encode_graph(small);
    SuccinctEncoding el = encode_graph(large);

    auto max_lookups = [](const StaticGraph& g, const SuccinctEncoding& e) {
        std::size_t mx = 0;
        std::mt19937_64 rng(11);
        for (int i = 0; i < 4000; ++i) {
            const Vertex u = static_cast<Vertex>(rng() % g.vertex_count() + 1);
            const Vertex v = static_cast<Vertex>(rng() % g.vertex_count() + 1);
            QueryCounter qc;
            e.adjacent(u, v, &qc);
            mx = std::max(mx, qc.total());
            QueryCounter qd;
            e.degree(u, &qd);
            mx = std::max(mx, qd.total());
        }
        return mx;
    };
    const std::size_t a = max_lookups(small, es);
    const std::size_t b = max_lookups(large, el);
    CHECK(a == b);
    CHECK(a <= 200);
}

TEST_CASE("bits per vertex trend downward over the grid family") {
    // The micro table and dictionary overheads amortize as n doubles.
    std::vector<double> per_vertex;
    for (std::size_t side : {16, 24, 32, 48, 64}) {
        StaticGraph g = make_grid(side, side);
        SuccinctEncoding e = encode_graph(g);
        per_vertex.push_back(static_cast<double>(e.footprint_bits())
                             / static_cast<double>(g.vertex_count()));
    }
    for (std::size_t i = 1; i < per_vertex.size(); ++i)
        CHECK(per_vertex[i] <= per_vertex[i - 1] * 1.02);
}
