#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "cloud/generators.hpp"
#include "cloud/separator.hpp"

using namespace cloud;

namespace {

WeightedGraph weighted_from(const StaticGraph& g) {
    WeightedGraph f;
    f.off.assign(g.vertex_count() + 1, 0);
    f.weight.assign(g.vertex_count(), 1);
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        f.off[v] = f.off[v - 1] + g.degree(v);
    f.nbr.resize(f.off.back());
    std::size_t a = 0;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        g.for_each_neighbor(v, [&](std::size_t, Vertex w) { f.nbr[a++] = w; });
    return f;
}

bool sides_valid(const WeightedGraph& f, const SeparatorResult& r) {
    for (std::uint32_t u = 1; u <= f.node_count(); ++u) {
        if (r.side[u - 1] != Side::A) continue;
        bool ok = true;
        f.for_each_neighbor(u, [&](std::uint32_t w) {
            if (r.side[w - 1] == Side::B) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

/// Independent minimality oracle: bitmask enumeration with union-find,
/// sharing no code with the implementation's component search.
int oracle_min_separator(const StaticGraph& g, double alpha) {
    const int n = static_cast<int>(g.vertex_count());
    const double cap = alpha * n + 1e-9;
    int best = -1;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int k = __builtin_popcount(mask);
        if (best >= 0 && k >= best) continue;
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        for (Vertex v = 1; v <= g.vertex_count(); ++v) {
            if (mask & (1u << (v - 1))) continue;
            g.for_each_neighbor(v, [&](std::size_t, Vertex w) {
                if (mask & (1u << (w - 1))) return;
                parent[find(static_cast<int>(v) - 1)] = find(static_cast<int>(w) - 1);
            });
        }
        std::map<int, int> comp_size;
        for (int v = 0; v < n; ++v)
            if (!(mask & (1u << v))) ++comp_size[find(v)];
        if (comp_size.size() < 2) continue;
        bool ok = true;
        for (auto [root, size] : comp_size)
            if (static_cast<double>(size) > cap) ok = false;
        if (ok) best = k;
    }
    return best;
}

StaticGraph random_connected_planar(std::mt19937_64& rng, int n) {
    using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    while (true) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        std::set<std::pair<Vertex, Vertex>> seen;
        // random spanning tree
        for (Vertex v = 2; v <= static_cast<Vertex>(n); ++v) {
            Vertex u = static_cast<Vertex>(rng() % (v - 1) + 1);
            edges.emplace_back(u, v);
            seen.insert({u, v});
        }
        const int extra = static_cast<int>(rng() % (2 * n));
        for (int i = 0; i < extra; ++i) {
            Vertex u = static_cast<Vertex>(rng() % n + 1);
            Vertex v = static_cast<Vertex>(rng() % n + 1);
            if (u == v) continue;
            auto e = std::minmax(u, v);
            if (!seen.insert({e.first, e.second}).second) continue;
            edges.emplace_back(e.first, e.second);
        }
        BG bg(n);
        for (auto [u, v] : edges) boost::add_edge(u - 1, v - 1, bg);
        if (!boost::boyer_myrvold_planarity_test(bg)) continue;
        return StaticGraph::from_edges(n, edges);
    }
}

} // namespace

TEST_CASE("weighted path a-b-c: exact returns the middle") {
    WeightedGraph f;
    f.off = {0, 1, 3, 4};
    f.nbr = {2, 1, 3, 2};
    f.weight = {1, 1, 1};
    SeparatorResult r = find_separator(f, 2.0 / 3.0, SeparatorBackend::Exact);
    CHECK(r.side[0] == Side::A);
    CHECK(r.side[1] == Side::S);
    CHECK(r.side[2] == Side::B);
    CHECK(r.weight_s == 1);
    CHECK(!r.degenerate);
}

TEST_CASE("degenerate graphs return S = V") {
    WeightedGraph f;
    f.off = {0, 1, 2};
    f.nbr = {2, 1};
    f.weight = {4, 9};
    SeparatorResult r = find_separator(f, 2.0 / 3.0, SeparatorBackend::Auto);
    CHECK(r.degenerate);
    CHECK(r.weight_s == 13);
    CHECK(r.count(Side::S) == 2);
}

TEST_CASE("exact on the minor of an 8x8 grid") {
    StaticGraph g = make_grid(8, 8);
    CloudPartition p = CloudPartition::build(g, 1.0);
    StructureMinor f = StructureMinor::build(g, p);
    REQUIRE(f.node_count() <= 18);
    MinorSeparatorResult r = find_minor_separator(f, 2.0 / 3.0, SeparatorBackend::Exact);
    CHECK(!r.on_f.degenerate);
    CHECK(static_cast<double>(r.on_f.weight_a) <= 2.0 / 3.0 * 64 + 1e-9);
    CHECK(static_cast<double>(r.on_f.weight_b) <= 2.0 / 3.0 * 64 + 1e-9);
    // lifted separator is a valid separator of G
    LiftedSeparator s = lift_separator(f, r);
    CHECK(lifted_separator_valid(g, s));
    CHECK(s.size_a + s.size_s + s.size_b == 64);
}

TEST_CASE("star(21): the heavy meta-leaf splits into {6,5,5}") {
    StaticGraph g = make_star(21);
    CloudPartition p = CloudPartition::build(g, 1.0);
    StructureMinor f = StructureMinor::build(g, p);
    MinorSeparatorResult r = find_minor_separator(f, 2.0 / 3.0, SeparatorBackend::Exact);

    CHECK(!r.neighborhood_fallback);
    CHECK(r.on_f.side[0] == Side::S); // the big node is the separator
    REQUIRE(r.splits.size() == 1);
    const auto& rec = r.splits[0];
    CHECK(rec.node == 2);
    REQUIRE(rec.fragments.size() == 3);
    CHECK(rec.fragments[0].cloud_hi - rec.fragments[0].cloud_lo == 6);
    CHECK(rec.fragments[1].cloud_hi - rec.fragments[1].cloud_lo == 5);
    CHECK(rec.fragments[2].cloud_hi - rec.fragments[2].cloud_lo == 5);

    LiftedSeparator s = lift_separator(f, r);
    CHECK(lifted_separator_valid(g, s));
    CHECK(s.size_s == 5);
    CHECK(s.size_a + s.size_b == 16);
    CHECK(s.size_a <= 14);
    CHECK(s.size_b <= 14);
}

TEST_CASE("exact is minimum-cardinality against the bitmask oracle") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        const int n = 4 + static_cast<int>(rng() % 9); // 4..12
        StaticGraph g = random_connected_planar(rng, n);
        WeightedGraph f = weighted_from(g);
        const int want = oracle_min_separator(g, 2.0 / 3.0);
        SeparatorResult r = find_separator(f, 2.0 / 3.0, SeparatorBackend::Exact);
        if (want < 0) {
            CHECK(r.degenerate);
            continue;
        }
        CHECK(!r.degenerate);
        CHECK(r.count(Side::S) == static_cast<std::size_t>(want));
        CHECK(sides_valid(f, r));
        CHECK(static_cast<double>(r.weight_a) <= 2.0 / 3.0 * n + 1e-9);
        CHECK(static_cast<double>(r.weight_b) <= 2.0 / 3.0 * n + 1e-9);

        // level and cycle agree on validity (not on size)
        for (SeparatorBackend b : {SeparatorBackend::Level, SeparatorBackend::Cycle}) {
            SeparatorResult r2 = find_separator(f, 2.0 / 3.0, b);
            CHECK(sides_valid(f, r2));
            CHECK(static_cast<double>(r2.weight_a) <= 2.0 / 3.0 * n + 1e-9);
            CHECK(static_cast<double>(r2.weight_b) <= 2.0 / 3.0 * n + 1e-9);
        }
    }
}

TEST_CASE("level and cycle balance a larger weighted grid minor") {
    StaticGraph g = make_grid(24, 24);
    CloudPartition p = CloudPartition::build(g, 1.0);
    StructureMinor f = StructureMinor::build(g, p);
    WeightedGraph wg = WeightedGraph::from_minor(f);
    const double w = static_cast<double>(wg.total_weight());
    for (SeparatorBackend b : {SeparatorBackend::Level, SeparatorBackend::Cycle}) {
        SeparatorResult r = find_separator(wg, 2.0 / 3.0, b);
        CHECK(sides_valid(wg, r));
        CHECK(static_cast<double>(r.weight_a) <= 2.0 / 3.0 * w + 1e-9);
        CHECK(static_cast<double>(r.weight_b) <= 2.0 / 3.0 * w + 1e-9);
        CHECK(r.count(Side::S) > 0);
    }
}

TEST_CASE("P_8 lift has no A'-B' edge") {
    StaticGraph g = make_path(8);
    CloudPartition p = CloudPartition::build(g, 1.0);
    StructureMinor f = StructureMinor::build(g, p);
    MinorSeparatorResult r = find_minor_separator(f, 2.0 / 3.0, SeparatorBackend::Auto);
    LiftedSeparator s = lift_separator(f, r);
    CHECK(lifted_separator_valid(g, s));
    CHECK(s.size_a + s.size_s + s.size_b == 8);
}

TEST_CASE("degenerate lift covers everything with S'") {
    StaticGraph g = make_path(2);
    CloudPartition p = CloudPartition::build(g, 1.0);
    StructureMinor f = StructureMinor::build(g, p);
    MinorSeparatorResult r = find_minor_separator(f, 2.0 / 3.0, SeparatorBackend::Auto);
    LiftedSeparator s = lift_separator(f, r);
    CHECK(s.size_s == 2);
    CHECK(s.size_a == 0);
    CHECK(s.size_b == 0);
}

TEST_CASE("32x32 grid: lifted separator size and balance") {
    StaticGraph g = make_grid(32, 32);
    CloudPartition p = CloudPartition::build(g, 1.0);
    StructureMinor f = StructureMinor::build(g, p);
    MinorSeparatorResult r = find_minor_separator(f, 2.0 / 3.0, SeparatorBackend::Auto);
    LiftedSeparator s = lift_separator(f, r);
    CHECK(lifted_separator_valid(g, s));

    const double n = 1024;
    const double slack = static_cast<double>(p.cloud_cap());
    CHECK(static_cast<double>(s.size_a) <= 2.0 / 3.0 * n + slack);
    CHECK(static_cast<double>(s.size_b) <= 2.0 / 3.0 * n + slack);
    // |S'| <= beta * sqrt(n log2 n); beta stays small on grids
    const double bound = 4.0 * std::sqrt(n * std::log2(n));
    CHECK(static_cast<double>(s.size_s) <= bound);
}
