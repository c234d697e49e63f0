#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"

#include "cloud/cloud_partition.hpp"
#include "cloud/generators.hpp"

using namespace cloud;

namespace {

/// Oracle: full vertex -> cloud-id map built by exhaustive BFS over the
/// non-border subgraph, entirely independent of cloud()/type().
std::vector<Vertex> cloud_map_oracle(const CloudPartition& p) {
    const StaticGraph& g = p.graph();
    std::vector<Vertex> id(g.vertex_count() + 1, 0);
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        if (id[v]) continue;
        std::vector<Vertex> stack{v};
        std::vector<Vertex> comp;
        id[v] = v;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            g.for_each_neighbor(x, [&](std::size_t k, Vertex w) {
                if (!p.border(x, k) && !id[w]) {
                    id[w] = v;
                    stack.push_back(w);
                }
            });
        }
    }
    return id;
}

std::vector<std::vector<Vertex>> clouds_of(const CloudPartition& p) {
    auto id = cloud_map_oracle(p);
    std::map<Vertex, std::vector<Vertex>> by_id;
    for (Vertex v = 1; v < id.size(); ++v) by_id[id[v]].push_back(v);
    std::vector<std::vector<Vertex>> out;
    for (auto& [k, c] : by_id) out.push_back(c);
    return out;
}

/// Distinct adjacent clouds of each cloud, by the oracle map.
std::map<Vertex, std::set<Vertex>> adjacency_oracle(const CloudPartition& p) {
    const StaticGraph& g = p.graph();
    auto id = cloud_map_oracle(p);
    std::map<Vertex, std::set<Vertex>> adj;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        g.for_each_neighbor(v, [&](std::size_t, Vertex w) {
            if (id[v] != id[w]) adj[id[v]].insert(id[w]);
        });
    return adj;
}

void check_partition_invariants(const CloudPartition& p) {
    const StaticGraph& g = p.graph();
    auto id = cloud_map_oracle(p);
    auto clouds = clouds_of(p);
    auto adj = adjacency_oracle(p);

    std::size_t big = 0;
    for (const auto& c : clouds) {
        REQUIRE(c.size() <= p.cloud_cap());
        const bool is_big = c.size() == p.cloud_cap();
        big += is_big;
        for (Vertex v : c) REQUIRE(p.is_big(v) == is_big);
    }
    CHECK(big == p.big_cloud_count());
    CHECK(big <= g.vertex_count() / p.cloud_cap());
    CHECK(clouds.size() == p.cloud_count());

    // Obs. 1: no two small clouds adjacent.
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        g.for_each_neighbor(v, [&](std::size_t k, Vertex w) {
            if (p.border(v, k)) {
                REQUIRE(id[v] != id[w]);
                CHECK((p.is_big(v) || p.is_big(w)));
            } else {
                REQUIRE(id[v] == id[w]);
            }
        });

    // Critical bound: <= max(0, 2k - 4).
    std::set<Vertex> critical_clouds;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        if (p.type(v) == CloudType::Critical) critical_clouds.insert(id[v]);
    const std::size_t bound = big >= 2 ? 2 * big - 4 : 0;
    CHECK(critical_clouds.size() <= std::max<std::size_t>(bound, 0));

    // Classification matches the adjacency oracle.
    for (const auto& c : clouds) {
        if (c.size() == p.cloud_cap()) continue;
        const std::size_t k = adj[id[c[0]]].size();
        const CloudType expect = k == 0   ? CloudType::Small
                               : k == 1   ? CloudType::Leaf
                               : k == 2   ? CloudType::Bridge
                                          : CloudType::Critical;
        for (Vertex v : c) REQUIRE(p.type(v) == expect);
    }
}

} // namespace

TEST_CASE("P_8 fixture: clouds along the path") {
    StaticGraph g = make_path(8);
    CloudPartition p = CloudPartition::build(g, 1.0);
    CHECK(p.cloud_cap() == 3);

    auto scratch = p.make_scratch();
    auto sorted_cloud = [&](Vertex v) {
        auto c = p.cloud_vertices(v, scratch);
        std::sort(c.begin(), c.end());
        return c;
    };
    CHECK(sorted_cloud(1) == std::vector<Vertex>{1, 2, 3});
    CHECK(sorted_cloud(5) == std::vector<Vertex>{4, 5, 6});
    CHECK(sorted_cloud(8) == std::vector<Vertex>{7, 8});

    CHECK(p.is_big(1));
    CHECK(p.is_big(6));
    CHECK(!p.is_big(7));
    CHECK(p.type(7) == CloudType::Leaf);
    CHECK(p.type(8) == CloudType::Leaf);
    CHECK(p.big_cloud_count() == 2);
    check_partition_invariants(p);
}

TEST_CASE("star(21) fixture: one big cloud and 16 leaf singletons") {
    StaticGraph g = make_star(21);
    CloudPartition p = CloudPartition::build(g, 1.0);
    CHECK(p.cloud_cap() == 5);
    CHECK(p.big_cloud_count() == 1);
    CHECK(p.cloud_count() == 17);

    auto scratch = p.make_scratch();
    auto big = p.cloud_vertices(1, scratch);
    std::sort(big.begin(), big.end());
    CHECK(big == std::vector<Vertex>{1, 2, 3, 4, 5});
    for (Vertex v = 6; v <= 21; ++v) {
        CHECK(p.type(v) == CloudType::Leaf);
        CHECK(p.cloud_vertices(v, scratch) == std::vector<Vertex>{v});
    }
    check_partition_invariants(p);
}

TEST_CASE("cap >= n yields a single small cloud") {
    StaticGraph g = make_path(4); // n=4, c=1 -> cap=2; force big cap instead
    CloudPartition p = CloudPartition::build_with_cap(g, 16);
    CHECK(p.cloud_count() == 1);
    CHECK(p.big_cloud_count() == 0);
    for (Vertex v = 1; v <= 4; ++v) CHECK(p.type(v) == CloudType::Small);
    check_partition_invariants(p);
}

TEST_CASE("bridge cloud between two big clouds") {
    // path of length 3s+1 with s=4: clouds {1..4},{5..8},{9..12},{13}
    StaticGraph g = make_path(13);
    CloudPartition p = CloudPartition::build(g, 1.0);
    CHECK(p.cloud_cap() == 4);
    CHECK(p.type(13) == CloudType::Leaf);
    check_partition_invariants(p);

    // Explicit bridge: two big clouds joined through one small cloud.
    // Take a path of 9 with cap 4: {1,2,3,4},{5,6,7,8},{9}: 9 is a leaf.
    // For a bridge, build a path of 2s+1 with the ends as the two bigs:
    // {1..4},{5..8} and vertex 9 adjacent to both 4 and 8.
    StaticGraph h = StaticGraph::from_edges(
        9, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {4, 9}, {8, 9}});
    CloudPartition q = CloudPartition::build_with_cap(h, 4);
    if (q.type(9) == CloudType::Bridge) {
        CHECK(q.big_cloud_count() == 2);
    }
    check_partition_invariants(q);
}

namespace {

/// Spider: `arms` paths of length 4 labeled first (so each fills one big
/// cloud at cap 4), then a hub labeled last, adjacent to the end of every
/// arm.  The hub becomes a singleton small cloud adjacent to `arms` big
/// clouds.
StaticGraph make_spider(int arms) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    const Vertex hub = static_cast<Vertex>(4 * arms + 1);
    for (int a = 0; a < arms; ++a) {
        const Vertex base = static_cast<Vertex>(4 * a + 1);
        for (Vertex i = 0; i < 3; ++i) edges.emplace_back(base + i, base + i + 1);
        edges.emplace_back(base + 3, hub);
    }
    return StaticGraph::from_edges(hub, edges);
}

} // namespace

TEST_CASE("spider with three arms makes the hub cloud critical") {
    StaticGraph g = make_spider(3);
    CloudPartition p = CloudPartition::build_with_cap(g, 4);
    CHECK(p.big_cloud_count() == 3);
    CHECK(p.type(13) == CloudType::Critical);
    check_partition_invariants(p);
}

TEST_CASE("phi classification on spiders at phi=4") {
    // 4 arms: the hub is adjacent to 4 big clouds -> phi-critical.
    StaticGraph g4 = make_spider(4);
    CloudPartition p4 = CloudPartition::build_with_cap(g4, 4);
    CHECK(p4.type(17) == CloudType::Critical);
    p4.classify_phi(3); // phi = d+1 = 4
    CHECK(p4.type(17) == CloudType::PhiCritical);

    // 3 arms: adjacent to exactly 3 bigs -> phi-bridge at phi=4.
    StaticGraph g3 = make_spider(3);
    CloudPartition p3 = CloudPartition::build_with_cap(g3, 4);
    p3.classify_phi(3);
    CHECK(p3.type(13) == CloudType::PhiBridge);
}

TEST_CASE("phi=3 reproduces the planar classification") {
    StaticGraph g = make_random_planar(10, 10, 0.5, 3);
    CloudPartition planar = CloudPartition::build(g, 1.0);
    CloudPartition phi = CloudPartition::build(g, 1.0);
    phi.classify_phi(2); // phi = 3
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        const CloudType a = planar.type(v);
        CloudType b = phi.type(v);
        if (b == CloudType::PhiCritical) b = CloudType::Critical;
        CHECK(a == b);
        CHECK(phi.type(v) != CloudType::PhiBridge); // range 3..2 is empty
    }
}

TEST_CASE("partition is a deterministic function of (graph, c)") {
    StaticGraph g = make_random_planar(12, 9, 0.6, 11);
    CloudPartition a = CloudPartition::build(g, 1.0);
    CloudPartition b = CloudPartition::build(g, 1.0);
    auto sa = a.make_scratch();
    auto sb = b.make_scratch();
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        CHECK(a.type(v) == b.type(v));
        CHECK(a.is_start(v) == b.is_start(v));
        CHECK(a.cloud_vertices(v, sa) == b.cloud_vertices(v, sb));
    }
}

TEST_CASE("type/cloud/border agree with the oracle over a corpus") {
    std::vector<StaticGraph> corpus;
    corpus.push_back(make_grid(16, 16));
    corpus.push_back(make_tri_grid(11, 7));
    corpus.push_back(make_star(64));
    corpus.push_back(make_path(50));
    corpus.push_back(make_random_planar(9, 14, 0.35, 5));
    for (const auto& g : corpus) {
        CloudPartition p = CloudPartition::build(g, 1.0);
        check_partition_invariants(p);

        auto id = cloud_map_oracle(p);
        auto scratch = p.make_scratch();
        for (Vertex v = 1; v <= g.vertex_count(); ++v) {
            g.for_each_neighbor(v, [&](std::size_t k, Vertex w) {
                CHECK(p.border(v, k) == (id[v] != id[w]));
            });
            auto c = p.cloud_vertices(v, scratch);
            for (Vertex x : c) CHECK(id[x] == id[v]);
            CHECK(p.cloud_start(v, scratch) != 0);
        }

        // big clouds have exactly cap vertices
        for (Vertex v = 1; v <= g.vertex_count(); ++v)
            if (p.is_big(v))
                CHECK(p.cloud_vertices(v, scratch).size() == p.cloud_cap());
    }
}
