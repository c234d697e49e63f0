#include "cloud/separator.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "separator_internal.hpp"

namespace cloud {

SeparatorBackend parse_backend(const std::string& name) {
    if (name == "exact") return SeparatorBackend::Exact;
    if (name == "level") return SeparatorBackend::Level;
    if (name == "cycle") return SeparatorBackend::Cycle;
    if (name == "auto") return SeparatorBackend::Auto;
    throw std::invalid_argument("unknown separator backend: " + name);
}

const char* backend_name(SeparatorBackend b) {
    switch (b) {
        case SeparatorBackend::Exact: return "exact";
        case SeparatorBackend::Level: return "level";
        case SeparatorBackend::Cycle: return "cycle";
        case SeparatorBackend::Auto: return "auto";
    }
    return "?";
}

namespace detail {

namespace {

constexpr double kEps = 1e-9;

std::vector<std::vector<std::uint32_t>>
components_excluding_s(const WeightedGraph& f, const std::vector<Side>& side) {
    const std::size_t n = f.node_count();
    std::vector<bool> seen(n + 1, false);
    std::vector<std::vector<std::uint32_t>> comps;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 1; s <= n; ++s) {
        if (seen[s] || side[s - 1] == Side::S) continue;
        comps.emplace_back();
        auto& comp = comps.back();
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            f.for_each_neighbor(v, [&](std::uint32_t w) {
                if (!seen[w] && side[w - 1] != Side::S) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            });
        }
    }
    return comps;
}

std::uint64_t comp_weight(const WeightedGraph& f, const std::vector<std::uint32_t>& comp) {
    std::uint64_t w = 0;
    for (auto v : comp) w += f.weight[v - 1];
    return w;
}

} // namespace

void assemble_sides(const WeightedGraph& f, SeparatorResult& r) {
    auto comps = components_excluding_s(f, r.side);
    std::vector<std::size_t> order(comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint64_t> w(comps.size());
    std::vector<std::uint32_t> lowest(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        w[i] = comp_weight(f, comps[i]);
        lowest[i] = *std::min_element(comps[i].begin(), comps[i].end());
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (w[a] != w[b]) return w[a] > w[b];
        return lowest[a] < lowest[b];
    });

    r.weight_a = r.weight_b = 0;
    for (std::size_t i : order) {
        const Side target = r.weight_a <= r.weight_b ? Side::A : Side::B;
        for (auto v : comps[i]) r.side[v - 1] = target;
        (target == Side::A ? r.weight_a : r.weight_b) += w[i];
    }
    r.weight_s = f.total_weight() - r.weight_a - r.weight_b;
}

SeparatorResult degenerate_result(const WeightedGraph& f) {
    SeparatorResult r;
    r.side.assign(f.node_count(), Side::S);
    r.weight_s = f.total_weight();
    r.degenerate = true;
    return r;
}

// ── Exact backend ────────────────────────────────────────────────

/// Enumerate candidate separators by increasing size (lexicographic within
/// a size); the first subset whose removal leaves >= 2 components, all of
/// weight <= alpha*W, wins.  Minimum cardinality by construction.
SeparatorResult exact_separator(const WeightedGraph& f, double alpha) {
    const std::size_t n = f.node_count();
    if (n > 18)
        throw std::invalid_argument("exact separator backend is limited to 18 nodes");
    const std::uint64_t total = f.total_weight();
    const double cap = alpha * static_cast<double>(total) + kEps;

    std::vector<std::uint32_t> combo;
    SeparatorResult r;
    r.side.assign(n, Side::A);

    // Recursive combination enumeration, sizes ascending.
    std::vector<std::uint32_t> chosen;
    auto try_subset = [&](const std::vector<std::uint32_t>& subset) -> bool {
        for (auto& s : r.side) s = Side::A;
        for (auto v : subset) r.side[v - 1] = Side::S;
        auto comps = components_excluding_s(f, r.side);
        if (comps.size() < 2) return false;
        for (const auto& comp : comps)
            if (static_cast<double>(comp_weight(f, comp)) > cap) return false;
        assemble_sides(f, r);
        return true;
    };

    for (std::size_t k = 0; k <= n; ++k) {
        chosen.assign(k, 0);
        // Odometer over k-combinations of 1..n in lexicographic order.
        std::function<bool(std::size_t, std::uint32_t)> rec =
            [&](std::size_t idx, std::uint32_t lo) -> bool {
            if (idx == k) return try_subset(chosen);
            for (std::uint32_t v = lo; v + (k - idx) <= n + 1; ++v) {
                chosen[idx] = v;
                if (rec(idx + 1, v + 1)) return true;
            }
            return false;
        };
        if (rec(0, 1)) return r;
    }
    return degenerate_result(f); // no two nonadjacent nodes (e.g. a clique)
}

// ── Level backend ────────────────────────────────────────────────

SeparatorResult level_separator(const WeightedGraph& f, double alpha) {
    const std::size_t n = f.node_count();
    const std::uint64_t total = f.total_weight();
    const double cap = alpha * static_cast<double>(total) + kEps;

    SeparatorResult r;
    r.side.assign(n, Side::A);

    std::vector<std::uint32_t> level(n + 1, 0);
    std::vector<bool> in_comp(n + 1, false);

    // Cut one connected component: by the first level whose removal keeps
    // both the prefix above and the suffix below within the cap, else by
    // the weighted-median level.  Forced cuts (used when the pool would
    // otherwise be a single piece, starving side B) skip the single-level
    // shortcut.  Returns the remaining connected pieces.
    auto cut_component = [&](const std::vector<std::uint32_t>& comp, bool forced,
                             std::uint64_t cw) {
        std::uint32_t root = comp[0];
        for (auto v : comp)
            if (f.weight[v - 1] > f.weight[root - 1]
                || (f.weight[v - 1] == f.weight[root - 1] && v < root))
                root = v;
        for (auto v : comp) in_comp[v] = true;
        std::vector<std::uint32_t> order;
        order.reserve(comp.size());
        order.push_back(root);
        in_comp[root] = false; // doubles as the "unvisited" flag
        level[root] = 0;
        std::size_t max_level = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const std::uint32_t v = order[head];
            f.for_each_neighbor(v, [&](std::uint32_t w) {
                if (!in_comp[w]) return;
                in_comp[w] = false;
                level[w] = level[v] + 1;
                max_level = std::max<std::size_t>(max_level, level[w]);
                order.push_back(w);
            });
        }
        assert(order.size() == comp.size() && "level backend expects connected components");

        std::vector<std::uint64_t> level_weight(max_level + 1, 0);
        std::vector<std::size_t> level_size(max_level + 1, 0);
        for (auto v : order) {
            level_weight[level[v]] += f.weight[v - 1];
            ++level_size[level[v]];
        }

        // Exact single-level rule: removing level l leaves the connected
        // prefix above (levels < l) and the components below.  The maximum
        // below-component weight for every l comes from one union-find
        // sweep that adds levels bottom-up.
        std::size_t cut = max_level + 1;
        if (!forced) {
            std::vector<std::uint64_t> max_below(max_level + 2, 0);
            std::vector<std::uint32_t> parent(n + 1);
            std::vector<std::uint64_t> cweight(n + 1, 0);
            std::function<std::uint32_t(std::uint32_t)> find =
                [&](std::uint32_t x) -> std::uint32_t {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            std::vector<std::vector<std::uint32_t>> by_level(max_level + 1);
            for (auto v : order) by_level[level[v]].push_back(v);
            std::vector<char> added(n + 1, 0);
            std::uint64_t running_max = 0;
            for (std::size_t l = max_level + 1; l-- > 0;) {
                max_below[l] = running_max;
                for (auto v : by_level[l]) {
                    parent[v] = v;
                    cweight[v] = f.weight[v - 1];
                    added[v] = 1;
                }
                for (auto v : by_level[l])
                    f.for_each_neighbor(v, [&](std::uint32_t w) {
                        if (!added[w]) return;
                        const std::uint32_t a = find(v), b = find(w);
                        if (a == b) return;
                        parent[a] = b;
                        cweight[b] += cweight[a];
                    });
                for (auto v : by_level[l])
                    running_max = std::max(running_max, cweight[find(v)]);
            }
            for (auto v : order) added[v] = 0;

            // Smallest level set wins among the valid cuts (ties: lowest).
            std::uint64_t above = 0;
            std::size_t best_size = ~std::size_t(0);
            for (std::size_t l = 0; l <= max_level; ++l) {
                if (static_cast<double>(above) <= cap
                    && static_cast<double>(max_below[l]) <= cap
                    && level_size[l] < best_size) {
                    best_size = level_size[l];
                    cut = l;
                }
                above += level_weight[l];
            }
        }
        if (cut > max_level) {
            std::uint64_t prefix = 0;
            for (std::size_t l = 0; l <= max_level; ++l) {
                prefix += level_weight[l];
                if (2 * prefix >= cw) {
                    cut = l;
                    break;
                }
            }
        }

        for (auto v : order)
            if (level[v] == cut) r.side[v - 1] = Side::S;

        std::vector<std::vector<std::uint32_t>> pieces;
        for (auto v : order) in_comp[v] = level[v] != cut;
        for (auto v : order) {
            if (!in_comp[v]) continue;
            std::vector<std::uint32_t> piece;
            std::vector<std::uint32_t> stack{v};
            in_comp[v] = false;
            while (!stack.empty()) {
                const std::uint32_t x = stack.back();
                stack.pop_back();
                piece.push_back(x);
                f.for_each_neighbor(x, [&](std::uint32_t w) {
                    if (in_comp[w]) {
                        in_comp[w] = false;
                        stack.push_back(w);
                    }
                });
            }
            pieces.push_back(std::move(piece));
        }
        return pieces;
    };

    std::vector<std::vector<std::uint32_t>> queue;
    {
        std::vector<std::uint32_t> all(n);
        std::iota(all.begin(), all.end(), 1);
        queue.push_back(std::move(all));
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<std::uint32_t> comp = std::move(queue[qi]);
        const std::uint64_t cw = comp_weight(f, comp);
        if (static_cast<double>(cw) <= cap) continue; // pooled; assembled later
        for (auto& piece : cut_component(comp, false, cw)) queue.push_back(std::move(piece));
    }

    // If the pool is one indivisible multi-node piece, side B would come
    // out empty; force median cuts until it splits or dissolves into S.
    while (true) {
        auto comps = components_excluding_s(f, r.side);
        if (comps.size() != 1 || comps[0].size() < 2) break;
        const std::uint64_t cw = comp_weight(f, comps[0]);
        std::vector<std::vector<std::uint32_t>> q2 = cut_component(comps[0], true, cw);
        for (std::size_t qi = 0; qi < q2.size(); ++qi) {
            std::vector<std::uint32_t> comp = std::move(q2[qi]);
            const std::uint64_t cw2 = comp_weight(f, comp);
            if (static_cast<double>(cw2) <= cap) continue;
            for (auto& piece : cut_component(comp, false, cw2)) q2.push_back(std::move(piece));
        }
    }

    assemble_sides(f, r);
    return r;
}

} // namespace detail

// ── Dispatch ─────────────────────────────────────────────────────

SeparatorResult find_separator(const WeightedGraph& f, double alpha,
                               SeparatorBackend backend, bool planar_hint) {
    if (alpha < 2.0 / 3.0 - 1e-12 || alpha >= 1.0)
        throw std::invalid_argument("alpha must be in [2/3, 1)");
    const std::size_t n = f.node_count();
    if (n <= 2) {
        SeparatorResult r;
        r.side.assign(n, Side::S);
        r.weight_s = f.total_weight();
        r.degenerate = true;
        return r;
    }
    if (backend == SeparatorBackend::Auto)
        backend = n <= 18 ? SeparatorBackend::Exact
                          : (planar_hint ? SeparatorBackend::Cycle
                                         : SeparatorBackend::Level);
    switch (backend) {
        case SeparatorBackend::Exact: return detail::exact_separator(f, alpha);
        case SeparatorBackend::Level: return detail::level_separator(f, alpha);
        case SeparatorBackend::Cycle: return detail::cycle_separator(f, alpha);
        case SeparatorBackend::Auto: break;
    }
    throw std::logic_error("unreachable backend dispatch");
}

// ── Heavy-node splitting on the minor ────────────────────────────

namespace {

std::vector<std::uint64_t> cloud_sizes_of(const StructureMinor& f, NodeId u,
                                          CloudPartition::Scratch& cs,
                                          StructureMinor::ExpandScratch& es) {
    std::vector<std::uint64_t> sizes;
    f.expand_clouds(u, cs, es, [&](std::uint32_t ord, Vertex) {
        if (ord >= sizes.size()) sizes.resize(ord + 1, 0);
        ++sizes[ord];
    });
    return sizes;
}

} // namespace

MinorSeparatorResult find_minor_separator(const StructureMinor& f, double alpha,
                                          SeparatorBackend backend, bool allow_split) {
    const std::size_t nf = f.node_count();
    WeightedGraph base = WeightedGraph::from_minor(f);
    const std::uint64_t total = base.total_weight();

    MinorSeparatorResult out;

    // Heavy nodes (weight > W/3).  A heavy node that represents a single
    // cloud cannot be split; its neighborhood is the separator then.
    // Splitting comes first: even a two-node minor (one big cloud plus a
    // heavy meta node) becomes searchable once the meta node's clouds are
    // distributed over fragments.
    NodeId fallback_node = 0;
    std::vector<NodeId> splittable;
    for (NodeId u = 1; u <= nf; ++u) {
        if (3 * f.weight(u) <= total) continue;
        if (f.cloud_count_of(u) <= 1 || !allow_split) {
            if (!fallback_node || f.weight(u) > f.weight(fallback_node))
                fallback_node = u;
        } else {
            splittable.push_back(u);
        }
    }

    if (nf <= 2 && splittable.empty()) {
        out.on_f = find_separator(base, alpha, backend, f.partition().phi() == 0);
        return out;
    }

    if (fallback_node && splittable.empty()) {
        out.neighborhood_fallback = true;
        auto& r = out.on_f;
        r.side.assign(nf, Side::B);
        r.side[fallback_node - 1] = Side::A;
        f.for_each_neighbor(fallback_node, [&](NodeId v) { r.side[v - 1] = Side::S; });
        for (NodeId u = 1; u <= nf; ++u) {
            switch (r.side[u - 1]) {
                case Side::A: r.weight_a += f.weight(u); break;
                case Side::S: r.weight_s += f.weight(u); break;
                case Side::B: r.weight_b += f.weight(u); break;
            }
        }
        return out;
    }

    if (splittable.empty()) {
        out.on_f = find_separator(base, alpha, backend, f.partition().phi() == 0);
        return out;
    }

    // Build the search graph: fragments replace their heavy node, inherit
    // its full neighborhood and are mutually non-adjacent (a meta node's
    // clouds induce disconnected components).
    CloudPartition::Scratch cs = f.partition().make_scratch();
    StructureMinor::ExpandScratch es;

    struct SearchNode {
        NodeId orig;
        std::uint32_t lo, hi; // expand-cloud ordinal range
    };
    std::vector<SearchNode> snodes;
    std::vector<std::uint32_t> first_snode(nf + 2, 0);
    std::vector<bool> is_split(nf + 1, false);
    for (NodeId u = 1; u <= nf; ++u) {
        first_snode[u] = static_cast<std::uint32_t>(snodes.size()) + 1;
        auto it = std::find(splittable.begin(), splittable.end(), u);
        if (it == splittable.end()) {
            snodes.push_back({u, 0, f.cloud_count_of(u) >= 1
                                        ? static_cast<std::uint32_t>(f.cloud_count_of(u))
                                        : 1u});
            continue;
        }
        is_split[u] = true;
        const auto sizes = cloud_sizes_of(f, u, cs, es);
        const std::uint64_t w = f.weight(u);
        std::uint32_t cut = 0;
        std::uint64_t prefix = 0;
        for (int piece = 0; piece < 3 && cut < sizes.size(); ++piece) {
            const std::uint64_t threshold =
                (static_cast<std::uint64_t>(piece) + 1) * w; // 3*prefix >= (piece+1)*w
            std::uint32_t end = cut;
            std::uint64_t acc = prefix;
            while (end < sizes.size() && (piece == 2 || 3 * acc < threshold))
                acc += sizes[end++];
            if (end == cut) continue;
            snodes.push_back({u, cut, end});
            cut = end;
            prefix = acc;
        }
    }
    first_snode[nf + 1] = static_cast<std::uint32_t>(snodes.size()) + 1;

    WeightedGraph search;
    search.weight.resize(snodes.size());
    search.off.assign(snodes.size() + 1, 0);
    {
        // Fragment weights from the cloud sizes; adjacency = original
        // adjacency expanded over fragments.
        std::vector<std::vector<std::uint32_t>> adj(snodes.size());
        for (std::size_t i = 0; i < snodes.size(); ++i) {
            const auto& sn = snodes[i];
            if (!is_split[sn.orig]) {
                search.weight[i] = f.weight(sn.orig);
            } else {
                const auto sizes = cloud_sizes_of(f, sn.orig, cs, es);
                std::uint64_t w = 0;
                for (std::uint32_t c = sn.lo; c < sn.hi; ++c) w += sizes[c];
                search.weight[i] = w;
            }
            f.for_each_neighbor(sn.orig, [&](NodeId v) {
                for (std::uint32_t j = first_snode[v]; j < first_snode[v + 1]; ++j)
                    adj[i].push_back(j);
            });
        }
        for (std::size_t i = 0; i < snodes.size(); ++i)
            search.off[i + 1] = search.off[i] + adj[i].size();
        search.nbr.resize(search.off[snodes.size()]);
        std::size_t a = 0;
        for (const auto& row : adj)
            for (auto v : row) search.nbr[a++] = v;
    }

    SeparatorResult sr = find_separator(search, alpha, backend, f.partition().phi() == 0);

    // Map fragments back to original nodes.
    auto& r = out.on_f;
    r.side.assign(nf, Side::B);
    r.degenerate = sr.degenerate;
    r.weight_a = sr.weight_a;
    r.weight_s = sr.weight_s;
    r.weight_b = sr.weight_b;
    for (NodeId u = 1; u <= nf; ++u) {
        const std::uint32_t lo = first_snode[u], hi = first_snode[u + 1];
        bool same = true;
        for (std::uint32_t j = lo + 1; j < hi; ++j)
            same &= sr.side[j - 1] == sr.side[lo - 1];
        if (same) {
            r.side[u - 1] = sr.side[lo - 1];
            continue;
        }
        r.side[u - 1] = Side::S; // summary only; the fragments decide the lift
        MinorSeparatorResult::SplitRecord rec;
        rec.node = u;
        for (std::uint32_t j = lo; j < hi; ++j)
            rec.fragments.push_back({snodes[j - 1].lo, snodes[j - 1].hi,
                                     sr.side[j - 1]});
        out.splits.push_back(std::move(rec));
    }
    return out;
}

LiftedSeparator lift_separator(const StructureMinor& f, const MinorSeparatorResult& r) {
    const std::size_t n = f.graph().vertex_count();
    LiftedSeparator lifted;
    lifted.in_a = BitVec(n);
    lifted.in_s = BitVec(n);
    lifted.in_b = BitVec(n);

    CloudPartition::Scratch cs = f.partition().make_scratch();
    StructureMinor::ExpandScratch es;

    auto bits_for = [&](Side s) -> BitVec& {
        switch (s) {
            case Side::A: return lifted.in_a;
            case Side::S: return lifted.in_s;
            case Side::B: return lifted.in_b;
        }
        return lifted.in_s;
    };

    std::size_t next_split = 0;
    for (NodeId u = 1; u <= f.node_count(); ++u) {
        const MinorSeparatorResult::SplitRecord* rec = nullptr;
        if (next_split < r.splits.size() && r.splits[next_split].node == u)
            rec = &r.splits[next_split++];
        if (!rec) {
            BitVec& bits = bits_for(r.on_f.side[u - 1]);
            f.expand(u, cs, es, [&](Vertex v) { bits.set(v - 1); });
            continue;
        }
        f.expand_clouds(u, cs, es, [&](std::uint32_t ord, Vertex v) {
            for (const auto& frag : rec->fragments)
                if (ord >= frag.cloud_lo && ord < frag.cloud_hi) {
                    bits_for(frag.side).set(v - 1);
                    return;
                }
            assert(false && "expand ordinal outside any fragment");
        });
    }
    lifted.size_a = lifted.in_a.popcount();
    lifted.size_s = lifted.in_s.popcount();
    lifted.size_b = lifted.in_b.popcount();
    return lifted;
}

bool lifted_separator_valid(const StaticGraph& g, const LiftedSeparator& s) {
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        if (!s.in_a.get(v - 1)) continue;
        bool ok = true;
        g.for_each_neighbor(v, [&](std::size_t, Vertex w) {
            if (s.in_b.get(w - 1)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

} // namespace cloud
