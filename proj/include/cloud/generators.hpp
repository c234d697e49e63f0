#pragma once

#include <cstdint>
#include <string>

#include "cloud/static_graph.hpp"

namespace cloud {

/// Deterministic test-corpus generators.  All graphs come out connected
/// with vertices labeled 1..n.
StaticGraph make_grid(std::size_t width, std::size_t height);

/// Grid with one diagonal per cell (a triangulated grid).
StaticGraph make_tri_grid(std::size_t width, std::size_t height);

StaticGraph make_star(std::size_t n);
StaticGraph make_path(std::size_t n);

/// Triangulated grid whose non-grid diagonals are each kept i.i.d. with
/// probability p, restricted to the largest connected component (the grid
/// edges always stay, so that restriction is the whole graph).
StaticGraph make_random_planar(std::size_t width, std::size_t height,
                               double p, std::uint64_t seed);

/// Grid plus up to `extra` long-range chords; a bounded-density but
/// non-planar fixture.
StaticGraph make_crossed_grid(std::size_t width, std::size_t height,
                              std::size_t extra, std::uint64_t seed);

struct GenParams {
    std::string kind;       // grid, tri-grid, star, path, random-planar, crossed-grid
    std::size_t width = 0;  // grid kinds; n for star/path
    std::size_t height = 0;
    double p = 0.5;
    std::size_t extra = 3;
    std::uint64_t seed = 1;
};

StaticGraph generate(const GenParams& params);

} // namespace cloud
