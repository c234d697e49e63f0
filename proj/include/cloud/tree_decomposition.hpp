#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cloud/separator.hpp"
#include "cloud/structure_minor.hpp"

namespace cloud {

struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags; // sorted vertex lists
    std::vector<std::size_t> parent;       // parent bag index; root points at itself

    std::size_t width() const {
        std::size_t mx = 0;
        for (const auto& b : bags) mx = std::max(mx, b.size());
        return mx ? mx - 1 : 0;
    }
};

/// Recursive separator search on F emitting one bag per call: the bag is
/// S united with the carried set X, children recurse on F'[A+S] and
/// F'[B+S] with X_side = (X+S) & (side+S); leaves of at most
/// `leaf_threshold` nodes emit whole.  Every F-bag is expanded cloud-wise
/// to a G-bag.  `emit` receives (sorted G-bag, parent index) with bags
/// indexed in emission order, so the decomposition can stream.
void decompose_stream(const StaticGraph& g, const CloudPartition& p,
                      const StructureMinor& f, double alpha,
                      SeparatorBackend backend,
                      const std::function<void(std::vector<Vertex>, std::size_t)>& emit,
                      std::size_t leaf_threshold = 4);

TreeDecomposition decompose(const StaticGraph& g, const CloudPartition& p,
                            const StructureMinor& f, double alpha = 2.0 / 3.0,
                            SeparatorBackend backend = SeparatorBackend::Auto,
                            std::size_t leaf_threshold = 4);

/// Report of the three tree-decomposition conditions; `violated` is 0 when
/// valid, else the first failing condition (1..3) with a witness.
struct TdValidation {
    bool valid = false;
    int violated = 0;
    std::string witness;
    std::size_t width = 0;
    std::size_t bag_count = 0;
};

TdValidation validate_td(const StaticGraph& g, const TreeDecomposition& td);

/// PACE 2017 .td format.
void write_pace(std::ostream& out, const TreeDecomposition& td, std::size_t n);
TreeDecomposition read_pace(std::istream& in, std::size_t* n_out = nullptr);

} // namespace cloud
