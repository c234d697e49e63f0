#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cloud/bitvec.hpp"
#include "cloud/hierarchy.hpp"
#include "cloud/indexable_dict.hpp"

namespace cloud {

/// Lookup table over all graphs of at most t vertices, keyed by the
/// upper-triangular adjacency bitmask under the inherited label order.
/// Small vertex counts get per-code precomputed neighbor-row masks; the
/// rest are decoded from the code word directly.  Either way one call
/// counts as a single table access.
class MicroTable {
public:
    MicroTable() = default;
    explicit MicroTable(std::size_t t);

    std::size_t cap() const { return t_; }
    static std::size_t code_bits(std::size_t nv) { return nv * (nv - 1) / 2; }

    /// Bitmask of the neighbors of local vertex i in the graph `code` on
    /// nv vertices.
    std::uint32_t row(std::size_t nv, std::uint64_t code, std::size_t i) const;
    bool adjacent_bit(std::size_t nv, std::uint64_t code, std::size_t i,
                      std::size_t j) const {
        return (row(nv, code, i) >> j) & 1u;
    }
    std::size_t degree(std::size_t nv, std::uint64_t code, std::size_t i) const {
        return static_cast<std::size_t>(__builtin_popcount(row(nv, code, i)));
    }

    /// Bit position of the pair (i<j) inside a code on nv vertices.
    static std::size_t pair_bit(std::size_t nv, std::size_t i, std::size_t j) {
        return i * (2 * nv - i - 1) / 2 + (j - i - 1);
    }

    std::size_t footprint_bits() const;

private:
    std::size_t t_ = 0;
    // rows_[nv] nonempty iff precomputed: rows_[nv][code * nv + i]
    std::vector<std::vector<std::uint8_t>> rows_;
};

struct QueryCounter {
    std::size_t dictionary_lookups = 0;
    std::size_t table_accesses = 0;
    std::size_t total() const { return dictionary_lookups + table_accesses; }
};

/// Two-level succinct encoding: minis and micros from the recursive
/// separator search, micro lookup table codes, translation dictionaries
/// over the concatenated vertex lists, and per-vertex in-arc slots from
/// the bounded in-degree orientation (the owning micro's occurrence plus
/// the tail's local index), so adjacency and degree need a constant number
/// of dictionary lookups plus one table access.
class SuccinctEncoding {
public:
    static SuccinctEncoding build(const StaticGraph& g, const CloudPartition& p,
                                  const StructureMinor& f, unsigned delta,
                                  std::size_t t, double alpha = 2.0 / 3.0,
                                  SeparatorBackend backend = SeparatorBackend::Auto);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }
    unsigned delta() const { return delta_; }
    std::size_t micro_cap() const { return t_; }
    std::size_t mini_count() const { return mini_count_; }
    std::size_t micro_count() const { return micro_count_; }

    std::size_t degree(Vertex v, QueryCounter* qc = nullptr) const;
    bool adjacent(Vertex u, Vertex v, QueryCounter* qc = nullptr) const;

    template <typename F>
    void neighborhood(Vertex v, F&& fn, QueryCounter* qc = nullptr) const;

    /// Total encoded bits (everything needed to answer queries).
    std::size_t footprint_bits() const;

    void save(std::ostream& out) const;
    static SuccinctEncoding load(std::istream& in);

private:
    bool slot_matches(std::size_t slot, Vertex tail, QueryCounter* qc) const;
    Vertex global_of_mu(std::size_t q, std::size_t mini, QueryCounter* qc) const;

    std::size_t n_ = 0, m_ = 0;
    unsigned delta_ = 0;
    std::size_t t_ = 0;
    std::size_t mini_count_ = 0, micro_count_ = 0;
    std::size_t cat_len_ = 0, mu_len_ = 0;

    MicroTable table_;

    PackedIntVec cat_;              // CAT position -> global vertex
    IndexableDictionary cat_mark_;  // mini boundaries in CAT space
    PackedIntVec occ_off_, occ_pos_; // vertex -> its CAT positions

    PackedIntVec mcat_;                 // mu position -> mini-local index
    IndexableDictionary micro_mark_;    // micro boundaries in mu space
    IndexableDictionary mini_seg_mark_; // mini segment boundaries in mu space
    PackedIntVec mocc_off_, mocc_pos_;  // CAT position -> its mu positions
    PackedIntVec codes_;                // micro -> table code

    PackedIntVec in_off_, slot_pos_, slot_lx_; // per-vertex in-arc slots
    PackedIntVec degrees_;
};

template <typename F>
void SuccinctEncoding::neighborhood(Vertex v, F&& fn, QueryCounter* qc) const {
    auto tick = [&](std::size_t k = 1) { if (qc) qc->dictionary_lookups += k; };
    const std::size_t ob = occ_off_.get(v - 1), oe = occ_off_.get(v);
    tick(2);
    for (std::size_t oi = ob; oi < oe; ++oi) {
        const std::size_t p = occ_pos_.get(oi);
        const std::size_t mb = mocc_off_.get(p), me = mocc_off_.get(p + 1);
        tick(3);
        for (std::size_t mi = mb; mi < me; ++mi) {
            const std::size_t q = mocc_pos_.get(mi);
            const std::size_t micro = micro_mark_.rank(q + 1) - 1;
            const std::size_t mstart = micro_mark_.select(micro + 1);
            const std::size_t mend = micro + 1 < micro_count_
                                         ? micro_mark_.select(micro + 2)
                                         : mu_len_;
            const std::size_t mini = mini_seg_mark_.rank(q + 1) - 1;
            tick(5);
            const std::uint64_t code = codes_.get(micro);
            const std::uint32_t bits =
                table_.row(mend - mstart, code, q - mstart);
            if (qc) ++qc->table_accesses;
            for (std::uint32_t r = bits; r;) {
                const unsigned l = static_cast<unsigned>(__builtin_ctz(r));
                r &= r - 1;
                fn(global_of_mu(mstart + l, mini, qc));
            }
        }
    }
}

SuccinctEncoding encode(const StaticGraph& g, const CloudPartition& p,
                        const StructureMinor& f, unsigned delta, std::size_t t,
                        double alpha = 2.0 / 3.0,
                        SeparatorBackend backend = SeparatorBackend::Auto);

} // namespace cloud
