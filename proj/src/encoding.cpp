#include "cloud/encoding.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "cloud/orientation.hpp"

namespace cloud {

// ── MicroTable ───────────────────────────────────────────────────

MicroTable::MicroTable(std::size_t t) : t_(t), rows_(t + 1) {
    for (std::size_t nv = 2; nv <= t; ++nv) {
        const std::size_t bits = code_bits(nv);
        if (bits > 16) continue; // decoded from the code word instead
        const std::size_t codes = std::size_t(1) << bits;
        auto& tab = rows_[nv];
        tab.assign(codes * nv, 0);
        for (std::size_t code = 0; code < codes; ++code)
            for (std::size_t i = 0; i < nv; ++i)
                for (std::size_t j = i + 1; j < nv; ++j)
                    if ((code >> pair_bit(nv, i, j)) & 1u) {
                        tab[code * nv + i] |= std::uint8_t(1u << j);
                        tab[code * nv + j] |= std::uint8_t(1u << i);
                    }
    }
}

std::uint32_t MicroTable::row(std::size_t nv, std::uint64_t code, std::size_t i) const {
    if (nv <= 1) return 0;
    if (nv < rows_.size() && !rows_[nv].empty())
        return rows_[nv][static_cast<std::size_t>(code) * nv + i];
    std::uint32_t r = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        if (j == i) continue;
        const std::size_t b = i < j ? pair_bit(nv, i, j) : pair_bit(nv, j, i);
        r |= static_cast<std::uint32_t>((code >> b) & 1u) << j;
    }
    return r;
}

std::size_t MicroTable::footprint_bits() const {
    std::size_t bits = 0;
    for (const auto& tab : rows_) bits += tab.capacity() * 8;
    return bits;
}

// ── Build ────────────────────────────────────────────────────────

SuccinctEncoding SuccinctEncoding::build(const StaticGraph& g, const CloudPartition& p,
                                         const StructureMinor& f, unsigned delta,
                                         std::size_t t, double alpha,
                                         SeparatorBackend backend) {
    const std::size_t n = g.vertex_count();
    const bool planar = p.phi() == 0;
    const std::size_t density = planar ? 3 : p.phi() - 1;

    MiniDecomposition minis = mini_graphs(g, p, f, delta, alpha, backend);
    std::vector<MiniDecomposition> micros(minis.minis.size());
    std::size_t max_mini = 1;
    for (std::size_t i = 0; i < minis.minis.size(); ++i) {
        micros[i] = micro_graphs(minis.minis[i], t, alpha, backend, density, planar);
        max_mini = std::max(max_mini, minis.minis[i].vertices.size());
    }

    SuccinctEncoding e;
    e.n_ = n;
    e.m_ = g.edge_count();
    e.delta_ = delta;
    e.t_ = t;
    e.table_ = MicroTable(t);
    e.mini_count_ = minis.minis.size();

    // Sizes.
    std::size_t cat_len = 0, mu_len = 0, micro_count = 0;
    for (std::size_t i = 0; i < minis.minis.size(); ++i) {
        cat_len += minis.minis[i].vertices.size();
        for (const auto& mg : micros[i].minis) {
            if (mg.vertices.size() > t)
                throw std::logic_error("internal error: micro graph exceeds the cap");
            mu_len += mg.vertices.size();
            ++micro_count;
        }
    }
    e.cat_len_ = cat_len;
    e.mu_len_ = mu_len;
    e.micro_count_ = micro_count;

    const unsigned wv = bit_width_for(n);
    const unsigned wcat = bit_width_for(cat_len);
    const unsigned wmu = bit_width_for(mu_len);
    const unsigned wlocal = bit_width_for(max_mini);

    // CAT and mini boundaries.
    e.cat_ = PackedIntVec(cat_len ? cat_len : 1, wv);
    BitVec cat_marks(cat_len ? cat_len : 1);
    {
        std::size_t pos = 0;
        for (const auto& m : minis.minis) {
            cat_marks.set(pos);
            for (Vertex v : m.vertices) e.cat_.set(pos++, v);
        }
    }
    e.cat_mark_ = IndexableDictionary(std::move(cat_marks));

    // Vertex occurrences in CAT (ascending: minis are scanned in order).
    e.occ_off_ = PackedIntVec(n + 1, wcat);
    e.occ_pos_ = PackedIntVec(cat_len ? cat_len : 1, wcat);
    {
        std::vector<std::uint32_t> counts(n + 1, 0);
        for (const auto& m : minis.minis)
            for (Vertex v : m.vertices) ++counts[v];
        std::size_t acc = 0;
        for (Vertex v = 1; v <= n; ++v) {
            e.occ_off_.set(v - 1, acc);
            acc += counts[v];
        }
        e.occ_off_.set(n, acc);
        std::vector<std::uint32_t> cursor(n + 1, 0);
        std::size_t pos = 0;
        for (const auto& m : minis.minis)
            for (Vertex v : m.vertices) {
                e.occ_pos_.set(e.occ_off_.get(v - 1) + cursor[v], pos);
                ++cursor[v];
                ++pos;
            }
    }

    // Micro concatenation, boundaries, codes.
    e.mcat_ = PackedIntVec(mu_len ? mu_len : 1, wlocal);
    BitVec micro_marks(mu_len ? mu_len : 1);
    BitVec seg_marks(mu_len ? mu_len : 1);
    e.codes_ = PackedIntVec(micro_count ? micro_count : 1,
                            std::max<unsigned>(1, static_cast<unsigned>(
                                                      MicroTable::code_bits(t))));
    // Per-CAT-position micro occurrences.
    e.mocc_off_ = PackedIntVec(cat_len + 1, wmu);
    e.mocc_pos_ = PackedIntVec(mu_len ? mu_len : 1, wmu);

    // Orientation for the adjacency slots.
    Orientation orient = orient_bounded(g, density);

    e.in_off_ = PackedIntVec(n + 1, bit_width_for(e.m_ + 1));
    e.slot_pos_ = PackedIntVec(e.m_ ? e.m_ : 1, wmu);
    e.slot_lx_ = PackedIntVec(e.m_ ? e.m_ : 1, bit_width_for(t));
    {
        // counts first
        std::vector<std::uint32_t> in_count(n + 1, 0);
        for (Vertex v = 1; v <= n; ++v)
            orient.for_each_out(v, [&](std::size_t, Vertex head) { ++in_count[head]; });
        std::size_t acc = 0;
        for (Vertex v = 1; v <= n; ++v) {
            e.in_off_.set(v - 1, acc);
            acc += in_count[v];
        }
        e.in_off_.set(n, acc);
        assert(acc == e.m_);
    }

    {
        std::vector<std::uint32_t> slot_cursor(n + 1, 0);
        std::vector<std::uint32_t> mocc_count(cat_len + 1, 0);
        std::size_t mu_pos = 0, micro_idx = 0, cat_base = 0;
        std::size_t edges_assigned = 0;

        // First pass over micros: mcat, marks, codes, mocc counts, slots.
        for (std::size_t i = 0; i < minis.minis.size(); ++i) {
            const auto& mini = minis.minis[i];
            bool first_in_mini = true;
            for (const auto& mg : micros[i].minis) {
                const std::size_t nv = mg.vertices.size();
                micro_marks.set(mu_pos);
                if (first_in_mini) seg_marks.set(mu_pos);
                first_in_mini = false;

                std::uint64_t code = 0;
                for (auto [a, b] : mg.edges)
                    code |= std::uint64_t(1)
                         << MicroTable::pair_bit(nv, std::min(a, b), std::max(a, b));
                e.codes_.set(micro_idx, code);

                for (std::size_t j = 0; j < nv; ++j) {
                    const std::uint32_t mini_local = mg.vertices[j] - 1;
                    e.mcat_.set(mu_pos + j, mini_local);
                    ++mocc_count[cat_base + mini_local];
                }

                // slots: one per owned edge, at the orientation head
                for (auto [a, b] : mg.edges) {
                    const Vertex x = mini.vertices[mg.vertices[a] - 1];
                    const Vertex y = mini.vertices[mg.vertices[b] - 1];
                    const std::size_t kx = g.find_arc(x, y);
                    assert(kx < g.degree(x));
                    const bool toward_y = orient.arcs().contains_arc(x, kx);
                    const Vertex head = toward_y ? y : x;
                    const std::size_t head_mu = mu_pos + (toward_y ? b : a);
                    const std::size_t tail_lx = toward_y ? a : b;
                    const std::size_t slot = e.in_off_.get(head - 1) + slot_cursor[head];
                    ++slot_cursor[head];
                    e.slot_pos_.set(slot, head_mu);
                    e.slot_lx_.set(slot, tail_lx);
                    ++edges_assigned;
                }
                mu_pos += nv;
                ++micro_idx;
            }
            cat_base += mini.vertices.size();
        }
        if (edges_assigned != e.m_)
            throw std::logic_error("internal error: edge ownership is not a partition ("
                                   + std::to_string(edges_assigned) + " of "
                                   + std::to_string(e.m_) + " edges assigned)");
        for (Vertex v = 1; v <= n; ++v)
            if (slot_cursor[v] != e.in_off_.get(v) - e.in_off_.get(v - 1))
                throw std::logic_error("internal error: in-slot count mismatch");

        // mocc offsets + fill
        std::size_t acc = 0;
        for (std::size_t pp = 0; pp < cat_len; ++pp) {
            e.mocc_off_.set(pp, acc);
            acc += mocc_count[pp];
        }
        e.mocc_off_.set(cat_len, acc);
        assert(acc == mu_len);
        std::vector<std::uint32_t> cursor(cat_len + 1, 0);
        mu_pos = 0;
        cat_base = 0;
        for (std::size_t i = 0; i < minis.minis.size(); ++i) {
            for (const auto& mg : micros[i].minis) {
                for (std::size_t j = 0; j < mg.vertices.size(); ++j) {
                    const std::size_t pp = cat_base + mg.vertices[j] - 1;
                    e.mocc_pos_.set(e.mocc_off_.get(pp) + cursor[pp], mu_pos + j);
                    ++cursor[pp];
                }
                mu_pos += mg.vertices.size();
            }
            cat_base += minis.minis[i].vertices.size();
        }
    }

    e.micro_mark_ = IndexableDictionary(std::move(micro_marks));
    e.mini_seg_mark_ = IndexableDictionary(std::move(seg_marks));

    // Degrees.
    std::size_t maxdeg = 0;
    for (Vertex v = 1; v <= n; ++v) maxdeg = std::max(maxdeg, g.degree(v));
    e.degrees_ = PackedIntVec(n, bit_width_for(maxdeg));
    for (Vertex v = 1; v <= n; ++v) e.degrees_.set(v - 1, g.degree(v));
    return e;
}

SuccinctEncoding encode(const StaticGraph& g, const CloudPartition& p,
                        const StructureMinor& f, unsigned delta, std::size_t t,
                        double alpha, SeparatorBackend backend) {
    return SuccinctEncoding::build(g, p, f, delta, t, alpha, backend);
}

// ── Queries ──────────────────────────────────────────────────────

std::size_t SuccinctEncoding::degree(Vertex v, QueryCounter* qc) const {
    if (qc) ++qc->dictionary_lookups;
    return degrees_.get(v - 1);
}

Vertex SuccinctEncoding::global_of_mu(std::size_t q, std::size_t mini,
                                      QueryCounter* qc) const {
    if (qc) qc->dictionary_lookups += 3;
    const std::size_t cat_start = cat_mark_.select(mini + 1);
    return static_cast<Vertex>(cat_.get(cat_start + mcat_.get(q)));
}

bool SuccinctEncoding::slot_matches(std::size_t slot, Vertex tail,
                                    QueryCounter* qc) const {
    if (qc) qc->dictionary_lookups += 2;
    const std::size_t q = slot_pos_.get(slot);
    const std::size_t lx = slot_lx_.get(slot);

    if (qc) qc->dictionary_lookups += 4;
    const std::size_t micro = micro_mark_.rank(q + 1) - 1;
    const std::size_t mstart = micro_mark_.select(micro + 1);
    const std::size_t mend =
        micro + 1 < micro_count_ ? micro_mark_.select(micro + 2) : mu_len_;
    const std::size_t mini = mini_seg_mark_.rank(q + 1) - 1;

    // The stored code must confirm the edge between the tail and this slot.
    if (qc) {
        ++qc->dictionary_lookups;
        ++qc->table_accesses;
    }
    const std::uint64_t code = codes_.get(micro);
    if (!table_.adjacent_bit(mend - mstart, code, lx, q - mstart)) return false;
    return global_of_mu(mstart + lx, mini, qc) == tail;
}

bool SuccinctEncoding::adjacent(Vertex u, Vertex v, QueryCounter* qc) const {
    if (u == v) return false;
    auto scan = [&](Vertex head, Vertex tail) {
        if (qc) qc->dictionary_lookups += 2;
        const std::size_t b = in_off_.get(head - 1), e2 = in_off_.get(head);
        for (std::size_t s = b; s < e2; ++s)
            if (slot_matches(s, tail, qc)) return true;
        return false;
    };
    return scan(v, u) || scan(u, v);
}

// ── Footprint and serialization ──────────────────────────────────

std::size_t SuccinctEncoding::footprint_bits() const {
    return table_.footprint_bits() + cat_.footprint_bits()
         + cat_mark_.footprint_bits() + occ_off_.footprint_bits()
         + occ_pos_.footprint_bits() + mcat_.footprint_bits()
         + micro_mark_.footprint_bits() + mini_seg_mark_.footprint_bits()
         + mocc_off_.footprint_bits() + mocc_pos_.footprint_bits()
         + codes_.footprint_bits() + in_off_.footprint_bits()
         + slot_pos_.footprint_bits() + slot_lx_.footprint_bits()
         + degrees_.footprint_bits();
}

namespace {

constexpr std::uint64_t kMagic = 0x31434443ULL; // "CDC1"

void write_u64(std::ostream& out, std::uint64_t x) {
    out.write(reinterpret_cast<const char*>(&x), sizeof(x));
}
std::uint64_t read_u64(std::istream& in) {
    std::uint64_t x = 0;
    in.read(reinterpret_cast<char*>(&x), sizeof(x));
    if (!in) throw std::invalid_argument("encoding file: truncated input");
    return x;
}

void write_bits(std::ostream& out, const BitVec& b) {
    write_u64(out, b.size());
    for (std::size_t i = 0; i < b.word_count(); ++i) write_u64(out, b.word(i));
}
BitVec read_bits(std::istream& in) {
    const std::size_t len = read_u64(in);
    std::vector<std::uint64_t> words((len + 63) / 64);
    for (auto& w : words) w = read_u64(in);
    return BitVec::from_words(len, std::move(words));
}

void write_packed(std::ostream& out, const PackedIntVec& p) {
    write_u64(out, p.size());
    write_u64(out, p.width());
    write_bits(out, p.raw());
}
PackedIntVec read_packed(std::istream& in) {
    const std::size_t count = read_u64(in);
    const unsigned width = static_cast<unsigned>(read_u64(in));
    return PackedIntVec::from_raw(count, width, read_bits(in));
}

} // namespace

void SuccinctEncoding::save(std::ostream& out) const {
    write_u64(out, kMagic);
    write_u64(out, n_);
    write_u64(out, m_);
    write_u64(out, delta_);
    write_u64(out, t_);
    write_u64(out, mini_count_);
    write_u64(out, micro_count_);
    write_u64(out, cat_len_);
    write_u64(out, mu_len_);
    write_packed(out, cat_);
    write_bits(out, cat_mark_.bits());
    write_packed(out, occ_off_);
    write_packed(out, occ_pos_);
    write_packed(out, mcat_);
    write_bits(out, micro_mark_.bits());
    write_bits(out, mini_seg_mark_.bits());
    write_packed(out, mocc_off_);
    write_packed(out, mocc_pos_);
    write_packed(out, codes_);
    write_packed(out, in_off_);
    write_packed(out, slot_pos_);
    write_packed(out, slot_lx_);
    write_packed(out, degrees_);
}

SuccinctEncoding SuccinctEncoding::load(std::istream& in) {
    if (read_u64(in) != kMagic)
        throw std::invalid_argument("encoding file: bad magic");
    SuccinctEncoding e;
    e.n_ = read_u64(in);
    e.m_ = read_u64(in);
    e.delta_ = static_cast<unsigned>(read_u64(in));
    e.t_ = read_u64(in);
    e.mini_count_ = read_u64(in);
    e.micro_count_ = read_u64(in);
    e.cat_len_ = read_u64(in);
    e.mu_len_ = read_u64(in);
    e.table_ = MicroTable(e.t_);
    e.cat_ = read_packed(in);
    e.cat_mark_ = IndexableDictionary(read_bits(in));
    e.occ_off_ = read_packed(in);
    e.occ_pos_ = read_packed(in);
    e.mcat_ = read_packed(in);
    e.micro_mark_ = IndexableDictionary(read_bits(in));
    e.mini_seg_mark_ = IndexableDictionary(read_bits(in));
    e.mocc_off_ = read_packed(in);
    e.mocc_pos_ = read_packed(in);
    e.codes_ = read_packed(in);
    e.in_off_ = read_packed(in);
    e.slot_pos_ = read_packed(in);
    e.slot_lx_ = read_packed(in);
    e.degrees_ = read_packed(in);
    return e;
}

} // namespace cloud
