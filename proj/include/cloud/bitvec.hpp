#pragma once

#include <cassert>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace cloud {

/// Fixed-length bitvector backed by 64-bit words.  Positions are 0-indexed.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t len, bool fill = false)
        : len_(len), words_((len + 63) / 64, fill ? ~0ULL : 0ULL) {
        clear_tail();
    }

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const {
        assert(i < len_);
        return (words_[i >> 6] >> (i & 63)) & 1ULL;
    }
    void set(std::size_t i, bool b = true) {
        assert(i < len_);
        if (b) words_[i >> 6] |= 1ULL << (i & 63);
        else   words_[i >> 6] &= ~(1ULL << (i & 63));
    }
    void clear(std::size_t i) { set(i, false); }

    void fill(bool b) {
        for (auto& w : words_) w = b ? ~0ULL : 0ULL;
        if (b) clear_tail();
    }

    /// Read `width` (≤ 64) bits starting at bit offset `pos`.
    std::uint64_t read_bits(std::size_t pos, unsigned width) const {
        assert(width <= 64 && pos + width <= len_);
        if (width == 0) return 0;
        std::size_t w = pos >> 6, o = pos & 63;
        std::uint64_t lo = words_[w] >> o;
        if (o + width > 64) lo |= words_[w + 1] << (64 - o);
        return width == 64 ? lo : lo & ((1ULL << width) - 1);
    }

    /// Write the low `width` (≤ 64) bits of `value` at bit offset `pos`.
    void write_bits(std::size_t pos, unsigned width, std::uint64_t value) {
        assert(width <= 64 && pos + width <= len_);
        if (width == 0) return;
        std::uint64_t mask = width == 64 ? ~0ULL : (1ULL << width) - 1;
        value &= mask;
        std::size_t w = pos >> 6, o = pos & 63;
        words_[w] = (words_[w] & ~(mask << o)) | (value << o);
        if (o + width > 64) {
            unsigned spill = static_cast<unsigned>(o + width - 64);
            std::uint64_t hi_mask = (1ULL << spill) - 1;
            words_[w + 1] = (words_[w + 1] & ~hi_mask) | (value >> (64 - o));
        }
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    const std::uint64_t* words() const { return words_.data(); }
    std::size_t word_count() const { return words_.size(); }
    std::uint64_t word(std::size_t i) const { return words_[i]; }

    static BitVec from_words(std::size_t len, std::vector<std::uint64_t> words) {
        BitVec b;
        b.len_ = len;
        b.words_ = std::move(words);
        b.words_.resize((len + 63) / 64, 0);
        b.clear_tail();
        return b;
    }

    std::size_t footprint_bits() const { return words_.size() * 64; }

    bool operator==(const BitVec& o) const {
        return len_ == o.len_ && words_ == o.words_;
    }

private:
    void clear_tail() {
        if (len_ & 63) words_.back() &= (1ULL << (len_ & 63)) - 1;
    }

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Number of bits needed to store values 0..v.
inline unsigned bit_width_for(std::uint64_t v) {
    unsigned w = 1;
    while (v >> w) ++w;
    return w;
}

/// Fixed-width packed integer array over a BitVec.
class PackedIntVec {
public:
    PackedIntVec() = default;
    PackedIntVec(std::size_t count, unsigned width)
        : count_(count), width_(width), bits_(count * width) {
        assert(width >= 1 && width <= 64);
    }

    std::size_t size() const { return count_; }
    unsigned width() const { return width_; }

    std::uint64_t get(std::size_t i) const {
        assert(i < count_);
        return bits_.read_bits(i * width_, width_);
    }
    void set(std::size_t i, std::uint64_t v) {
        assert(i < count_);
        bits_.write_bits(i * width_, width_, v);
    }

    std::size_t footprint_bits() const { return bits_.footprint_bits(); }

    const BitVec& raw() const { return bits_; }
    static PackedIntVec from_raw(std::size_t count, unsigned width, BitVec raw) {
        PackedIntVec p;
        p.count_ = count;
        p.width_ = width;
        p.bits_ = std::move(raw);
        return p;
    }

private:
    std::size_t count_ = 0;
    unsigned width_ = 1;
    BitVec bits_;
};

} // namespace cloud
