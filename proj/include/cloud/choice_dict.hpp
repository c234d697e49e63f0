#pragma once

#include <cstdint>
#include <vector>

#include "cloud/bitvec.hpp"

namespace cloud {

/// Dynamic subset of the universe 1..l with constant-time insert, delete,
/// contains and choice, and iteration linear in the number of members.
///
/// Layout: member bits plus a two-level word-occupancy summary, so the
/// footprint is l + l/64 + l/4096 bits (plus word padding).  choice()
/// returns the lowest member; which member is returned is unspecified by
/// the contract but deterministic for a fixed operation history.
class ChoiceDictionary {
public:
    ChoiceDictionary() = default;

    explicit ChoiceDictionary(std::size_t universe)
        : universe_(universe),
          bits_(universe),
          sum1_(bits_.word_count()),
          sum2_(sum1_.word_count()) {}

    std::size_t universe() const { return universe_; }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(std::size_t x) const {
        assert(x >= 1 && x <= universe_);
        return bits_.get(x - 1);
    }

    /// Returns true if x was not already a member.
    bool insert(std::size_t x) {
        assert(x >= 1 && x <= universe_);
        if (bits_.get(x - 1)) return false;
        bits_.set(x - 1);
        sum1_.set((x - 1) >> 6);
        sum2_.set((x - 1) >> 12);
        ++count_;
        return true;
    }

    /// Returns true if x was a member.
    bool erase(std::size_t x) {
        assert(x >= 1 && x <= universe_);
        if (!bits_.get(x - 1)) return false;
        bits_.clear(x - 1);
        std::size_t w = (x - 1) >> 6;
        if (bits_.word(w) == 0) {
            sum1_.clear(w);
            if (sum1_.word(w >> 6) == 0) sum2_.clear(w >> 6);
        }
        --count_;
        return true;
    }

    /// Some current member, or 0 if the set is empty.
    std::size_t choice() const {
        if (count_ == 0) return 0;
        std::size_t w2 = 0;
        while (sum2_.word(w2) == 0) ++w2;
        std::size_t w1 = (w2 << 6) + __builtin_ctzll(sum2_.word(w2));
        std::size_t w0 = (w1 << 6) + __builtin_ctzll(sum1_.word(w1));
        return (w0 << 6) + __builtin_ctzll(bits_.word(w0)) + 1;
    }

    /// Visit every member once, in increasing order.
    template <typename F>
    void for_each(F&& fn) const {
        for (std::size_t w2 = 0; w2 < sum2_.word_count(); ++w2) {
            std::uint64_t c2 = sum2_.word(w2);
            while (c2) {
                std::size_t w1 = (w2 << 6) + __builtin_ctzll(c2);
                c2 &= c2 - 1;
                std::uint64_t c1 = sum1_.word(w1);
                while (c1) {
                    std::size_t w0 = (w1 << 6) + __builtin_ctzll(c1);
                    c1 &= c1 - 1;
                    std::uint64_t c0 = bits_.word(w0);
                    while (c0) {
                        fn((w0 << 6) + __builtin_ctzll(c0) + 1);
                        c0 &= c0 - 1;
                    }
                }
            }
        }
    }

    std::size_t footprint_bits() const {
        return bits_.footprint_bits() + sum1_.footprint_bits()
             + sum2_.footprint_bits();
    }

private:
    std::size_t universe_ = 0;
    BitVec bits_, sum1_, sum2_;
    std::size_t count_ = 0;
};

} // namespace cloud
