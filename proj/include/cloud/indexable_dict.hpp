#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "cloud/bitvec.hpp"

namespace cloud {

/// Rank/select dictionary over a fixed bitvector.
///
/// Two-level rank directory: superblocks of ~log^2(l) bits hold absolute
/// ranks, blocks of ~log(l)/2 bits hold ranks relative to their superblock.
/// Select keeps the position of every T-th 1-bit (T ~ log^2(l)) and scans
/// locally from the nearest sample, so it is O(1) amortized rather than
/// worst case.  Overhead beyond the base bits is O(l loglog l / log l);
/// the documented bound asserted by tests is 24*l/log2(l) bits.
class IndexableDictionary {
public:
    IndexableDictionary() = default;

    explicit IndexableDictionary(BitVec base) : base_(std::move(base)) {
        const std::size_t len = base_.size();
        unsigned logl = bit_width_for(len | 1);
        block_bits_ = logl / 2 + 1;
        std::size_t blocks_per_super = (static_cast<std::size_t>(logl) * logl
                                        + block_bits_ - 1) / block_bits_;
        super_bits_ = blocks_per_super * block_bits_;
        sample_rate_ = static_cast<std::size_t>(logl) * logl;
        if (sample_rate_ == 0) sample_rate_ = 1;

        pos_width_ = bit_width_for(len);
        rel_width_ = bit_width_for(super_bits_);

        const std::size_t n_super = len / super_bits_ + 1;
        const std::size_t n_block = len / block_bits_ + 1;
        super_ = BitVec(n_super * pos_width_);
        block_ = BitVec(n_block * rel_width_);

        // Single pass: fill both directories and collect select samples.
        std::vector<std::uint64_t> samples;
        std::size_t ones = 0;
        for (std::size_t b = 0; b < n_block; ++b) {
            const std::size_t start = b * block_bits_;
            if (start % super_bits_ == 0)
                super_.write_bits((start / super_bits_) * pos_width_, pos_width_, ones);
            block_.write_bits(b * rel_width_, rel_width_,
                              ones - super_rank(start / super_bits_));
            if (start >= len) break;
            const unsigned w = static_cast<unsigned>(
                std::min<std::size_t>(block_bits_, len - start));
            std::uint64_t chunk = base_.read_bits(start, w);
            while (chunk) {
                if (ones % sample_rate_ == 0)
                    samples.push_back(start + static_cast<unsigned>(__builtin_ctzll(chunk)));
                ++ones;
                chunk &= chunk - 1;
            }
        }
        ones_ = ones;
        samples_ = BitVec(samples.size() * pos_width_);
        for (std::size_t j = 0; j < samples.size(); ++j)
            samples_.write_bits(j * pos_width_, pos_width_, samples[j]);
    }

    std::size_t size() const { return base_.size(); }
    std::size_t ones() const { return ones_; }
    const BitVec& bits() const { return base_; }

    /// Number of 1-bits at positions < i.
    std::size_t rank(std::size_t i) const {
        if (i > base_.size())
            throw std::out_of_range("rank: index past end of bitvector");
        const std::size_t b = i / block_bits_;
        std::size_t r = super_rank(i / super_bits_)
                      + block_.read_bits(b * rel_width_, rel_width_);
        const std::size_t start = b * block_bits_;
        if (i > start)
            r += static_cast<std::size_t>(__builtin_popcountll(
                base_.read_bits(start, static_cast<unsigned>(i - start))));
        return r;
    }

    /// 0-indexed position of the i-th 1-bit (i is 1-indexed).
    std::size_t select(std::size_t i) const {
        if (i == 0 || i > ones_)
            throw std::out_of_range("select: rank index not found");
        const std::size_t j = (i - 1) / sample_rate_;
        std::size_t pos = samples_.read_bits(j * pos_width_, pos_width_);
        if ((i - 1) % sample_rate_ == 0) return pos;

        // Skip whole superblocks from the sample position onward.
        std::size_t sj = pos / super_bits_;
        const std::size_t last_super = base_.size() / super_bits_;
        while (sj < last_super && super_rank(sj + 1) < i) ++sj;
        // Skip blocks within the superblock.
        std::size_t need = i - super_rank(sj);
        std::size_t b = sj * super_bits_ / block_bits_;
        const std::size_t last_block = base_.size() / block_bits_;
        while (b < last_block &&
               block_.read_bits((b + 1) * rel_width_, rel_width_) < need &&
               (b + 1) * block_bits_ < (sj + 1) * super_bits_)
            ++b;
        need -= block_.read_bits(b * rel_width_, rel_width_);
        // Scan the block.
        std::size_t start = b * block_bits_;
        const unsigned w = static_cast<unsigned>(
            std::min<std::size_t>(block_bits_, base_.size() - start));
        std::uint64_t chunk = base_.read_bits(start, w);
        while (true) {
            assert(chunk != 0 && "select directory out of sync");
            if (--need == 0)
                return start + static_cast<unsigned>(__builtin_ctzll(chunk));
            chunk &= chunk - 1;
        }
    }

    std::size_t footprint_bits() const {
        return base_.footprint_bits() + super_.footprint_bits()
             + block_.footprint_bits() + samples_.footprint_bits();
    }
    std::size_t overhead_bits() const { return footprint_bits() - base_.size(); }

private:
    std::size_t super_rank(std::size_t j) const {
        return super_.read_bits(j * pos_width_, pos_width_);
    }

    BitVec base_;
    BitVec super_, block_, samples_;
    std::size_t block_bits_ = 1, super_bits_ = 1, sample_rate_ = 1;
    unsigned pos_width_ = 1, rel_width_ = 1;
    std::size_t ones_ = 0;
};

} // namespace cloud
