#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cloud/bitvec.hpp"
#include "cloud/indexable_dict.hpp"

namespace cloud {

/// Static space allocation: packs l items of d_1..d_l bits into one payload
/// of L = sum(d_k) bits with O(1) random access.  A marker bit is set at
/// position s_k = k + sum_{j<k} d_j (1-indexed) of a bitvector of length
/// l + L; the offset of item k is then select(k) - k + 1 with a 0-indexed
/// select.
class StaticAllocator {
public:
    StaticAllocator() = default;

    explicit StaticAllocator(const std::vector<std::size_t>& sizes)
        : items_(sizes.size()) {
        std::size_t total = 0;
        for (auto d : sizes) total += d;
        BitVec marker(items_ + total);
        std::size_t prefix = 0;
        for (std::size_t k = 1; k <= items_; ++k) {
            marker.set(k + prefix - 1);
            prefix += sizes[k - 1];
        }
        marker_ = IndexableDictionary(std::move(marker));
        payload_ = BitVec(total);
        payload_bits_ = total;
    }

    std::size_t item_count() const { return items_; }
    std::size_t payload_bits() const { return payload_bits_; }

    /// Starting bit offset of item k (1-indexed) inside the payload.
    std::size_t locate(std::size_t k) const {
        check(k);
        return marker_.select(k) - k + 1;
    }

    /// Size in bits of item k.
    std::size_t item_size(std::size_t k) const {
        check(k);
        return (k == items_ ? payload_bits_ + items_ : marker_.select(k + 1))
             - marker_.select(k) - 1;
    }

    std::uint64_t read(std::size_t k) const {
        return payload_.read_bits(locate(k), static_cast<unsigned>(item_size(k)));
    }
    void write(std::size_t k, std::uint64_t value) {
        payload_.write_bits(locate(k), static_cast<unsigned>(item_size(k)), value);
    }

    BitVec& payload() { return payload_; }
    const BitVec& payload() const { return payload_; }

    std::size_t footprint_bits() const {
        return marker_.footprint_bits() + payload_.footprint_bits();
    }

private:
    void check(std::size_t k) const {
        if (k == 0 || k > items_)
            throw std::out_of_range("StaticAllocator: item index out of range");
    }

    std::size_t items_ = 0;
    std::size_t payload_bits_ = 0;
    IndexableDictionary marker_;
    BitVec payload_;
};

} // namespace cloud
