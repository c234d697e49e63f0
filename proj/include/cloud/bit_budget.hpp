#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <string>

namespace cloud {

/// Label-based accounting of auxiliary working-memory bits.  Core pipeline
/// stages charge the structures they build; tests compare totals across
/// input sizes to back the linear-space claims.
class BitBudget {
public:
    struct Counter {
        std::size_t current = 0;
        std::size_t peak = 0;
    };

    void charge(const std::string& label, std::size_t bits) {
        auto& c = counters_[label];
        c.current += bits;
        if (c.current > c.peak) c.peak = c.current;
        total_ += bits;
        if (total_ > peak_total_) peak_total_ = total_;
    }

    void release(const std::string& label, std::size_t bits) {
        auto it = counters_.find(label);
        assert(it != counters_.end() && it->second.current >= bits &&
               "BitBudget: releasing more than charged");
        it->second.current -= bits;
        total_ -= bits;
    }

    std::size_t current(const std::string& label) const {
        auto it = counters_.find(label);
        return it == counters_.end() ? 0 : it->second.current;
    }
    std::size_t peak(const std::string& label) const {
        auto it = counters_.find(label);
        return it == counters_.end() ? 0 : it->second.peak;
    }

    std::size_t current_total() const { return total_; }
    std::size_t peak_total() const { return peak_total_; }

    const std::map<std::string, Counter>& counters() const { return counters_; }

private:
    std::map<std::string, Counter> counters_;
    std::size_t total_ = 0;
    std::size_t peak_total_ = 0;
};

} // namespace cloud
