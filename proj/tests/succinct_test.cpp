#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "cloud/bitvec.hpp"
#include "cloud/choice_dict.hpp"
#include "cloud/indexable_dict.hpp"
#include "cloud/static_alloc.hpp"

using namespace cloud;

namespace {

BitVec from_string(const std::string& s) {
    BitVec b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') b.set(i);
    return b;
}

// Independent oracle: linear scan rank/select.
std::size_t naive_rank(const BitVec& b, std::size_t i) {
    std::size_t r = 0;
    for (std::size_t j = 0; j < i; ++j) r += b.get(j);
    return r;
}

std::size_t naive_select(const BitVec& b, std::size_t i) {
    std::size_t seen = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
        if (b.get(j) && ++seen == i) return j;
    return b.size();
}

} // namespace

TEST_CASE("rank on small fixtures") {
    IndexableDictionary d(from_string("10110"));
    CHECK(d.rank(3) == 2);
    CHECK(d.rank(0) == 0);
    CHECK(d.rank(5) == 3);

    IndexableDictionary zeros(from_string("00000"));
    CHECK(zeros.rank(5) == 0);

    CHECK_THROWS_AS(d.rank(6), std::out_of_range);
}

TEST_CASE("select on small fixtures") {
    IndexableDictionary d(from_string("10110"));
    CHECK(d.select(1) == 0);
    CHECK(d.select(2) == 2);
    CHECK(d.select(3) == 3);
    CHECK_THROWS_AS(d.select(4), std::out_of_range);
    CHECK_THROWS_AS(d.select(0), std::out_of_range);

    IndexableDictionary one(from_string("1"));
    CHECK(one.select(1) == 0);
}

TEST_CASE("rank/select against the naive oracle on random 4096-bit vectors") {
    std::mt19937_64 rng(12345);
    for (double density : {0.5, 0.05, 0.95}) {
        BitVec b(4096);
        for (std::size_t i = 0; i < 4096; ++i)
            if ((rng() >> 11) * 0x1.0p-53 < density) b.set(i);
        IndexableDictionary d(b);

        for (int t = 0; t < 100; ++t) {
            const std::size_t i = rng() % 4097;
            CHECK(d.rank(i) == naive_rank(b, i));
        }
        for (std::size_t i = 1; i <= d.ones(); ++i)
            REQUIRE(d.select(i) == naive_select(b, i));
    }
}

TEST_CASE("rank difference equals the bit, select/rank round-trip") {
    std::mt19937_64 rng(99);
    BitVec b(777);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (rng() & 1) b.set(i);
    IndexableDictionary d(b);
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(d.rank(i + 1) - d.rank(i) == (b.get(i) ? 1u : 0u));
        if (b.get(i)) CHECK(d.select(d.rank(i) + 1) == i);
    }
}

TEST_CASE("choice dictionary trivial cases") {
    ChoiceDictionary c(16);
    CHECK(c.choice() == 0);
    CHECK(c.empty());
    c.insert(7);
    CHECK(c.choice() == 7);
    CHECK(c.contains(7));
    CHECK(!c.contains(6));
    c.erase(7);
    CHECK(c.choice() == 0);
}

TEST_CASE("choice dictionary matches a shadow set over a random script") {
    const std::size_t universe = 300;
    ChoiceDictionary c(universe);
    std::set<std::size_t> shadow;
    std::mt19937_64 rng(2024);
    for (int op = 0; op < 10000; ++op) {
        const std::size_t x = rng() % universe + 1;
        switch (rng() % 3) {
            case 0:
                CHECK(c.insert(x) == shadow.insert(x).second);
                break;
            case 1:
                CHECK(c.erase(x) == (shadow.erase(x) > 0));
                break;
            case 2:
                CHECK(c.contains(x) == (shadow.count(x) > 0));
                break;
        }
        CHECK(c.size() == shadow.size());
        const std::size_t ch = c.choice();
        if (shadow.empty()) CHECK(ch == 0);
        else CHECK(shadow.count(ch) == 1);
    }
    std::vector<std::size_t> members;
    c.for_each([&](std::size_t x) { members.push_back(x); });
    CHECK(members == std::vector<std::size_t>(shadow.begin(), shadow.end()));
}

TEST_CASE("static allocation fixture from the marker formula") {
    StaticAllocator a({3, 1, 2});
    // marker bits at 1-indexed positions 1, 5, 7
    CHECK(a.locate(1) == 0);
    CHECK(a.locate(2) == 3);
    CHECK(a.locate(3) == 4);
    CHECK(a.item_size(1) == 3);
    CHECK(a.item_size(2) == 1);
    CHECK(a.item_size(3) == 2);
    CHECK_THROWS_AS(a.locate(0), std::out_of_range);
    CHECK_THROWS_AS(a.locate(4), std::out_of_range);

    StaticAllocator single({5});
    CHECK(single.locate(1) == 0);
    CHECK(single.item_size(1) == 5);
}

TEST_CASE("static allocation agrees with a prefix-sum oracle") {
    std::mt19937_64 rng(7);
    std::vector<std::size_t> sizes(100);
    for (auto& d : sizes) d = rng() % 64 + 1;
    StaticAllocator a(sizes);

    std::size_t prefix = 0;
    for (std::size_t k = 1; k <= sizes.size(); ++k) {
        CHECK(a.locate(k) == prefix);
        if (k < sizes.size())
            CHECK(a.locate(k + 1) - a.locate(k) == sizes[k - 1]);
        prefix += sizes[k - 1];
    }

    // round-trip payload values
    for (std::size_t k = 1; k <= sizes.size(); ++k)
        a.write(k, k * 2654435761u & ((1ULL << sizes[k - 1]) - 1));
    for (std::size_t k = 1; k <= sizes.size(); ++k)
        CHECK(a.read(k) == (k * 2654435761u & ((1ULL << sizes[k - 1]) - 1)));
}

TEST_CASE("indexable dictionary overhead stays within 24*l/log2(l) bits") {
    std::mt19937_64 rng(5);
    for (std::size_t logl : {14, 18, 22}) {
        const std::size_t l = std::size_t(1) << logl;
        BitVec b(l);
        for (std::size_t i = 0; i < l; i += 3) b.set(i);
        IndexableDictionary d(std::move(b));
        const double bound = 24.0 * static_cast<double>(l) / static_cast<double>(logl);
        CHECK(static_cast<double>(d.overhead_bits()) <= bound);
    }
}

TEST_CASE("choice dictionary footprint is l + o(l)") {
    const std::size_t l = 1 << 18;
    ChoiceDictionary c(l);
    CHECK(c.footprint_bits() <= l + l / 32 + 256);
}
