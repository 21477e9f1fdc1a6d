#include "doctest.h"

#include <bit>
#include <random>
#include <stdexcept>
#include <vector>

#include "pacsim/rate_profile.hpp"

using pacsim::BitVec;
using pacsim::extract_data;
using pacsim::insert_data;
using pacsim::RateProfile;
using pacsim::rm_profile;

TEST_CASE("rm profile (8,4) picks the four heaviest indices") {
    const auto p = rm_profile(8, 4);
    CHECK(p.data_indices() == std::vector<std::size_t>{3, 5, 6, 7});  // 1-based {4,6,7,8}
}

TEST_CASE("rm profile (2,1) keeps the higher-weight index") {
    CHECK(rm_profile(2, 1).data_indices() == std::vector<std::size_t>{1});
}

TEST_CASE("rm profile (128,64) equals the weight>=4 set") {
    const auto p = rm_profile(128, 64);
    for (std::size_t i = 0; i < 128; ++i)
        CHECK(p.is_data(i) == (std::popcount(i) >= 4));
}

TEST_CASE("rm profile at weight-class boundaries matches brute force") {
    // Whenever K exhausts whole weight classes, the profile is exactly the
    // weight >= w index set.
    for (std::size_t n = 1; n <= 10; ++n) {
        const std::size_t block = std::size_t{1} << n;
        std::vector<std::size_t> class_size(n + 1, 0);
        for (std::size_t i = 0; i < block; ++i)
            ++class_size[static_cast<std::size_t>(std::popcount(i))];
        std::size_t k = 0;
        for (std::size_t w = n + 1; w-- > 1;) {
            k += class_size[w];
            const auto p = rm_profile(block, k);
            CHECK(p.dimension() == k);
            for (std::size_t i = 0; i < block; ++i)
                CHECK(p.is_data(i) == (static_cast<std::size_t>(std::popcount(i)) >= w));
        }
    }
}

TEST_CASE("rm profile ties break toward larger indices") {
    // N=8, K=2: weight-3 class is {7}; the weight-2 tie goes to index 6.
    CHECK(rm_profile(8, 2).data_indices() == std::vector<std::size_t>{6, 7});
    CHECK(rm_profile(8, 1).data_indices() == std::vector<std::size_t>{7});
}

TEST_CASE("rm profile always returns exactly K indices") {
    std::mt19937 rng(5);
    for (int it = 0; it < 50; ++it) {
        const std::size_t n = 1 + rng() % 9;
        const std::size_t block = std::size_t{1} << n;
        const std::size_t k = 1 + rng() % block;
        const auto p = rm_profile(block, k);
        CHECK(p.dimension() == k);
        std::size_t in_mask = 0;
        for (std::size_t i = 0; i < block; ++i) in_mask += p.is_data(i);
        CHECK(in_mask == k);
    }
}

TEST_CASE("rm profile rejects bad parameters") {
    CHECK_THROWS_AS(rm_profile(12, 4), std::invalid_argument);
    CHECK_THROWS_AS(rm_profile(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(rm_profile(8, 9), std::invalid_argument);
}

TEST_CASE("insert places data on A in index order") {
    const auto p = rm_profile(8, 4);
    CHECK(insert_data(BitVec{1, 0, 1, 1}, p) == BitVec{0, 0, 0, 1, 0, 0, 1, 1});
    CHECK(insert_data(BitVec{0, 0, 0, 0}, p) == BitVec(8, 0));
    CHECK(extract_data(BitVec{0, 0, 0, 1, 0, 0, 1, 1}, p) == BitVec{1, 0, 1, 1});
}

TEST_CASE("extract on trivial containers") {
    const RateProfile p(4, {2, 3});
    CHECK(extract_data(BitVec{1, 1, 1, 1}, p) == BitVec{1, 1});
    CHECK(extract_data(BitVec{0, 0, 0, 0}, p) == BitVec{0, 0});
}

TEST_CASE("insert/extract round trip") {
    std::mt19937 rng(17);
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 1 + rng() % 8;
        const std::size_t block = std::size_t{1} << n;
        const std::size_t k = 1 + rng() % block;
        const auto p = rm_profile(block, k);
        BitVec d(k);
        for (auto& b : d) b = rng() & 1;
        const BitVec v = insert_data(d, p);
        CHECK(extract_data(v, p) == d);
        for (std::size_t i = 0; i < block; ++i)
            if (!p.is_data(i)) CHECK(v[i] == 0);
    }
}

TEST_CASE("length mismatches are rejected") {
    const auto p = rm_profile(8, 4);
    CHECK_THROWS_AS(insert_data(BitVec{1, 0}, p), std::invalid_argument);
    CHECK_THROWS_AS(extract_data(BitVec{1, 0}, p), std::invalid_argument);
}
