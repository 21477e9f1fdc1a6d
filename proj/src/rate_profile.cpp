#include "pacsim/rate_profile.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace pacsim {

RateProfile::RateProfile(std::size_t block_length, std::vector<std::size_t> data_indices)
    : mask_(block_length, 0), data_indices_(std::move(data_indices)) {
    std::sort(data_indices_.begin(), data_indices_.end());
    for (std::size_t i : data_indices_) {
        if (i >= block_length)
            throw std::invalid_argument("data index out of range");
        if (mask_[i])
            throw std::invalid_argument("duplicate data index");
        mask_[i] = 1;
    }
}

RateProfile rm_profile(std::size_t block_length, std::size_t k) {
    if (block_length == 0 || !std::has_single_bit(block_length))
        throw std::invalid_argument("block length must be a power of two");
    if (k < 1 || k > block_length)
        throw std::invalid_argument("dimension must satisfy 1 <= K <= N");
    std::vector<std::size_t> order(block_length);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Heaviest binary weight first; within a weight class larger index first,
    // so the boundary class ties break toward the more polarized positions.
    std::stable_sort(order.begin(), order.end(), [](std::size_t a, std::size_t b) {
        const int wa = std::popcount(a);
        const int wb = std::popcount(b);
        if (wa != wb) return wa > wb;
        return a > b;
    });
    order.resize(k);
    return RateProfile(block_length, std::move(order));
}

BitVec insert_data(const BitVec& data, const RateProfile& profile) {
    if (data.size() != profile.dimension())
        throw std::invalid_argument("data length does not match profile dimension");
    BitVec v(profile.block_length(), 0);
    const auto& idx = profile.data_indices();
    for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = data[i];
    return v;
}

BitVec extract_data(const BitVec& container, const RateProfile& profile) {
    if (container.size() != profile.block_length())
        throw std::invalid_argument("container length does not match profile");
    BitVec d(profile.dimension(), 0);
    const auto& idx = profile.data_indices();
    for (std::size_t i = 0; i < idx.size(); ++i) d[i] = container[idx[i]];
    return d;
}

}  // namespace pacsim
