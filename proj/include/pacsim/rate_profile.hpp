#pragma once

#include <cstddef>
#include <vector>

#include "pacsim/bits.hpp"

namespace pacsim {

/// The data index set A: which of the N container positions carry data bits.
/// Indices are 0-based internally; user-facing output is 1-based.
class RateProfile {
public:
    RateProfile(std::size_t block_length, std::vector<std::size_t> data_indices);

    std::size_t block_length() const { return mask_.size(); }
    std::size_t dimension() const { return data_indices_.size(); }
    bool is_data(std::size_t i) const { return mask_[i] != 0; }
    const BitVec& mask() const { return mask_; }
    const std::vector<std::size_t>& data_indices() const { return data_indices_; }

    bool operator==(const RateProfile&) const = default;

private:
    BitVec mask_;
    std::vector<std::size_t> data_indices_;  // ascending
};

/// Reed-Muller rule: pick the K indices whose (index) binary expansion has the
/// largest Hamming weight. Ties inside the boundary weight class go to the
/// larger index. block_length must be a power of two, 1 <= k <= block_length.
RateProfile rm_profile(std::size_t block_length, std::size_t k);

/// Scatters the K data bits onto A (in index order); zeros elsewhere.
BitVec insert_data(const BitVec& data, const RateProfile& profile);

/// Gathers the container values on A, inverse of insert_data.
BitVec extract_data(const BitVec& container, const RateProfile& profile);

}  // namespace pacsim
