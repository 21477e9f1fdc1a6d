#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "pacsim/bits.hpp"

namespace pacsim {

/// x = u F^{\otimes n} over GF(2), F = [[1,0],[1,1]], in-place butterflies.
/// Throws std::invalid_argument unless the length is a power of two.
void polar_transform_inplace(BitVec& u);
BitVec polar_transform(BitVec u);

/// Check-node LLR combine, 2*atanh(tanh(a/2)*tanh(b/2)), inputs clamped to
/// +-40 so the result stays finite. Evaluated in log-cosh form.
inline double f_llr(double a, double b) {
    constexpr double kClamp = 40.0;
    a = a > kClamp ? kClamp : (a < -kClamp ? -kClamp : a);
    b = b > kClamp ? kClamp : (b < -kClamp ? -kClamp : b);
    const double s = std::abs(a + b);
    const double d = std::abs(a - b);
    return 0.5 * (s - d) + std::log1p(std::exp(-s)) - std::log1p(std::exp(-d));
}

/// Variable-node LLR combine given the partial sum s of the sibling branch.
inline double g_llr(double a, double b, std::uint8_t s) {
    return s ? b - a : b + a;
}

/// Successive-cancellation likelihood engine over the polar transform.
///
/// Holds the usual layered LLR / partial-sum arrays plus, per committed
/// level, a snapshot of exactly the array segments that level's commit
/// overwrites. rewind_one() restores the stored bytes, so the LLR seen after
/// any commit/rewind history is bit-identical to a fresh replay of the same
/// prefix. Total snapshot storage is O(N log N).
///
/// One instance serves one decoding session at a time; distinct instances
/// are independent.
class ScState {
public:
    explicit ScState(std::size_t block_length);
    ScState(std::span<const double> channel_llrs);

    /// Re-seeds the engine with fresh channel LLRs (natural-log domain,
    /// codeword order) and rewinds to depth 0. Reuses all buffers.
    void reset(std::span<const double> channel_llrs);

    std::size_t size() const { return n_bits_; }
    std::size_t depth() const { return depth_; }

    /// ln P(y, u^{depth} | next bit = 0) / P(y, u^{depth} | next bit = 1).
    /// Requires depth() < size().
    double next_bit_llr() const { return llr_at_[depth_]; }

    /// Commits the next transform-input bit. Requires depth() < size().
    void commit_bit(std::uint8_t u);

    /// Undoes the most recent commit. Requires depth() > 0.
    void rewind_one();

    /// Rewinds to an earlier depth (no-op when equal to current depth).
    void rewind_to(std::size_t new_depth);

private:
    void calc_p(std::size_t phi);
    void update_c(std::size_t phi);

    std::size_t n_bits_ = 0;
    std::size_t stages_ = 0;
    std::size_t depth_ = 0;
    std::vector<double> p_;            // LLR layers 0..n, flat
    std::vector<std::uint8_t> c_;      // partial sums, 2 slots per node, flat
    std::vector<std::size_t> p_off_;   // layer offsets into p_ (stages_+2)
    std::vector<std::size_t> c_off_;   // layer offsets into c_
    std::vector<std::size_t> bitrev_;
    std::vector<double> llr_at_;       // cached top-level LLR per depth

    struct Undo {
        std::size_t p_src, p_dst, p_len;
        std::size_t c_src, c_dst, c_len;
    };
    std::vector<Undo> undo_;           // per depth
    std::vector<double> p_save_;
    std::vector<std::uint8_t> c_save_;
};

}  // namespace pacsim
