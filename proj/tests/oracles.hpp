// Independent reference implementations used as test oracles. Deliberately
// naive: explicit matrices, exhaustive sums and from-scratch recomputation
// instead of the incremental machinery they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pacsim/bits.hpp"
#include "pacsim/code_config.hpp"

namespace oracle {

using pacsim::BitVec;

// ---- GF(2) matrices -------------------------------------------------------

using Matrix = std::vector<BitVec>;  // row-major

inline Matrix kronecker_f(std::size_t stages) {
    Matrix m{{1}};
    for (std::size_t s = 0; s < stages; ++s) {
        const std::size_t n = m.size();
        Matrix next(2 * n, BitVec(2 * n, 0));
        // F = [[1,0],[1,1]] applied on the left of the current block.
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                if (!m[r][c]) continue;
                next[r][c] = 1;                  // F[0][0]
                next[r + n][c] = 1;              // F[1][0]
                next[r + n][c + n] = 1;          // F[1][1]
            }
        m = std::move(next);
    }
    return m;
}

inline BitVec mat_vec(const BitVec& row_vec, const Matrix& m) {
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    BitVec out(cols, 0);
    for (std::size_t r = 0; r < row_vec.size(); ++r) {
        if (!row_vec[r]) continue;
        for (std::size_t c = 0; c < cols; ++c) out[c] ^= m[r][c];
    }
    return out;
}

// Lower-triangular Toeplitz convolution matrix: u = v * c as v . T.
inline Matrix toeplitz(const BitVec& taps, std::size_t n) {
    Matrix t(n, BitVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n && j - i < taps.size(); ++j) t[i][j] = taps[j - i];
    return t;
}

// PAC encoding as one explicit matrix product chain.
inline BitVec matrix_pac_encode(const BitVec& data, const pacsim::CodeConfig& cfg) {
    BitVec v(cfg.block_length, 0);
    const auto& idx = cfg.profile.data_indices();
    for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = data[i];
    const BitVec u = mat_vec(v, toeplitz(cfg.generator.taps(), cfg.block_length));
    return mat_vec(u, kronecker_f(cfg.stages));
}

// ---- exhaustive SC likelihoods (N <= ~10) ---------------------------------

// ln sum of p(y|x(u)) over all completions of the given transform-input
// prefix with next bit fixed; p(y_i|x_i) taken proportional to e^{+-llr/2}.
inline double joint_log_prob(std::span<const double> llrs, const BitVec& u_prefix,
                             std::uint8_t next_bit) {
    const std::size_t n = llrs.size();
    const std::size_t fixed = u_prefix.size() + 1;
    if (fixed > n) throw std::invalid_argument("prefix too long");
    const std::size_t free_bits = n - fixed;
    const Matrix f = kronecker_f(static_cast<std::size_t>(std::round(std::log2(n))));
    double total = 0.0;
    BitVec u(n, 0);
    std::copy(u_prefix.begin(), u_prefix.end(), u.begin());
    u[fixed - 1] = next_bit;
    for (std::uint64_t p = 0; p < (1ull << free_bits); ++p) {
        for (std::size_t b = 0; b < free_bits; ++b) u[fixed + b] = (p >> b) & 1u;
        const BitVec x = mat_vec(u, f);
        double lp = 0.0;
        for (std::size_t i = 0; i < n; ++i) lp += (x[i] ? -0.5 : 0.5) * llrs[i];
        total += std::exp(lp);
    }
    return std::log(total);
}

inline double brute_next_bit_llr(std::span<const double> llrs, const BitVec& u_prefix) {
    return joint_log_prob(llrs, u_prefix, 0) - joint_log_prob(llrs, u_prefix, 1);
}

// ---- naive Fano decoder ----------------------------------------------------

struct NaiveFanoResult {
    bool completed = false;
    BitVec v_hat;
    std::uint64_t visits = 0;
    std::uint64_t back_moves = 0;
    double final_metric = 0.0;
};

// Straightforward transcription of the Fano flowchart. Every branch metric is
// recomputed from scratch through the supplied per-prefix LLR functional, so
// nothing incremental is shared with the decoder under test.
template <class NextLlrFn>
NaiveFanoResult naive_fano(std::size_t n, const BitVec& data_mask, const BitVec& taps,
                           double rho, double delta, std::optional<std::uint64_t> z_max,
                           NextLlrFn&& next_llr) {
    const std::size_t m = taps.size() - 1;
    BitVec v(n, 0), u(n, 0);
    std::vector<double> gpath(n + 1, 0.0);
    std::vector<int> rank_taken(n, 0);
    std::int64_t t_steps = 0;
    std::uint64_t visits = 0, back_moves = 0;
    std::size_t d = 0;
    int rank = 0;

    auto gamma_of = [&](std::uint8_t vbit) {
        std::uint8_t ubit = taps[0] & vbit;
        for (std::size_t t = 1; t <= m && t <= d; ++t) ubit ^= taps[t] & v[d - t];
        const BitVec prefix(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(d));
        const double llr = next_llr(prefix);
        const double bias = data_mask[d] ? rho : 0.0;
        const double e = (ubit ? 1.0 : -1.0) * llr;
        const double sp = (std::max(e, 0.0) + std::log1p(std::exp(-std::abs(e)))) / std::log(2.0);
        return std::make_pair(1.0 - sp - bias, ubit);
    };

    for (;;) {
        const double threshold = static_cast<double>(t_steps) * delta;
        // candidate branches, best first, bit u = 0 first on ties
        struct Cand { double gamma; std::uint8_t vbit, ubit; };
        std::vector<Cand> cands;
        if (data_mask[d]) {
            for (std::uint8_t vb : {0, 1}) {
                auto [g, ub] = gamma_of(vb);
                cands.push_back({g, vb, ub});
            }
            if (cands[1].gamma > cands[0].gamma ||
                (cands[1].gamma == cands[0].gamma && cands[1].ubit < cands[0].ubit))
                std::swap(cands[0], cands[1]);
        } else {
            auto [g, ub] = gamma_of(0);
            cands.push_back({g, 0, ub});
        }
        bool moved = false;
        if (rank < static_cast<int>(cands.size())) {
            const Cand& c = cands[rank];
            const double fwd = gpath[d] + c.gamma;
            if (fwd >= threshold) {
                const bool first = gpath[d] < threshold + delta;
                v[d] = c.vbit;
                u[d] = c.ubit;
                rank_taken[d] = rank;
                ++d;
                gpath[d] = fwd;
                ++visits;
                if (z_max && visits > *z_max) return {false, {}, visits, back_moves, fwd};
                if (d == n) return {true, v, visits, back_moves, fwd};
                if (first) t_steps = static_cast<std::int64_t>(std::floor(fwd / delta));
                rank = 0;
                moved = true;
            }
        }
        if (!moved) {
            if (d > 0 && gpath[d - 1] >= threshold) {
                --d;
                ++back_moves;
                rank = rank_taken[d] + 1;
            } else {
                --t_steps;
                rank = 0;
            }
        }
    }
}

}  // namespace oracle
