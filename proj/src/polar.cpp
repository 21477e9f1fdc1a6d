#include "pacsim/polar.hpp"

#include <bit>
#include <cassert>
#include <cstring>
#include <stdexcept>

namespace pacsim {

void polar_transform_inplace(BitVec& u) {
    const std::size_t n = u.size();
    if (n == 0 || !std::has_single_bit(n))
        throw std::invalid_argument("polar transform needs a power-of-two length");
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t i = 0; i < n; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j)
                u[j] ^= u[j + h];
}

BitVec polar_transform(BitVec u) {
    polar_transform_inplace(u);
    return u;
}

namespace {

std::size_t trailing_ones(std::size_t v) {
    std::size_t t = 0;
    while (v & 1u) {
        v >>= 1;
        ++t;
    }
    return t;
}

}  // namespace

ScState::ScState(std::size_t block_length) {
    if (block_length == 0 || !std::has_single_bit(block_length))
        throw std::invalid_argument("SC state needs a power-of-two length");
    n_bits_ = block_length;
    stages_ = static_cast<std::size_t>(std::bit_width(block_length) - 1);

    p_off_.assign(stages_ + 2, 0);
    c_off_.assign(stages_ + 2, 0);
    for (std::size_t lam = 0; lam <= stages_; ++lam) {
        p_off_[lam + 1] = p_off_[lam] + (n_bits_ >> lam);
        c_off_[lam + 1] = c_off_[lam] + 2 * (n_bits_ >> lam);
    }
    p_.assign(p_off_[stages_ + 1], 0.0);
    c_.assign(c_off_[stages_ + 1], 0);
    llr_at_.assign(n_bits_, 0.0);

    bitrev_.resize(n_bits_);
    for (std::size_t i = 0; i < n_bits_; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < stages_; ++b) r |= ((i >> b) & 1u) << (stages_ - 1 - b);
        bitrev_[i] = r;
    }

    // Per-depth undo spans: the commit of bit d saves the C layers its
    // partial-sum propagation writes and the P layers the next bit's
    // recomputation overwrites. Total O(N log N).
    undo_.resize(n_bits_);
    std::size_t p_acc = 0, c_acc = 0;
    for (std::size_t d = 0; d < n_bits_; ++d) {
        Undo u{};
        const std::size_t c_lo = stages_ - trailing_ones(d);
        u.c_src = c_off_[c_lo];
        u.c_len = c_off_[stages_ + 1] - u.c_src;
        u.c_dst = c_acc;
        c_acc += u.c_len;
        if (d + 1 < n_bits_) {
            const std::size_t tz = static_cast<std::size_t>(std::countr_zero(d + 1));
            const std::size_t p_lo = stages_ - tz;
            u.p_src = p_off_[p_lo];
            u.p_len = p_off_[stages_ + 1] - u.p_src;
            u.p_dst = p_acc;
            p_acc += u.p_len;
        }
        undo_[d] = u;
    }
    p_save_.assign(p_acc, 0.0);
    c_save_.assign(c_acc, 0);
}

ScState::ScState(std::span<const double> channel_llrs) : ScState(channel_llrs.size()) {
    reset(channel_llrs);
}

void ScState::reset(std::span<const double> channel_llrs) {
    if (channel_llrs.size() != n_bits_)
        throw std::invalid_argument("channel LLR length does not match SC state size");
    for (std::size_t i = 0; i < n_bits_; ++i) p_[i] = channel_llrs[bitrev_[i]];
    std::memset(c_.data(), 0, c_.size());
    depth_ = 0;
    if (stages_ == 0) {
        llr_at_[0] = p_[0];
        return;
    }
    calc_p(0);
    llr_at_[0] = p_[p_off_[stages_]];
}

void ScState::calc_p(std::size_t phi) {
    const std::size_t lo =
        phi == 0 ? 1 : stages_ - static_cast<std::size_t>(std::countr_zero(phi));
    for (std::size_t lam = lo; lam <= stages_; ++lam) {
        const std::size_t sz = n_bits_ >> lam;
        const double* prev = p_.data() + p_off_[lam - 1];
        double* cur = p_.data() + p_off_[lam];
        if ((phi >> (stages_ - lam)) & 1u) {
            const std::uint8_t* cs = c_.data() + c_off_[lam];
            for (std::size_t i = 0; i < sz; ++i)
                cur[i] = g_llr(prev[2 * i], prev[2 * i + 1], cs[2 * i]);
        } else {
            for (std::size_t i = 0; i < sz; ++i) cur[i] = f_llr(prev[2 * i], prev[2 * i + 1]);
        }
    }
}

void ScState::update_c(std::size_t phi) {
    std::size_t lam = stages_;
    for (;;) {
        const std::size_t psi = phi >> 1;
        const std::size_t sz = n_bits_ >> lam;
        const std::uint8_t* src = c_.data() + c_off_[lam];
        std::uint8_t* dst = c_.data() + c_off_[lam - 1];
        const std::size_t slot = psi & 1u;
        for (std::size_t b = 0; b < sz; ++b) {
            const std::uint8_t c0 = src[2 * b];
            const std::uint8_t c1 = src[2 * b + 1];
            dst[4 * b + slot] = c0 ^ c1;
            dst[4 * b + 2 + slot] = c1;
        }
        if ((psi & 1u) && lam > 1) {
            phi = psi;
            --lam;
        } else {
            break;
        }
    }
}

void ScState::commit_bit(std::uint8_t u) {
    assert(depth_ < n_bits_);
    const std::size_t d = depth_;
    const Undo& un = undo_[d];
    std::memcpy(c_save_.data() + un.c_dst, c_.data() + un.c_src, un.c_len);
    if (un.p_len)
        std::memcpy(p_save_.data() + un.p_dst, p_.data() + un.p_src,
                    un.p_len * sizeof(double));
    if (stages_ > 0) {
        c_[c_off_[stages_] + (d & 1u)] = u;
        if (d & 1u) update_c(d);
    } else {
        c_[d & 1u] = u;
    }
    ++depth_;
    if (depth_ < n_bits_) {
        calc_p(depth_);
        llr_at_[depth_] = p_[p_off_[stages_]];
    }
}

void ScState::rewind_one() {
    assert(depth_ > 0);
    --depth_;
    const Undo& un = undo_[depth_];
    std::memcpy(c_.data() + un.c_src, c_save_.data() + un.c_dst, un.c_len);
    if (un.p_len)
        std::memcpy(p_.data() + un.p_src, p_save_.data() + un.p_dst,
                    un.p_len * sizeof(double));
}

void ScState::rewind_to(std::size_t new_depth) {
    if (new_depth > depth_)
        throw std::invalid_argument("cannot rewind forward");
    while (depth_ > new_depth) rewind_one();
}

}  // namespace pacsim
