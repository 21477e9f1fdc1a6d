#include "pacsim/conv.hpp"

#include <cassert>
#include <stdexcept>

#include "pacsim/metric.hpp"

namespace pacsim {

ConvConfig make_conv_code(GeneratorSequence g1, GeneratorSequence g2,
                          std::size_t message_length) {
    if (g1 == g2)
        throw std::invalid_argument("the two generator sequences must differ");
    if (g1.memory() != g2.memory())
        throw std::invalid_argument("generator sequences must share one memory length");
    if (message_length == 0)
        throw std::invalid_argument("message length must be positive");
    return ConvConfig{std::move(g1), std::move(g2), message_length};
}

BitVec conv_encode_zt(const BitVec& data, const ConvConfig& cfg) {
    if (data.size() != cfg.message_length)
        throw std::invalid_argument("message length does not match the code");
    const std::size_t m = cfg.memory();
    const auto& t1 = cfg.g1.taps();
    const auto& t2 = cfg.g2.taps();
    BitVec out;
    out.reserve(cfg.output_length());
    BitVec window(data.size() + m, 0);  // data then zero tail
    std::copy(data.begin(), data.end(), window.begin());
    for (std::size_t i = 0; i < window.size(); ++i) {
        std::uint8_t x1 = 0, x2 = 0;
        const std::size_t t_max = std::min(m, i);
        for (std::size_t t = 0; t <= t_max; ++t) {
            x1 ^= t1[t] & window[i - t];
            x2 ^= t2[t] & window[i - t];
        }
        out.push_back(x1);
        out.push_back(x2);
    }
    return out;
}

ConvSearchTree::ConvSearchTree(const ConvConfig& cfg)
    : cfg_(&cfg), path_(cfg.message_length + cfg.memory(), 0) {}

void ConvSearchTree::reset(std::span<const double> channel_llrs) {
    if (channel_llrs.size() != cfg_->output_length())
        throw std::invalid_argument("channel LLR length does not match the code");
    llr_.assign(channel_llrs.begin(), channel_llrs.end());
}

BranchCand ConvSearchTree::make_branch(std::size_t depth, std::uint8_t input) const {
    const auto& t1 = cfg_->g1.taps();
    const auto& t2 = cfg_->g2.taps();
    std::uint8_t x1 = t1[0] & input;
    std::uint8_t x2 = t2[0] & input;
    const std::size_t t_max = std::min(cfg_->memory(), depth);
    for (std::size_t t = 1; t <= t_max; ++t) {
        x1 ^= t1[t] & path_[depth - t];
        x2 ^= t2[t] & path_[depth - t];
    }
    const auto [m1_0, m1_1] = bit_metric_pair(llr_[2 * depth]);
    const auto [m2_0, m2_1] = bit_metric_pair(llr_[2 * depth + 1]);
    // Two emitted bits, minus the per-branch bias of 1 bit.
    const double gamma = (x1 ? m1_1 : m1_0) + (x2 ? m2_1 : m2_0) - 1.0;
    return BranchCand{gamma, input, input};
}

BranchSet ConvSearchTree::branches(std::size_t depth) const {
    BranchSet out;
    if (depth < cfg_->message_length) {
        const BranchCand b0 = make_branch(depth, 0);
        const BranchCand b1 = make_branch(depth, 1);
        out.count = 2;
        if (b0.gamma >= b1.gamma) {
            out.cand[0] = b0;
            out.cand[1] = b1;
        } else {
            out.cand[0] = b1;
            out.cand[1] = b0;
        }
    } else {
        out.count = 1;  // termination: forced zero input
        out.cand[0] = make_branch(depth, 0);
    }
    return out;
}

void ConvSearchTree::push(std::size_t depth, const BranchCand& cand) {
    path_[depth] = cand.tree_bit;
}

void ConvSearchTree::pop(std::size_t /*depth*/) {}

ConvDecoder::ConvDecoder(const ConvConfig& cfg, const DecoderConfig& dcfg)
    : cfg_(cfg), tree_(cfg_), params_{dcfg.delta, dcfg.z_max} {
    if (!(dcfg.delta > 0.0))
        throw std::invalid_argument("threshold spacing delta must be > 0");
}

DecodeOutcome ConvDecoder::decode(std::span<const double> channel_llrs) {
    tree_.reset(channel_llrs);
    const FanoResult res = fano_search(tree_, params_);
    DecodeOutcome out;
    out.visits = res.visits;
    out.backtracked = res.back_moves > 0;
    if (res.completed) {
        out.kind = DecodeKind::decoded;
        const BitVec& full = tree_.input_path();
        out.v_hat.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(cfg_.message_length));
        out.final_metric = res.final_metric;
    } else {
        out.kind = DecodeKind::aborted;
    }
    return out;
}

DecodeOutcome conv_fano_decode(std::span<const double> channel_llrs, const ConvConfig& cfg,
                               const DecoderConfig& dcfg) {
    ConvDecoder dec(cfg, dcfg);
    return dec.decode(channel_llrs);
}

}  // namespace pacsim
