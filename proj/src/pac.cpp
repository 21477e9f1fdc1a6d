#include "pacsim/pac.hpp"

#include <cassert>
#include <stdexcept>

#include "pacsim/metric.hpp"

namespace pacsim {

BitVec conv_encode(const BitVec& v, const GeneratorSequence& c) {
    const auto& taps = c.taps();
    const std::size_t m = c.memory();
    BitVec u(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::uint8_t acc = 0;
        const std::size_t t_max = std::min(m, i);
        for (std::size_t t = 0; t <= t_max; ++t) acc ^= taps[t] & v[i - t];
        u[i] = acc;
    }
    return u;
}

BitVec pac_encode(const BitVec& data, const CodeConfig& cfg) {
    BitVec u = conv_encode(insert_data(data, cfg.profile), cfg.generator);
    polar_transform_inplace(u);
    return u;
}

PacSearchTree::PacSearchTree(const CodeConfig& cfg, const DecoderConfig& dcfg)
    : cfg_(&cfg),
      rho_(dcfg.rho),
      sc_(cfg.block_length),
      v_hat_(cfg.block_length, 0),
      u_hat_(cfg.block_length, 0) {}

void PacSearchTree::reset(std::span<const double> channel_llrs) {
    sc_.reset(channel_llrs);
}

BranchSet PacSearchTree::branches(std::size_t depth) const {
    assert(depth == sc_.depth());
    const double llr = sc_.next_bit_llr();
    const auto& taps = cfg_->generator.taps();
    std::uint8_t feed = 0;
    const std::size_t t_max = std::min(cfg_->generator.memory(), depth);
    for (std::size_t t = 1; t <= t_max; ++t) feed ^= taps[t] & v_hat_[depth - t];

    BranchSet out;
    const auto [m_u0, m_u1] = bit_metric_pair(llr);
    if (cfg_->profile.is_data(depth)) {
        // v = 0 keeps u = feed; v = 1 flips it. Order best-first, u = 0
        // ahead on an exact tie.
        const BranchCand on_u0{m_u0 - rho_, feed, 0};
        const BranchCand on_u1{m_u1 - rho_, static_cast<std::uint8_t>(feed ^ 1u), 1};
        out.count = 2;
        if (m_u0 >= m_u1) {
            out.cand[0] = on_u0;
            out.cand[1] = on_u1;
        } else {
            out.cand[0] = on_u1;
            out.cand[1] = on_u0;
        }
    } else {
        out.count = 1;
        out.cand[0] = BranchCand{feed ? m_u1 : m_u0, 0, feed};
    }
    return out;
}

void PacSearchTree::push(std::size_t depth, const BranchCand& cand) {
    v_hat_[depth] = cand.tree_bit;
    u_hat_[depth] = cand.engine_bit;
    sc_.commit_bit(cand.engine_bit);
}

void PacSearchTree::pop(std::size_t /*depth*/) {
    sc_.rewind_one();
}

namespace {

DecodeOutcome to_outcome(const FanoResult& res, const BitVec& v_path) {
    DecodeOutcome out;
    out.visits = res.visits;
    out.backtracked = res.back_moves > 0;
    if (res.completed) {
        out.kind = DecodeKind::decoded;
        out.v_hat = v_path;
        out.final_metric = res.final_metric;
    } else {
        out.kind = DecodeKind::aborted;
    }
    return out;
}

}  // namespace

PacDecoder::PacDecoder(const CodeConfig& cfg, const DecoderConfig& dcfg)
    : tree_(cfg, dcfg), params_{dcfg.delta, dcfg.z_max} {
    if (!(dcfg.delta > 0.0))
        throw std::invalid_argument("threshold spacing delta must be > 0");
}

DecodeOutcome PacDecoder::decode(std::span<const double> channel_llrs) {
    tree_.reset(channel_llrs);
    const FanoResult res = fano_search(tree_, params_);
    return to_outcome(res, tree_.v_path());
}

DecodeOutcome fano_decode(std::span<const double> channel_llrs, const CodeConfig& cfg,
                          const DecoderConfig& dcfg) {
    PacDecoder dec(cfg, dcfg);
    return dec.decode(channel_llrs);
}

PathMetric path_metric(std::span<const double> channel_llrs, const BitVec& v_prefix,
                       const CodeConfig& cfg, const DecoderConfig& dcfg) {
    if (v_prefix.size() > cfg.block_length)
        throw std::invalid_argument("prefix longer than the block");
    ScState sc(channel_llrs);
    const BitVec u_prefix = conv_encode(v_prefix, cfg.generator);
    PathMetric pm;
    pm.per_level.reserve(v_prefix.size());
    for (std::size_t j = 0; j < v_prefix.size(); ++j) {
        const double bias = cfg.profile.is_data(j) ? dcfg.rho : 0.0;
        const double gamma = branch_metric(sc.next_bit_llr(), u_prefix[j], bias);
        pm.per_level.push_back(gamma);
        pm.total += gamma;
        sc.commit_bit(u_prefix[j]);
    }
    return pm;
}

}  // namespace pacsim
