#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pacsim/code_config.hpp"
#include "pacsim/fano.hpp"
#include "pacsim/polar.hpp"

namespace pacsim {

/// Rate-1 causal convolution u = v * c over GF(2), zero initial state.
BitVec conv_encode(const BitVec& v, const GeneratorSequence& c);

/// PAC encoder: insert_data -> convolution -> polar transform.
BitVec pac_encode(const BitVec& data, const CodeConfig& cfg);

enum class DecodeKind { decoded, aborted };

struct DecodeOutcome {
    DecodeKind kind = DecodeKind::decoded;
    BitVec v_hat;                 // decoded data container; empty when aborted
    std::uint64_t visits = 0;     // Z: forward moves, repeats included
    double final_metric = 0.0;    // leaf path metric; meaningful when decoded
    bool backtracked = false;     // whether any backward move occurred
};

struct PathMetric {
    std::vector<double> per_level;
    double total = 0.0;
};

/// Fano tree model for one PAC codeword. Data levels branch on the precoder
/// input bit v with bias rho and best-first ordering (u = 0 first on exact
/// metric ties); frozen levels have the single branch v = 0. The engine bit
/// pushed into the SC state is the convolution output u.
class PacSearchTree {
public:
    PacSearchTree(const CodeConfig& cfg, const DecoderConfig& dcfg);

    void reset(std::span<const double> channel_llrs);

    std::size_t levels() const { return cfg_->block_length; }
    BranchSet branches(std::size_t depth) const;
    void push(std::size_t depth, const BranchCand& cand);
    void pop(std::size_t depth);

    const BitVec& v_path() const { return v_hat_; }
    const BitVec& u_path() const { return u_hat_; }

private:
    const CodeConfig* cfg_;
    double rho_;
    mutable ScState sc_;
    BitVec v_hat_, u_hat_;
};

/// Reusable Fano decoder for one PAC code; owns its scratch state, so one
/// instance serves one codeword at a time.
class PacDecoder {
public:
    PacDecoder(const CodeConfig& cfg, const DecoderConfig& dcfg);

    DecodeOutcome decode(std::span<const double> channel_llrs);

    PacSearchTree& tree() { return tree_; }
    const FanoParams& params() const { return params_; }

private:
    PacSearchTree tree_;
    FanoParams params_;
};

/// One-shot decode; channel_llrs.size() must equal cfg.block_length.
DecodeOutcome fano_decode(std::span<const double> channel_llrs,
                          const CodeConfig& cfg, const DecoderConfig& dcfg);

/// Recomputes the path metric of a given v-prefix from scratch (fresh SC
/// replay). Test oracle for the incremental decoder state.
PathMetric path_metric(std::span<const double> channel_llrs, const BitVec& v_prefix,
                       const CodeConfig& cfg, const DecoderConfig& dcfg);

}  // namespace pacsim
