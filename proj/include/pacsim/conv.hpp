#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pacsim/code_config.hpp"
#include "pacsim/fano.hpp"
#include "pacsim/generator.hpp"
#include "pacsim/pac.hpp"

namespace pacsim {

/// Terminated rate-1/2 convolutional code with two generator sequences.
struct ConvConfig {
    GeneratorSequence g1;
    GeneratorSequence g2;
    std::size_t message_length = 0;  // K

    std::size_t memory() const { return g1.memory(); }
    std::size_t output_length() const { return 2 * (message_length + memory()); }
    double rate() const {
        return static_cast<double>(message_length) / static_cast<double>(output_length() / 2);
    }
    /// Effective code rate K / (2(K+m)).
    double effective_rate() const {
        return static_cast<double>(message_length) / static_cast<double>(output_length());
    }
};

ConvConfig make_conv_code(GeneratorSequence g1, GeneratorSequence g2,
                          std::size_t message_length);

/// Zero-state start, m zero tail bits appended; per input bit the g1 output
/// precedes the g2 output. Output length 2(K+m).
BitVec conv_encode_zt(const BitVec& data, const ConvConfig& cfg);

/// Fano tree model over the convolutional code tree: K binary input levels
/// followed by m single-branch termination levels. Each branch emits two
/// bits; its metric is the two-bit symbol metric minus the per-branch bias
/// of 1 bit (branch bit count times the nominal rate 1/2).
class ConvSearchTree {
public:
    explicit ConvSearchTree(const ConvConfig& cfg);

    void reset(std::span<const double> channel_llrs);

    std::size_t levels() const { return cfg_->message_length + cfg_->memory(); }
    BranchSet branches(std::size_t depth) const;
    void push(std::size_t depth, const BranchCand& cand);
    void pop(std::size_t depth);

    const BitVec& input_path() const { return path_; }

private:
    BranchCand make_branch(std::size_t depth, std::uint8_t input) const;

    const ConvConfig* cfg_;
    std::vector<double> llr_;
    BitVec path_;  // K+m input bits
};

class ConvDecoder {
public:
    ConvDecoder(const ConvConfig& cfg, const DecoderConfig& dcfg);

    /// v_hat of the outcome carries the K message bits (tail dropped).
    DecodeOutcome decode(std::span<const double> channel_llrs);

    ConvSearchTree& tree() { return tree_; }

private:
    const ConvConfig cfg_;
    ConvSearchTree tree_;
    FanoParams params_;
};

/// One-shot decode; channel_llrs.size() must equal cfg.output_length().
/// Only delta and z_max of dcfg apply (the branch bias is fixed at 1 bit).
DecodeOutcome conv_fano_decode(std::span<const double> channel_llrs,
                               const ConvConfig& cfg, const DecoderConfig& dcfg);

struct ConvConfigFile {
    ConvConfig code;
    DecoderConfig decoder;
};

/// Loads {"conv": {"g1_octal":"133","g2_octal":"171","k":64},
///        "delta":2.0, "z_max":...} ("delta"/"z_max" optional).
ConvConfigFile load_conv_config(const std::string& path);
ConvConfigFile parse_conv_config(const std::string& json_text);

}  // namespace pacsim
