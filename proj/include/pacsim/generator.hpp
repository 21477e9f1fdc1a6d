#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "pacsim/bits.hpp"

namespace pacsim {

/// Impulse response (c0,...,cm) of a rate-1 convolution. Requires c0 = cm = 1.
class GeneratorSequence {
public:
    explicit GeneratorSequence(BitVec taps);

    const BitVec& taps() const { return taps_; }
    std::size_t memory() const { return taps_.size() - 1; }

    std::string to_string() const;
    std::string to_octal() const;

    bool operator==(const GeneratorSequence&) const = default;

private:
    BitVec taps_;
};

/// Parses an octal string such as "133" into taps. Each digit expands to three
/// bits most-significant-first; leading zero bits are dropped, so "133" yields
/// 1011011 (memory 6). Throws std::invalid_argument on non-octal characters or
/// when the surviving bits violate c0 = cm = 1.
GeneratorSequence parse_octal_generator(std::string_view text);

}  // namespace pacsim
