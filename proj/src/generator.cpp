#include "pacsim/generator.hpp"

#include <algorithm>
#include <stdexcept>

namespace pacsim {

GeneratorSequence::GeneratorSequence(BitVec taps) : taps_(std::move(taps)) {
    if (taps_.empty())
        throw std::invalid_argument("generator sequence must have at least one tap");
    if (std::any_of(taps_.begin(), taps_.end(), [](std::uint8_t b) { return b > 1; }))
        throw std::invalid_argument("generator taps must be 0/1");
    if (taps_.front() != 1)
        throw std::invalid_argument("generator sequence requires c0 = 1");
    if (taps_.back() != 1)
        throw std::invalid_argument("generator sequence requires cm = 1");
}

std::string GeneratorSequence::to_string() const {
    std::string s;
    s.reserve(taps_.size());
    for (std::uint8_t b : taps_) s.push_back(b ? '1' : '0');
    return s;
}

std::string GeneratorSequence::to_octal() const {
    const std::size_t pad = (3 - taps_.size() % 3) % 3;
    std::string s;
    int digit = 0;
    std::size_t nbits = pad;
    for (std::uint8_t b : taps_) {
        digit = (digit << 1) | b;
        if (++nbits == 3) {
            s.push_back(static_cast<char>('0' + digit));
            digit = 0;
            nbits = 0;
        }
    }
    return s;
}

GeneratorSequence parse_octal_generator(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("empty octal generator string");
    BitVec bits;
    bits.reserve(text.size() * 3);
    for (char ch : text) {
        if (ch < '0' || ch > '7')
            throw std::invalid_argument(std::string("invalid octal digit '") + ch +
                                        "' in generator string");
        const int d = ch - '0';
        bits.push_back(static_cast<std::uint8_t>((d >> 2) & 1));
        bits.push_back(static_cast<std::uint8_t>((d >> 1) & 1));
        bits.push_back(static_cast<std::uint8_t>(d & 1));
    }
    std::size_t first_one = 0;
    while (first_one < bits.size() && bits[first_one] == 0) ++first_one;
    if (first_one == bits.size())
        throw std::invalid_argument("generator string " + std::string(text) +
                                    " expands to all-zero taps (needs c0 = 1)");
    bits.erase(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(first_one));
    if (bits.back() != 1)
        throw std::invalid_argument("generator string " + std::string(text) +
                                    " violates cm = 1 (even octal value)");
    return GeneratorSequence(std::move(bits));
}

}  // namespace pacsim
