#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pacsim/generator.hpp"
#include "pacsim/rate_profile.hpp"

namespace pacsim {

/// One PAC code: (N, K), the generator sequence and the rate profile.
/// Immutable after construction; safe to share across threads.
struct CodeConfig {
    std::size_t block_length = 0;  // N, power of two
    std::size_t dimension = 0;     // K
    std::size_t stages = 0;        // log2(N)
    double rate = 0.0;             // K/N
    GeneratorSequence generator;
    RateProfile profile;
};

/// Builds a PAC code with the RM rate profile. Validates N power of two and
/// 1 <= K <= N.
CodeConfig make_pac_code(std::size_t block_length, std::size_t dimension,
                         GeneratorSequence generator);

/// Fano decoder parameters: metric bias per data bit (bits), threshold
/// spacing (bits), optional visit cap.
struct DecoderConfig {
    double rho = 0.0;
    double delta = 2.0;
    std::optional<std::uint64_t> z_max;
};

/// Published (rho, delta) operating points for N=128 codes, keyed by K.
std::optional<DecoderConfig> default_decoder_params(std::size_t block_length,
                                                    std::size_t dimension);

struct PacConfigFile {
    CodeConfig code;
    DecoderConfig decoder;
};

/// Loads a JSON code configuration:
///   {"n":128, "k":64, "c_octal":"133", "rho":1.35, "delta":2.0,
///    "z_max":16384, "profile":"rm"}
/// "z_max" is optional (must be >= n when present); "rho"/"delta" fall back
/// to the built-in defaults when the (n,k) pair has one.
PacConfigFile load_pac_config(const std::string& path);
PacConfigFile parse_pac_config(const std::string& json_text);

}  // namespace pacsim
