#include "pacsim/code_config.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "pacsim/conv.hpp"

namespace pacsim {

CodeConfig make_pac_code(std::size_t block_length, std::size_t dimension,
                         GeneratorSequence generator) {
    if (block_length == 0 || !std::has_single_bit(block_length))
        throw std::invalid_argument("block length must be a power of two");
    if (dimension < 1 || dimension > block_length)
        throw std::invalid_argument("dimension must satisfy 1 <= K <= N");
    CodeConfig cfg{
        block_length,
        dimension,
        static_cast<std::size_t>(std::bit_width(block_length) - 1),
        static_cast<double>(dimension) / static_cast<double>(block_length),
        std::move(generator),
        rm_profile(block_length, dimension),
    };
    return cfg;
}

std::optional<DecoderConfig> default_decoder_params(std::size_t block_length,
                                                    std::size_t dimension) {
    if (block_length != 128) return std::nullopt;
    switch (dimension) {
        case 29: return DecoderConfig{1.40, 2.0, std::nullopt};
        case 64: return DecoderConfig{1.35, 2.0, std::nullopt};
        case 99: return DecoderConfig{1.14, 2.0, std::nullopt};
        default: return std::nullopt;
    }
}

namespace {

nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
    }
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

DecoderConfig decoder_from_json(const nlohmann::json& j, std::size_t block_length,
                                std::size_t dimension, bool rho_applies,
                                double default_delta) {
    DecoderConfig dec;
    dec.delta = default_delta;
    if (auto def = default_decoder_params(block_length, dimension); def && rho_applies)
        dec = *def;
    if (j.contains("rho")) dec.rho = j.at("rho").get<double>();
    if (j.contains("delta")) dec.delta = j.at("delta").get<double>();
    if (dec.rho < 0.0) throw std::invalid_argument("rho must be >= 0");
    if (!(dec.delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    if (j.contains("z_max") && !j.at("z_max").is_null()) {
        const auto z = j.at("z_max").get<std::int64_t>();
        if (z <= 0) throw std::invalid_argument("z_max must be positive");
        dec.z_max = static_cast<std::uint64_t>(z);
    }
    return dec;
}

PacConfigFile pac_from_json(const nlohmann::json& j) {
    for (const char* key : {"n", "k", "c_octal"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("config missing field \"") + key + "\"");
    const auto n = j.at("n").get<std::size_t>();
    const auto k = j.at("k").get<std::size_t>();
    if (j.contains("profile") && j.at("profile").get<std::string>() != "rm")
        throw std::invalid_argument("only the \"rm\" profile is supported");
    CodeConfig code = make_pac_code(n, k, parse_octal_generator(j.at("c_octal").get<std::string>()));
    DecoderConfig dec = decoder_from_json(j, n, k, true, 2.0);
    if (!j.contains("rho") && !default_decoder_params(n, k))
        throw std::invalid_argument("no default rho for this (n,k); set \"rho\" explicitly");
    if (dec.z_max && *dec.z_max < n)
        throw std::invalid_argument("z_max must be at least the block length");
    return {std::move(code), dec};
}

ConvConfigFile conv_from_json(const nlohmann::json& j) {
    if (!j.contains("conv"))
        throw std::invalid_argument("config missing \"conv\" section");
    const auto& c = j.at("conv");
    for (const char* key : {"g1_octal", "g2_octal", "k"})
        if (!c.contains(key))
            throw std::invalid_argument(std::string("conv config missing field \"") + key + "\"");
    ConvConfig code = make_conv_code(parse_octal_generator(c.at("g1_octal").get<std::string>()),
                                     parse_octal_generator(c.at("g2_octal").get<std::string>()),
                                     c.at("k").get<std::size_t>());
    // Default spacing of 1 bit matches the conv branch-metric granularity.
    DecoderConfig dec = decoder_from_json(j, 0, 0, false, 1.0);
    dec.rho = 0.0;  // conv branches carry the fixed 1-bit bias instead
    if (dec.z_max && *dec.z_max < code.output_length() / 2)
        throw std::invalid_argument("z_max must be at least the tree depth");
    return {std::move(code), dec};
}

}  // namespace

PacConfigFile load_pac_config(const std::string& path) {
    return pac_from_json(load_json_file(path));
}

PacConfigFile parse_pac_config(const std::string& json_text) {
    return pac_from_json(parse_json_text(json_text));
}

ConvConfigFile load_conv_config(const std::string& path) {
    return conv_from_json(load_json_file(path));
}

ConvConfigFile parse_conv_config(const std::string& json_text) {
    return conv_from_json(parse_json_text(json_text));
}

}  // namespace pacsim
