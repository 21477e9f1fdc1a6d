#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pacsim/bits.hpp"

namespace pacsim {

/// One SNR operating point, snr_db = 10*log10(Es/sigma^2) with unit symbol
/// energy and sigma^2 the per-dimension noise variance.
struct SnrPoint {
    double snr_db = 0.0;
    double sigma = 1.0;

    double sigma2() const { return sigma * sigma; }
};

double snr_to_sigma(double snr_db);
SnrPoint make_snr_point(double snr_db);

/// BPSK: bit 0 -> +1, bit 1 -> -1.
std::vector<double> bpsk_modulate(const BitVec& bits);

/// 64-bit mix used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t snr_index,
                          std::uint64_t trial_index);

/// Deterministic Gaussian source: mt19937_64 plus an explicit Box-Muller
/// transform, so the sample stream depends only on the seed (the standard
/// pins the mt19937_64 sequence; no library-defined distributions involved).
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    double normal();
    std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() & 1u); }
    void fill_bits(BitVec& out);

private:
    double uniform01();  // in (0, 1]
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// y_i = s_i + n_i with n_i iid N(0, sigma^2).
std::vector<double> awgn_sample(std::span<const double> signal, const SnrPoint& point,
                                GaussianRng& rng);

/// LLR of one BPSK observation: 2y/sigma^2 (natural log, positive favours 0).
double channel_llr(double y, const SnrPoint& point);
std::vector<double> channel_llrs(std::span<const double> y, const SnrPoint& point);

}  // namespace pacsim
