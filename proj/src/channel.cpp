#include "pacsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace pacsim {

double snr_to_sigma(double snr_db) {
    return std::pow(10.0, -snr_db / 20.0);
}

SnrPoint make_snr_point(double snr_db) {
    return SnrPoint{snr_db, snr_to_sigma(snr_db)};
}

std::vector<double> bpsk_modulate(const BitVec& bits) {
    std::vector<double> s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = 1.0 - 2.0 * bits[i];
    return s;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t snr_index,
                          std::uint64_t trial_index) {
    return splitmix64(splitmix64(splitmix64(master_seed) ^ snr_index) ^ trial_index);
}

double GaussianRng::uniform01() {
    // 53 uniform bits mapped into (0, 1].
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

void GaussianRng::fill_bits(BitVec& out) {
    for (auto& b : out) b = bit();
}

std::vector<double> awgn_sample(std::span<const double> signal, const SnrPoint& point,
                                GaussianRng& rng) {
    std::vector<double> y(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) y[i] = signal[i] + point.sigma * rng.normal();
    return y;
}

double channel_llr(double y, const SnrPoint& point) {
    return 2.0 * y / point.sigma2();
}

std::vector<double> channel_llrs(std::span<const double> y, const SnrPoint& point) {
    const double scale = 2.0 / point.sigma2();
    std::vector<double> llr(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) llr[i] = scale * y[i];
    return llr;
}

}  // namespace pacsim
