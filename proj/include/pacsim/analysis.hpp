#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pacsim {

/// BI-AWGN cutoff rate R0 = 1 - log2(1 + e^{-s/2}), s = 10^{snr_db/10}.
double cutoff_rate(double snr_db);

/// Inverse of cutoff_rate: the SNR (dB) where R0 equals the given rate.
/// Requires 0 < rate < 1.
double snr_for_cutoff_rate(double rate);

/// Capacity (bits/use) and dispersion (bits^2/use) of BPSK over AWGN,
/// computed from the channel LLR statistic by Gauss-Hermite quadrature.
struct BiawgnMoments {
    double snr_db = 0.0;
    double capacity = 0.0;
    double dispersion = 0.0;
};

BiawgnMoments biawgn_moments(double snr_db, std::size_t quadrature_nodes = 64);

/// Normal approximation of the best achievable frame error rate at block
/// length N and dimension K, including the +0.5*log2(N) correction term.
double dispersion_fer(std::size_t block_length, std::size_t dimension, double snr_db,
                      std::size_t quadrature_nodes = 64);

/// Node-visit estimate 2L(K+C) of a CRC-aided list decoder.
std::uint64_t scl_visit_estimate(std::uint64_t list_size, std::uint64_t dimension,
                                 std::uint64_t crc_bits);

/// Gaussian tail Q(x) and its inverse (bisection to 1e-12).
double q_func(double x);
double q_func_inv(double p);

/// Gauss-Hermite rule for integrals of e^{-x^2} f(x): {nodes, weights}.
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(std::size_t n);

}  // namespace pacsim
