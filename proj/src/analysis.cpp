#include "pacsim/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "pacsim/metric.hpp"

namespace pacsim {

double cutoff_rate(double snr_db) {
    const double s = std::pow(10.0, snr_db / 10.0);
    return 1.0 - log2_1p_exp_neg(s / 2.0);
}

double snr_for_cutoff_rate(double rate) {
    if (!(rate > 0.0) || !(rate < 1.0))
        throw std::invalid_argument("rate must lie in (0, 1)");
    const double s = -2.0 * std::log(std::exp2(1.0 - rate) - 1.0);
    return 10.0 * std::log10(s);
}

std::pair<std::vector<double>, std::vector<double>> gauss_hermite(std::size_t n) {
    if (n < 2) throw std::invalid_argument("need at least two quadrature nodes");
    // Newton iteration on the orthonormal Hermite recurrence; nodes of H_n
    // for the weight e^{-x^2}. Only the upper half is computed, the rest
    // follows by symmetry.
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    std::vector<double> x(n), w(n);
    const std::size_t half = (n + 1) / 2;
    double z = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-14 * std::max(1.0, std::abs(z))) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {std::move(x), std::move(w)};
}

BiawgnMoments biawgn_moments(double snr_db, std::size_t quadrature_nodes) {
    const double sigma2 = std::pow(10.0, -snr_db / 10.0);
    const double mean = 2.0 / sigma2;       // LLR mean under bit 0
    const double var = 4.0 / sigma2;        // LLR variance
    const auto [nodes, weights] = gauss_hermite(quadrature_nodes);
    const double scale = std::sqrt(2.0 * var);
    const double inv_sqrt_pi = 0.5641895835477563;
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double lam = mean + scale * nodes[i];
        const double h = 1.0 - log2_1p_exp_neg(lam);  // log2(2 / (1 + e^{-lam}))
        e1 += weights[i] * h;
        e2 += weights[i] * h * h;
    }
    e1 *= inv_sqrt_pi;
    e2 *= inv_sqrt_pi;
    if (!std::isfinite(e1) || !std::isfinite(e2))
        throw std::runtime_error("quadrature did not converge");
    return BiawgnMoments{snr_db, e1, std::max(0.0, e2 - e1 * e1)};
}

double dispersion_fer(std::size_t block_length, std::size_t dimension, double snr_db,
                      std::size_t quadrature_nodes) {
    if (block_length < 1 || dimension < 1 || dimension > block_length)
        throw std::invalid_argument("need 1 <= K <= N");
    const BiawgnMoments m = biawgn_moments(snr_db, quadrature_nodes);
    const double n = static_cast<double>(block_length);
    const double num = n * m.capacity - static_cast<double>(dimension) +
                       0.5 * std::log2(n);
    const double den = std::sqrt(n * m.dispersion);
    if (den == 0.0) return num > 0.0 ? 0.0 : (num < 0.0 ? 1.0 : 0.5);
    return q_func(num / den);
}

std::uint64_t scl_visit_estimate(std::uint64_t list_size, std::uint64_t dimension,
                                 std::uint64_t crc_bits) {
    if (list_size == 0 || dimension == 0)
        throw std::invalid_argument("list size and dimension must be positive");
    return 2 * list_size * (dimension + crc_bits);
}

double q_func(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double q_func_inv(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("probability must lie in (0, 1)");
    double lo = -40.0, hi = 40.0;
    // Q is decreasing: Q(lo) ~ 1, Q(hi) ~ 0.
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (q_func(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace pacsim
