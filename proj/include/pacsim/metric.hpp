#pragma once

#include <cmath>
#include <utility>

namespace pacsim {

/// log2(1 + e^{-t}), stable for any double.
inline double log2_1p_exp_neg(double t) {
    constexpr double kInvLn2 = 1.4426950408889634;
    const double s = -t;
    const double hi = s > 0.0 ? s : 0.0;
    return (hi + std::log1p(std::exp(-std::abs(s)))) * kInvLn2;
}

/// Unbiased Fano bit metric in bits: 1 + log2 P(bit | observation) for a bit
/// with log-likelihood ratio `llr` (natural log, positive favours 0).
inline double bit_metric(double llr, int bit) {
    return 1.0 - log2_1p_exp_neg(bit == 0 ? llr : -llr);
}

/// Both bit metrics from one softplus evaluation: {metric(bit=0), metric(bit=1)}.
inline std::pair<double, double> bit_metric_pair(double llr) {
    constexpr double kInvLn2 = 1.4426950408889634;
    const double a = std::abs(llr);
    const double sp = std::log1p(std::exp(-a)) * kInvLn2;  // log2(1+e^{-|llr|})
    const double good = 1.0 - sp;
    const double bad = 1.0 - (a * kInvLn2 + sp);
    return llr >= 0.0 ? std::make_pair(good, bad) : std::make_pair(bad, good);
}

/// Biased branch metric: bit_metric minus the per-level bias b_j.
inline double branch_metric(double llr, int bit, double bias) {
    return bit_metric(llr, bit) - bias;
}

}  // namespace pacsim
