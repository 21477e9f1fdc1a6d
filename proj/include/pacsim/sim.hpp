#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pacsim/code_config.hpp"
#include "pacsim/conv.hpp"

namespace pacsim {

enum class TrialOutcome { success, frame_error, aborted };

struct TrialResult {
    TrialOutcome outcome = TrialOutcome::success;
    std::uint64_t z = 0;
};

/// Visit-count histogram: Z <= 2^10, then (2^b, 2^{b+1}] for b = 10..17,
/// then Z > 2^18.
class ZHistogram {
public:
    static constexpr std::size_t kBuckets = 10;

    void add(std::uint64_t z) { ++counts_[bucket_of(z)]; ++total_; }
    void merge(const ZHistogram& other);

    std::uint64_t count(std::size_t i) const { return counts_[i]; }
    std::uint64_t total() const { return total_; }
    double pct(std::size_t i) const;

    static std::size_t bucket_of(std::uint64_t z);
    static std::string label(std::size_t i);
    static ZHistogram from_counts(std::span<const std::uint64_t> counts);

private:
    std::array<std::uint64_t, kBuckets> counts_{};
    std::uint64_t total_ = 0;
};

/// Builds the histogram from per-trial results; success_only reproduces the
/// filtering that keeps only correct decodings.
ZHistogram z_histogram(std::span<const TrialResult> results, bool success_only);

/// Aggregates of one SNR point.
struct SnrStats {
    double snr_db = 0.0;
    double sigma = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t frame_errors = 0;  // wrong decodings plus aborts
    std::uint64_t aborts = 0;
    std::uint64_t successes = 0;
    std::uint64_t sum_z = 0;
    std::uint64_t sum_z_success = 0;
    double fer = 0.0;
    double anv = 0.0;           // mean Z over all trials
    double anv_success = 0.0;   // mean Z over correct decodings
    ZHistogram hist_all;
    ZHistogram hist_success;
};

struct ZmaxSweepRow {
    double snr_db = 0.0;
    std::uint64_t z_max = 0;
    double fer = 0.0;
};

/// Monte Carlo campaign plan. Trials are dispatched in fixed-size blocks and
/// each trial draws its own RNG stream from (master_seed, snr_index,
/// trial_index), so results are identical for any worker count. The stopping
/// rule applies per SNR point: stop once min_errors frame errors have been
/// seen and min_trials trials run, or at max_trials.
struct CampaignConfig {
    std::vector<double> snr_db;
    std::uint64_t master_seed = 1;
    std::uint64_t min_trials = 10'000;
    std::uint64_t min_errors = 100;
    std::uint64_t max_trials = 10'000'000;
    unsigned workers = 0;               // 0: PACSIM_WORKERS env or hardware
    bool success_only_hist = false;     // which histogram emit_* writes
    std::vector<std::uint64_t> zmax_sweep;  // needs an unbounded decoder
};

std::vector<SnrStats> run_pac_campaign(const CodeConfig& code, const DecoderConfig& dec,
                                       const CampaignConfig& campaign,
                                       std::vector<ZmaxSweepRow>* sweep_out = nullptr);

std::vector<SnrStats> run_conv_campaign(const ConvConfig& code, const DecoderConfig& dec,
                                        const CampaignConfig& campaign,
                                        std::vector<ZmaxSweepRow>* sweep_out = nullptr);

/// FER under each visit cap, post-processed from one unbounded trial stream:
/// a trial is an error under cap z iff it erred or its Z exceeded z.
std::vector<ZmaxSweepRow> fer_vs_zmax_sweep(const CodeConfig& code, const DecoderConfig& dec,
                                            const CampaignConfig& campaign, double snr_db,
                                            std::span<const std::uint64_t> caps);

/// Key=value lines recorded in every output file for reproducibility.
struct CampaignMeta {
    std::vector<std::pair<std::string, std::string>> entries;

    void set(std::string key, std::string value);
};

CampaignMeta describe_pac_campaign(const CodeConfig& code, const DecoderConfig& dec,
                                   const CampaignConfig& campaign);
CampaignMeta describe_conv_campaign(const ConvConfig& code, const DecoderConfig& dec,
                                    const CampaignConfig& campaign);

/// CSV: '#'-prefixed meta header, then snr_db,trials,errors,fer,anv rows.
void write_campaign_csv(std::ostream& out, std::span<const SnrStats> stats,
                        const CampaignMeta& meta);

/// JSON with the full per-point statistics and labelled Z-histogram buckets
/// (the one selected by success_only_hist). Percentages carry 4 decimals.
void write_campaign_json(std::ostream& out, std::span<const SnrStats> stats,
                         const CampaignMeta& meta, bool success_only_hist);

/// Reads back what write_campaign_json wrote.
std::vector<SnrStats> read_campaign_json(std::istream& in);

void write_zmax_sweep_csv(std::ostream& out, std::span<const ZmaxSweepRow> rows,
                          const CampaignMeta& meta);

/// File-writing wrappers; throw std::runtime_error on I/O failure.
void emit_results_csv(const std::string& path, std::span<const SnrStats> stats,
                      const CampaignMeta& meta);
void emit_results_json(const std::string& path, std::span<const SnrStats> stats,
                       const CampaignMeta& meta, bool success_only_hist);

unsigned resolve_worker_count(unsigned requested);

}  // namespace pacsim
