#include "pacsim/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "pacsim/channel.hpp"
#include "pacsim/pac.hpp"

namespace pacsim {

void ZHistogram::merge(const ZHistogram& other) {
    for (std::size_t i = 0; i < kBuckets; ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
}

double ZHistogram::pct(std::size_t i) const {
    return total_ == 0 ? 0.0 : 100.0 * static_cast<double>(counts_[i]) / static_cast<double>(total_);
}

std::size_t ZHistogram::bucket_of(std::uint64_t z) {
    if (z <= (1ull << 10)) return 0;
    if (z > (1ull << 18)) return kBuckets - 1;
    // z in (2^b, 2^{b+1}] lands in bucket b - 9.
    return static_cast<std::size_t>(std::bit_width(z - 1)) - 10;
}

std::string ZHistogram::label(std::size_t i) {
    if (i == 0) return "Z<=2^10";
    if (i == kBuckets - 1) return "Z>2^18";
    return "2^" + std::to_string(9 + i) + "<Z<=2^" + std::to_string(10 + i);
}

ZHistogram ZHistogram::from_counts(std::span<const std::uint64_t> counts) {
    if (counts.size() != kBuckets)
        throw std::invalid_argument("histogram needs exactly 10 bucket counts");
    ZHistogram h;
    for (std::size_t i = 0; i < kBuckets; ++i) {
        h.counts_[i] = counts[i];
        h.total_ += counts[i];
    }
    return h;
}

ZHistogram z_histogram(std::span<const TrialResult> results, bool success_only) {
    ZHistogram h;
    for (const TrialResult& r : results) {
        if (success_only && r.outcome != TrialOutcome::success) continue;
        h.add(r.z);
    }
    return h;
}

unsigned resolve_worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PACSIM_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

constexpr std::uint64_t kBlockTrials = 4096;

struct Partial {
    std::uint64_t trials = 0;
    std::uint64_t wrong = 0;
    std::uint64_t aborts = 0;
    std::uint64_t successes = 0;
    std::uint64_t sum_z = 0;
    std::uint64_t sum_z_success = 0;
    ZHistogram hist_all;
    ZHistogram hist_success;
    std::vector<std::uint64_t> cap_errors;

    explicit Partial(std::size_t n_caps) : cap_errors(n_caps, 0) {}

    void account(const TrialResult& r, std::span<const std::uint64_t> caps) {
        ++trials;
        sum_z += r.z;
        hist_all.add(r.z);
        switch (r.outcome) {
            case TrialOutcome::success:
                ++successes;
                sum_z_success += r.z;
                hist_success.add(r.z);
                break;
            case TrialOutcome::frame_error: ++wrong; break;
            case TrialOutcome::aborted: ++aborts; break;
        }
        for (std::size_t i = 0; i < caps.size(); ++i)
            if (r.outcome != TrialOutcome::success || r.z > caps[i]) ++cap_errors[i];
    }

    void merge(const Partial& o) {
        trials += o.trials;
        wrong += o.wrong;
        aborts += o.aborts;
        successes += o.successes;
        sum_z += o.sum_z;
        sum_z_success += o.sum_z_success;
        hist_all.merge(o.hist_all);
        hist_success.merge(o.hist_success);
        for (std::size_t i = 0; i < cap_errors.size(); ++i) cap_errors[i] += o.cap_errors[i];
    }
};

void validate_campaign(const CampaignConfig& c, bool decoder_bounded) {
    if (c.snr_db.empty()) throw std::invalid_argument("campaign needs at least one SNR point");
    if (c.min_trials > c.max_trials)
        throw std::invalid_argument("min_trials must not exceed max_trials");
    if (c.max_trials == 0) throw std::invalid_argument("max_trials must be positive");
    if (!c.zmax_sweep.empty() && decoder_bounded)
        throw std::invalid_argument("z_max sweep requires an unbounded decoder");
}

// Per-worker trial executor: owns a decoder and scratch buffers.
template <class State>
std::vector<SnrStats> run_campaign_impl(const CampaignConfig& campaign,
                                        const std::function<std::unique_ptr<State>()>& make_state,
                                        std::vector<ZmaxSweepRow>* sweep_out) {
    const unsigned workers = resolve_worker_count(campaign.workers);
    std::span<const std::uint64_t> caps(campaign.zmax_sweep);

    std::vector<std::unique_ptr<State>> states;
    states.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) states.push_back(make_state());

    std::vector<SnrStats> all_stats;
    all_stats.reserve(campaign.snr_db.size());
    if (sweep_out) sweep_out->clear();

    for (std::size_t snr_idx = 0; snr_idx < campaign.snr_db.size(); ++snr_idx) {
        const SnrPoint point = make_snr_point(campaign.snr_db[snr_idx]);
        Partial total(caps.size());
        std::uint64_t done = 0;
        for (;;) {
            const std::uint64_t block = std::min(kBlockTrials, campaign.max_trials - done);
            if (block == 0) break;
            std::vector<Partial> parts(workers, Partial(caps.size()));
            {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                for (unsigned w = 0; w < workers; ++w) {
                    pool.emplace_back([&, w] {
                        State& st = *states[w];
                        Partial& p = parts[w];
                        for (std::uint64_t t = w; t < block; t += workers) {
                            const std::uint64_t trial = done + t;
                            GaussianRng rng(
                                derive_seed(campaign.master_seed, snr_idx, trial));
                            p.account(st.run(point, rng), caps);
                        }
                    });
                }
                for (auto& th : pool) th.join();
            }
            for (const Partial& p : parts) total.merge(p);
            done += block;
            const std::uint64_t errors = total.wrong + total.aborts;
            if (done >= campaign.max_trials) break;
            if (errors >= campaign.min_errors && done >= campaign.min_trials) break;
        }

        SnrStats s;
        s.snr_db = point.snr_db;
        s.sigma = point.sigma;
        s.trials = total.trials;
        s.frame_errors = total.wrong + total.aborts;
        s.aborts = total.aborts;
        s.successes = total.successes;
        s.sum_z = total.sum_z;
        s.sum_z_success = total.sum_z_success;
        s.fer = total.trials ? static_cast<double>(s.frame_errors) / static_cast<double>(total.trials) : 0.0;
        s.anv = total.trials ? static_cast<double>(total.sum_z) / static_cast<double>(total.trials) : 0.0;
        s.anv_success = total.successes
                            ? static_cast<double>(total.sum_z_success) / static_cast<double>(total.successes)
                            : 0.0;
        s.hist_all = total.hist_all;
        s.hist_success = total.hist_success;
        all_stats.push_back(std::move(s));

        if (sweep_out) {
            for (std::size_t i = 0; i < caps.size(); ++i) {
                ZmaxSweepRow row;
                row.snr_db = point.snr_db;
                row.z_max = caps[i];
                row.fer = total.trials
                              ? static_cast<double>(total.cap_errors[i]) / static_cast<double>(total.trials)
                              : 0.0;
                sweep_out->push_back(row);
            }
        }
    }
    return all_stats;
}

struct PacTrialState {
    const CodeConfig& code;
    PacDecoder decoder;
    BitVec data;

    PacTrialState(const CodeConfig& c, const DecoderConfig& d)
        : code(c), decoder(c, d), data(c.dimension, 0) {}

    TrialResult run(const SnrPoint& point, GaussianRng& rng) {
        rng.fill_bits(data);
        const BitVec x = pac_encode(data, code);
        const std::vector<double> y = awgn_sample(bpsk_modulate(x), point, rng);
        const DecodeOutcome out = decoder.decode(channel_llrs(y, point));
        if (out.kind == DecodeKind::aborted) return {TrialOutcome::aborted, out.visits};
        const bool ok = extract_data(out.v_hat, code.profile) == data;
        return {ok ? TrialOutcome::success : TrialOutcome::frame_error, out.visits};
    }
};

struct ConvTrialState {
    const ConvConfig& code;
    ConvDecoder decoder;
    BitVec data;

    ConvTrialState(const ConvConfig& c, const DecoderConfig& d)
        : code(c), decoder(c, d), data(c.message_length, 0) {}

    TrialResult run(const SnrPoint& point, GaussianRng& rng) {
        rng.fill_bits(data);
        const BitVec x = conv_encode_zt(data, code);
        const std::vector<double> y = awgn_sample(bpsk_modulate(x), point, rng);
        const DecodeOutcome out = decoder.decode(channel_llrs(y, point));
        if (out.kind == DecodeKind::aborted) return {TrialOutcome::aborted, out.visits};
        return {out.v_hat == data ? TrialOutcome::success : TrialOutcome::frame_error,
                out.visits};
    }
};

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

std::vector<SnrStats> run_pac_campaign(const CodeConfig& code, const DecoderConfig& dec,
                                       const CampaignConfig& campaign,
                                       std::vector<ZmaxSweepRow>* sweep_out) {
    validate_campaign(campaign, dec.z_max.has_value());
    for (std::uint64_t cap : campaign.zmax_sweep)
        if (cap < code.block_length)
            throw std::invalid_argument("sweep caps must be at least the block length");
    std::function<std::unique_ptr<PacTrialState>()> make_state = [&] {
        return std::make_unique<PacTrialState>(code, dec);
    };
    return run_campaign_impl(campaign, make_state, sweep_out);
}

std::vector<SnrStats> run_conv_campaign(const ConvConfig& code, const DecoderConfig& dec,
                                        const CampaignConfig& campaign,
                                        std::vector<ZmaxSweepRow>* sweep_out) {
    validate_campaign(campaign, dec.z_max.has_value());
    std::function<std::unique_ptr<ConvTrialState>()> make_state = [&] {
        return std::make_unique<ConvTrialState>(code, dec);
    };
    return run_campaign_impl(campaign, make_state, sweep_out);
}

std::vector<ZmaxSweepRow> fer_vs_zmax_sweep(const CodeConfig& code, const DecoderConfig& dec,
                                            const CampaignConfig& campaign, double snr_db,
                                            std::span<const std::uint64_t> caps) {
    CampaignConfig one = campaign;
    one.snr_db = {snr_db};
    one.zmax_sweep.assign(caps.begin(), caps.end());
    std::vector<ZmaxSweepRow> rows;
    run_pac_campaign(code, dec, one, &rows);
    return rows;
}

void CampaignMeta::set(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
}

namespace {

void describe_campaign_common(CampaignMeta& m, const DecoderConfig& dec,
                              const CampaignConfig& campaign) {
    m.set("delta", format_double("%g", dec.delta));
    m.set("z_max", dec.z_max ? std::to_string(*dec.z_max) : "none");
    m.set("seed", std::to_string(campaign.master_seed));
    m.set("min_trials", std::to_string(campaign.min_trials));
    m.set("min_errors", std::to_string(campaign.min_errors));
    m.set("max_trials", std::to_string(campaign.max_trials));
    m.set("success_only_hist", campaign.success_only_hist ? "true" : "false");
}

}  // namespace

CampaignMeta describe_pac_campaign(const CodeConfig& code, const DecoderConfig& dec,
                                   const CampaignConfig& campaign) {
    CampaignMeta m;
    m.set("code", "pac");
    m.set("n", std::to_string(code.block_length));
    m.set("k", std::to_string(code.dimension));
    m.set("c_octal", code.generator.to_octal());
    m.set("profile", "rm");
    m.set("rho", format_double("%g", dec.rho));
    describe_campaign_common(m, dec, campaign);
    return m;
}

CampaignMeta describe_conv_campaign(const ConvConfig& code, const DecoderConfig& dec,
                                    const CampaignConfig& campaign) {
    CampaignMeta m;
    m.set("code", "conv");
    m.set("g1_octal", code.g1.to_octal());
    m.set("g2_octal", code.g2.to_octal());
    m.set("k", std::to_string(code.message_length));
    m.set("output_bits", std::to_string(code.output_length()));
    m.set("effective_rate", format_double("%.6f", code.effective_rate()));
    describe_campaign_common(m, dec, campaign);
    return m;
}

void write_campaign_csv(std::ostream& out, std::span<const SnrStats> stats,
                        const CampaignMeta& meta) {
    for (const auto& [k, v] : meta.entries) out << "# " << k << "=" << v << "\n";
    out << "snr_db,trials,errors,fer,anv\n";
    for (const SnrStats& s : stats) {
        char row[160];
        std::snprintf(row, sizeof(row), "%.3f,%llu,%llu,%.9e,%.6f\n", s.snr_db,
                      static_cast<unsigned long long>(s.trials),
                      static_cast<unsigned long long>(s.frame_errors), s.fer, s.anv);
        out << row;
    }
}

namespace {

nlohmann::json hist_to_json(const ZHistogram& h, bool success_only) {
    nlohmann::json buckets = nlohmann::json::array();
    for (std::size_t i = 0; i < ZHistogram::kBuckets; ++i) {
        buckets.push_back({{"label", ZHistogram::label(i)},
                           {"count", h.count(i)},
                           {"pct", std::round(h.pct(i) * 1e4) / 1e4}});
    }
    return {{"success_only", success_only}, {"total", h.total()}, {"buckets", buckets}};
}

std::vector<std::uint64_t> hist_counts(const ZHistogram& h) {
    std::vector<std::uint64_t> c(ZHistogram::kBuckets);
    for (std::size_t i = 0; i < ZHistogram::kBuckets; ++i) c[i] = h.count(i);
    return c;
}

}  // namespace

void write_campaign_json(std::ostream& out, std::span<const SnrStats> stats,
                         const CampaignMeta& meta, bool success_only_hist) {
    nlohmann::json j;
    nlohmann::json jm = nlohmann::json::object();
    for (const auto& [k, v] : meta.entries) jm[k] = v;
    j["config"] = jm;
    nlohmann::json results = nlohmann::json::array();
    for (const SnrStats& s : stats) {
        results.push_back({
            {"snr_db", s.snr_db},
            {"sigma", s.sigma},
            {"trials", s.trials},
            {"frame_errors", s.frame_errors},
            {"aborts", s.aborts},
            {"successes", s.successes},
            {"sum_z", s.sum_z},
            {"sum_z_success", s.sum_z_success},
            {"fer", s.fer},
            {"anv", s.anv},
            {"anv_success", s.anv_success},
            {"z_hist", hist_to_json(success_only_hist ? s.hist_success : s.hist_all,
                                    success_only_hist)},
            {"hist_all_counts", hist_counts(s.hist_all)},
            {"hist_success_counts", hist_counts(s.hist_success)},
        });
    }
    j["results"] = results;
    out << j.dump(2) << "\n";
}

std::vector<SnrStats> read_campaign_json(std::istream& in) {
    nlohmann::json j;
    in >> j;
    std::vector<SnrStats> stats;
    for (const auto& r : j.at("results")) {
        SnrStats s;
        s.snr_db = r.at("snr_db").get<double>();
        s.sigma = r.at("sigma").get<double>();
        s.trials = r.at("trials").get<std::uint64_t>();
        s.frame_errors = r.at("frame_errors").get<std::uint64_t>();
        s.aborts = r.at("aborts").get<std::uint64_t>();
        s.successes = r.at("successes").get<std::uint64_t>();
        s.sum_z = r.at("sum_z").get<std::uint64_t>();
        s.sum_z_success = r.at("sum_z_success").get<std::uint64_t>();
        s.fer = r.at("fer").get<double>();
        s.anv = r.at("anv").get<double>();
        s.anv_success = r.at("anv_success").get<double>();
        const auto all = r.at("hist_all_counts").get<std::vector<std::uint64_t>>();
        const auto suc = r.at("hist_success_counts").get<std::vector<std::uint64_t>>();
        s.hist_all = ZHistogram::from_counts(all);
        s.hist_success = ZHistogram::from_counts(suc);
        stats.push_back(std::move(s));
    }
    return stats;
}

void write_zmax_sweep_csv(std::ostream& out, std::span<const ZmaxSweepRow> rows,
                          const CampaignMeta& meta) {
    for (const auto& [k, v] : meta.entries) out << "# " << k << "=" << v << "\n";
    out << "snr_db,zmax,fer\n";
    for (const ZmaxSweepRow& r : rows) {
        char row[96];
        std::snprintf(row, sizeof(row), "%.3f,%llu,%.9e\n", r.snr_db,
                      static_cast<unsigned long long>(r.z_max), r.fer);
        out << row;
    }
}

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace

void emit_results_csv(const std::string& path, std::span<const SnrStats> stats,
                      const CampaignMeta& meta) {
    auto out = open_output(path);
    write_campaign_csv(out, stats, meta);
    if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_results_json(const std::string& path, std::span<const SnrStats> stats,
                       const CampaignMeta& meta, bool success_only_hist) {
    auto out = open_output(path);
    write_campaign_json(out, stats, meta, success_only_hist);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pacsim
