// pacsim: PAC / convolutional-code Fano decoding simulator and analysis CLI.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pacsim/analysis.hpp"
#include "pacsim/code_config.hpp"
#include "pacsim/conv.hpp"
#include "pacsim/sim.hpp"

namespace {

std::vector<double> parse_snr_list(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a = 0, step = 0, b = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> a >> c1 >> step >> c2 >> b) || c1 != ':' || c2 != ':' || step <= 0)
            throw CLI::ValidationError("--snr", "expected start:step:stop with step > 0");
        for (double v = a; v <= b + 1e-9; v += step) out.push_back(v);
    } else {
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok.empty()) continue;
            out.push_back(std::stod(tok));
        }
    }
    if (out.empty()) throw CLI::ValidationError("--snr", "no SNR points given");
    return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoull(tok));
    }
    return out;
}

struct CampaignCli {
    std::string config_path;
    std::string snr_text;
    std::uint64_t seed = 1;
    std::uint64_t min_trials = 10'000;
    std::uint64_t min_errors = 100;
    std::uint64_t max_trials = 10'000'000;
    unsigned workers = 0;
    bool success_only_hist = false;
    std::optional<std::uint64_t> zmax_flag;
    std::string zmax_sweep_text;
    std::string out_csv;
    std::string out_json;
    std::string sweep_csv;
};

void add_campaign_options(CLI::App* cmd, CampaignCli& opt) {
    cmd->add_option("--config", opt.config_path, "JSON code configuration file")->required();
    cmd->add_option("--snr", opt.snr_text, "SNR points in dB: start:step:stop or comma list")
        ->required();
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--min-trials", opt.min_trials, "trials before the error target applies");
    cmd->add_option("--min-errors", opt.min_errors, "frame errors to collect per point");
    cmd->add_option("--max-trials", opt.max_trials, "hard trial cap per point");
    cmd->add_option("--workers", opt.workers,
                    "worker threads (default: PACSIM_WORKERS or hardware)");
    cmd->add_flag("--success-only-hist", opt.success_only_hist,
                  "emit the Z histogram of correct decodings only");
    cmd->add_option("--zmax", opt.zmax_flag, "visit cap; exceeding it aborts the decode");
    cmd->add_option("--out", opt.out_csv, "CSV output path");
    cmd->add_option("--json-out", opt.out_json, "JSON output path");
}

pacsim::CampaignConfig campaign_from_cli(const CampaignCli& opt) {
    pacsim::CampaignConfig c;
    c.snr_db = parse_snr_list(opt.snr_text);
    c.master_seed = opt.seed;
    c.min_trials = opt.min_trials;
    c.min_errors = opt.min_errors;
    c.max_trials = opt.max_trials;
    c.workers = opt.workers;
    c.success_only_hist = opt.success_only_hist;
    if (!opt.zmax_sweep_text.empty()) c.zmax_sweep = parse_u64_list(opt.zmax_sweep_text);
    return c;
}

void emit_campaign(const std::vector<pacsim::SnrStats>& stats,
                   const std::vector<pacsim::ZmaxSweepRow>& sweep,
                   const pacsim::CampaignMeta& meta, const CampaignCli& opt) {
    if (!opt.out_csv.empty())
        pacsim::emit_results_csv(opt.out_csv, stats, meta);
    else
        pacsim::write_campaign_csv(std::cout, stats, meta);
    if (!opt.out_json.empty())
        pacsim::emit_results_json(opt.out_json, stats, meta, opt.success_only_hist);
    if (!sweep.empty()) {
        if (!opt.sweep_csv.empty()) {
            std::ofstream out(opt.sweep_csv);
            if (!out) throw std::runtime_error("cannot open output file: " + opt.sweep_csv);
            pacsim::write_zmax_sweep_csv(out, sweep, meta);
        } else {
            pacsim::write_zmax_sweep_csv(std::cout, sweep, meta);
        }
    }
}

int run_pac(const CampaignCli& opt) {
    pacsim::PacConfigFile cfg = pacsim::load_pac_config(opt.config_path);
    if (opt.zmax_flag) {
        if (*opt.zmax_flag < cfg.code.block_length)
            throw std::runtime_error("--zmax must be at least the block length");
        cfg.decoder.z_max = *opt.zmax_flag;
    }
    const pacsim::CampaignConfig campaign = campaign_from_cli(opt);
    std::vector<pacsim::ZmaxSweepRow> sweep;
    const auto stats = pacsim::run_pac_campaign(cfg.code, cfg.decoder, campaign, &sweep);
    emit_campaign(stats, sweep, pacsim::describe_pac_campaign(cfg.code, cfg.decoder, campaign),
                  opt);
    return 0;
}

int run_conv(const CampaignCli& opt) {
    pacsim::ConvConfigFile cfg = pacsim::load_conv_config(opt.config_path);
    if (opt.zmax_flag) cfg.decoder.z_max = *opt.zmax_flag;
    const pacsim::CampaignConfig campaign = campaign_from_cli(opt);
    std::vector<pacsim::ZmaxSweepRow> sweep;
    const auto stats = pacsim::run_conv_campaign(cfg.code, cfg.decoder, campaign, &sweep);
    emit_campaign(stats, sweep, pacsim::describe_conv_campaign(cfg.code, cfg.decoder, campaign),
                  opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PAC-code sequential decoding simulator"};
    app.require_subcommand(1);

    CampaignCli pac_opt;
    CLI::App* pac = app.add_subcommand("pac", "Monte Carlo FER/ANV campaign for a PAC code");
    add_campaign_options(pac, pac_opt);
    pac->add_option("--zmax-sweep", pac_opt.zmax_sweep_text,
                    "comma list of visit caps for an FER-vs-Zmax sweep");
    pac->add_option("--sweep-out", pac_opt.sweep_csv, "CSV path for the sweep table");

    CampaignCli conv_opt;
    CLI::App* conv =
        app.add_subcommand("conv", "Monte Carlo campaign for the terminated conv code");
    add_campaign_options(conv, conv_opt);

    CLI::App* analyze = app.add_subcommand("analyze", "closed-form analysis tables");
    analyze->require_subcommand(1);

    std::string r0_snr_text;
    double r0_rate = 0.0;
    CLI::App* r0 = analyze->add_subcommand("r0", "cutoff rate");
    CLI::Option* r0_rate_opt = r0->add_option("--rate", r0_rate, "rate; prints the SNR where R0 equals it");
    CLI::Option* r0_snr_opt = r0->add_option("--snr", r0_snr_text, "SNR list; prints R0 per point");

    std::size_t disp_n = 128, disp_k = 64;
    std::string disp_snr_text;
    CLI::App* disp = analyze->add_subcommand("dispersion", "normal-approximation FER curve");
    disp->add_option("--n", disp_n, "block length")->required();
    disp->add_option("--k", disp_k, "dimension")->required();
    disp->add_option("--snr", disp_snr_text, "SNR list")->required();
    std::string disp_out;
    disp->add_option("--out", disp_out, "CSV output path (default stdout)");

    std::size_t prof_n = 128, prof_k = 64;
    CLI::App* prof = app.add_subcommand("profile", "dump the RM data index set (1-based)");
    prof->add_option("--n", prof_n, "block length")->required();
    prof->add_option("--k", prof_k, "dimension")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (pac->parsed()) return run_pac(pac_opt);
        if (conv->parsed()) return run_conv(conv_opt);
        if (analyze->parsed()) {
            if (r0->parsed()) {
                if (r0_rate_opt->count()) {
                    char row[64];
                    std::snprintf(row, sizeof(row), "%.6f,%.4f\n", r0_rate,
                                  pacsim::snr_for_cutoff_rate(r0_rate));
                    std::cout << "rate,snr_db\n" << row;
                } else if (r0_snr_opt->count()) {
                    std::cout << "snr_db,r0\n";
                    for (double snr : parse_snr_list(r0_snr_text)) {
                        char row[64];
                        std::snprintf(row, sizeof(row), "%.3f,%.6f\n", snr,
                                      pacsim::cutoff_rate(snr));
                        std::cout << row;
                    }
                } else {
                    std::cerr << "analyze r0: give --rate or --snr\n";
                    return 1;
                }
            } else if (disp->parsed()) {
                std::ostringstream body;
                body << "snr_db,r0,capacity,dispersion,fer_approx\n";
                for (double snr : parse_snr_list(disp_snr_text)) {
                    const pacsim::BiawgnMoments m = pacsim::biawgn_moments(snr);
                    char row[160];
                    std::snprintf(row, sizeof(row), "%.3f,%.6f,%.6f,%.6f,%.9e\n", snr,
                                  pacsim::cutoff_rate(snr), m.capacity, m.dispersion,
                                  pacsim::dispersion_fer(disp_n, disp_k, snr));
                    body << row;
                }
                if (disp_out.empty()) {
                    std::cout << body.str();
                } else {
                    std::ofstream out(disp_out);
                    if (!out) throw std::runtime_error("cannot open output file: " + disp_out);
                    out << body.str();
                }
            }
            return 0;
        }
        if (prof->parsed()) {
            const pacsim::RateProfile profile = pacsim::rm_profile(prof_n, prof_k);
            std::string sep;
            for (std::size_t idx : profile.data_indices()) {
                std::cout << sep << (idx + 1);
                sep = ",";
            }
            std::cout << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "pacsim: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
