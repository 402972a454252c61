// risnc: analytic and Monte-Carlo BER experiments for the RIS-assisted
// two-source multicast network with a PLNC decode-and-forward relay.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "risnc/errors.hpp"
#include "risnc/experiment.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::optional<double> ps1, ps2, pr, n0;
    std::optional<int> n1, n2, n3;
    std::optional<double> eta1, eta2, eta3;
    bool no_ris = false;
    std::string mode;
    double snr_start = -4.0;
    double snr_stop = 12.0;
    double snr_step = 2.0;
    std::uint64_t trials = 10'000'000;
    std::uint64_t target_errors = 200;
    std::uint64_t min_trials = 10'000;
    std::uint64_t seed = 1;
    std::string out = "ber.csv";
    unsigned threads = 1;
    std::string kernel = "auto";
    std::string kind = "relay-awgn";
};

void add_common_options(CLI::App* cmd, CliOptions& opt, bool with_kind) {
    cmd->add_option("--config", opt.config_path, "flat key = value config file");
    cmd->add_option("--ps1", opt.ps1, "S1 transmit power, linear watts");
    cmd->add_option("--ps2", opt.ps2, "S2 transmit power, linear watts");
    cmd->add_option("--pr", opt.pr, "relay transmit power, linear watts");
    cmd->add_option("--n0", opt.n0, "noise variance, linear watts");
    cmd->add_option("--n1", opt.n1, "RIS1 total element count (even)");
    cmd->add_option("--n2", opt.n2, "RIS2 total element count (even)");
    cmd->add_option("--n3", opt.n3, "RIS3 total element count (even)");
    cmd->add_option("--eta1", opt.eta1, "RIS1 reflection loss in (0,1]");
    cmd->add_option("--eta2", opt.eta2, "RIS2 reflection loss in (0,1]");
    cmd->add_option("--eta3", opt.eta3, "RIS3 reflection loss in (0,1]");
    cmd->add_flag("--no-ris", opt.no_ris, "conventional baseline without RIS panels");
    cmd->add_option("--mode", opt.mode, "fading formula variant: printed|corrected|derived");
    cmd->add_option("--snr-start", opt.snr_start, "sweep start, 10*log10(1/N0) dB");
    cmd->add_option("--snr-stop", opt.snr_stop, "sweep stop, dB");
    cmd->add_option("--snr-step", opt.snr_step, "sweep step, dB");
    cmd->add_option("--trials", opt.trials, "Monte-Carlo trial cap per point");
    cmd->add_option("--target-errors", opt.target_errors, "early-stop error target per point");
    cmd->add_option("--min-trials", opt.min_trials, "minimum trials per point");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--out", opt.out, "output CSV path");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
    cmd->add_option("--kernel", opt.kernel, "trial kernel: auto|scalar|avx2");
    if (with_kind) {
        cmd->add_option("--kind", opt.kind,
                        "curve set to compare: relay-awgn|relay-fading|e2e-d1|e2e-d2|links");
    }
}

int build_spec(const CliOptions& opt, risnc::Command command, risnc::ExperimentSpec& spec) {
    using risnc::ConfigError;
    try {
        risnc::SystemConfig cfg;
        if (!opt.config_path.empty()) {
            cfg = risnc::parse_config_file(opt.config_path, cfg);
        }
        if (opt.ps1) cfg.ps1 = *opt.ps1;
        if (opt.ps2) cfg.ps2 = *opt.ps2;
        if (opt.pr) cfg.pr = *opt.pr;
        if (opt.n0) cfg.n0 = *opt.n0;
        if (opt.n1) cfg.n1 = *opt.n1;
        if (opt.n2) cfg.n2 = *opt.n2;
        if (opt.n3) cfg.n3 = *opt.n3;
        if (opt.eta1) cfg.eta1 = *opt.eta1;
        if (opt.eta2) cfg.eta2 = *opt.eta2;
        if (opt.eta3) cfg.eta3 = *opt.eta3;
        if (opt.no_ris) cfg.ris_enabled = false;
        if (!opt.mode.empty() && !risnc::formula_mode_from_string(opt.mode, cfg.formula_mode)) {
            throw ConfigError("--mode must be printed, corrected or derived");
        }

        spec.command = command;
        spec.cfg = cfg;
        spec.snr_start_db = opt.snr_start;
        spec.snr_stop_db = opt.snr_stop;
        spec.snr_step_db = opt.snr_step;
        spec.stop = risnc::StoppingRule{opt.trials, opt.target_errors, opt.min_trials};
        spec.master_seed = opt.seed;
        spec.out_path = opt.out;
        spec.workers = opt.threads;

        if (opt.kernel == "auto") {
            spec.isa = risnc::kernels::best_isa();
        } else if (opt.kernel == "scalar") {
            spec.isa = risnc::kernels::Isa::scalar;
        } else if (opt.kernel == "avx2") {
            if (!risnc::kernels::isa_available(risnc::kernels::Isa::avx2)) {
                throw ConfigError("avx2 kernels are not available on this CPU");
            }
            spec.isa = risnc::kernels::Isa::avx2;
        } else {
            throw ConfigError("--kernel must be auto, scalar or avx2");
        }

        if (command == risnc::Command::compare) {
            if (opt.kind == "relay-awgn") {
                spec.compare_kind = risnc::SweepKind::relay_awgn;
            } else if (opt.kind == "relay-fading") {
                spec.compare_kind = risnc::SweepKind::relay_fading;
            } else if (opt.kind == "e2e-d1") {
                spec.compare_kind = risnc::SweepKind::e2e_d1;
            } else if (opt.kind == "e2e-d2") {
                spec.compare_kind = risnc::SweepKind::e2e_d2;
            } else if (opt.kind == "links") {
                spec.compare_kind = risnc::SweepKind::links;
            } else {
                throw ConfigError("--kind must be relay-awgn, relay-fading, e2e-d1, e2e-d2 or links");
            }
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BER experiments for a RIS-assisted PLNC multicast relay network"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* relay_awgn = app.add_subcommand("relay-awgn", "relay BER in AWGN");
    CLI::App* relay_fading = app.add_subcommand("relay-fading", "relay BER in fading");
    CLI::App* e2e = app.add_subcommand("e2e", "end-to-end destination BER");
    CLI::App* links = app.add_subcommand("links", "individual link BER");
    CLI::App* compare = app.add_subcommand("compare", "analytic vs Monte-Carlo summary");
    add_common_options(relay_awgn, opt, false);
    add_common_options(relay_fading, opt, false);
    add_common_options(e2e, opt, false);
    add_common_options(links, opt, false);
    add_common_options(compare, opt, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    risnc::Command command = risnc::Command::relay_awgn;
    if (relay_fading->parsed()) {
        command = risnc::Command::relay_fading;
    } else if (e2e->parsed()) {
        command = risnc::Command::e2e;
    } else if (links->parsed()) {
        command = risnc::Command::links;
    } else if (compare->parsed()) {
        command = risnc::Command::compare;
    }

    risnc::ExperimentSpec spec;
    const int rc = build_spec(opt, command, spec);
    if (rc != 0) {
        return rc;
    }
    return risnc::run_experiment(spec);
}
