#include "risnc/sim.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "risnc/errors.hpp"

namespace risnc {

namespace {

constexpr std::uint64_t kBatchTrials = 8192;
constexpr double kWilsonZ = 1.9599639845400545; // 95%

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs batch_fn over fixed-size trial batches and retires the results in
// batch order, applying the stopping rule after each batch. Worker threads
// may compute batches speculatively; speculative results beyond the stop
// point are discarded, so the outcome is identical for any worker count.
template <typename Counts, typename BatchFn, typename ErrorsOf>
Counts run_batches(const StoppingRule& stop, unsigned workers, const BatchFn& batch_fn,
                   const ErrorsOf& errors_of, std::uint64_t& trials_out) {
    const auto rule_met = [&stop](std::uint64_t trials, std::uint64_t errors) {
        return trials >= stop.min_trials &&
               (errors >= stop.target_errors || trials >= stop.max_trials);
    };

    Counts total{};
    std::uint64_t trials = 0;

    if (workers <= 1) {
        for (std::uint64_t b = 0;; ++b) {
            const std::uint64_t t0 = b * kBatchTrials;
            if (t0 >= stop.max_trials) {
                break;
            }
            const std::uint64_t t1 = std::min(t0 + kBatchTrials, stop.max_trials);
            total += batch_fn(t0, t1);
            trials = t1;
            if (rule_met(trials, errors_of(total))) {
                break;
            }
        }
        trials_out = trials;
        return total;
    }

    std::mutex mu;
    std::condition_variable cv;
    std::map<std::uint64_t, Counts> finished;
    std::atomic<std::uint64_t> next_batch{0};
    std::atomic<bool> stop_flag{false};

    auto worker = [&]() {
        while (!stop_flag.load(std::memory_order_relaxed)) {
            const std::uint64_t b = next_batch.fetch_add(1, std::memory_order_relaxed);
            const std::uint64_t t0 = b * kBatchTrials;
            if (t0 >= stop.max_trials) {
                break;
            }
            const std::uint64_t t1 = std::min(t0 + kBatchTrials, stop.max_trials);
            Counts c = batch_fn(t0, t1);
            {
                std::lock_guard<std::mutex> lock(mu);
                finished.emplace(b, c);
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) {
        pool.emplace_back(worker);
    }

    std::uint64_t expected = 0;
    while (true) {
        Counts c;
        {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&]() { return finished.count(expected) != 0; });
            c = finished[expected];
            finished.erase(expected);
        }
        total += c;
        trials = std::min((expected + 1) * kBatchTrials, stop.max_trials);
        ++expected;
        if (rule_met(trials, errors_of(total)) || trials >= stop.max_trials) {
            stop_flag.store(true, std::memory_order_relaxed);
            break;
        }
    }
    for (auto& th : pool) {
        th.join();
    }
    trials_out = trials;
    return total;
}

struct ScalarCount {
    std::uint64_t errors = 0;
    ScalarCount& operator+=(const ScalarCount& o) {
        errors += o.errors;
        return *this;
    }
};

BerPoint make_mc_point(double snr_db, std::uint64_t errors, std::uint64_t trials) {
    BerPoint p;
    p.snr_db = snr_db;
    p.source = Source::mc;
    p.trials = trials;
    p.errors = errors;
    p.ber = trials == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(trials);
    wilson_interval(errors, trials, p.ci_low, p.ci_high);
    return p;
}

std::uint64_t snr_salt(double snr_db) { return std::bit_cast<std::uint64_t>(snr_db); }

} // namespace

StoppingRule validate(const StoppingRule& rule) {
    if (rule.min_trials > rule.max_trials) {
        throw ConfigError("min_trials must not exceed max_trials");
    }
    if (rule.target_errors == 0) {
        throw ConfigError("target_errors must be at least 1");
    }
    if (rule.max_trials == 0) {
        throw ConfigError("max_trials must be at least 1");
    }
    return rule;
}

void wilson_interval(std::uint64_t errors, std::uint64_t trials, double& low, double& high) {
    if (trials == 0) {
        low = 0.0;
        high = 1.0;
        return;
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = kWilsonZ * kWilsonZ;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double radius =
        kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // the score interval always contains the point estimate; clamp the
    // floating-point noise that can violate that at 0 or n errors
    low = std::min(std::max(0.0, center - radius), p);
    high = std::max(std::min(1.0, center + radius), p);
}

const char* to_string(LinkId link) {
    switch (link) {
    case LinkId::s1d1:
        return "s1d1";
    case LinkId::s2d2:
        return "s2d2";
    case LinkId::rd1:
        return "rd1";
    case LinkId::rd2:
        return "rd2";
    }
    return "unknown";
}

BerPoint estimate_relay_ber(const SystemConfig& cfg, double snr_db, const StoppingRule& stop,
                            std::uint64_t master_seed, RelayEnvironment env,
                            const SimOptions& opts) {
    const SystemConfig c = validate(cfg).at_snr_db(snr_db);
    validate(stop);
    kernels::RelayParams p;
    p.sqrt_ps1 = std::sqrt(c.ps1);
    p.sqrt_ps2 = std::sqrt(c.ps2);
    p.sigma = std::sqrt(c.n0);
    p.eta1 = c.eta1;
    p.eta2 = c.eta2;
    p.half_n1 = c.n1 / 2;
    p.half_n2 = c.n2 / 2;
    p.ris = c.ris_enabled;
    p.awgn = env == RelayEnvironment::awgn;

    const std::uint32_t purpose = p.awgn ? kernels::purpose_relay_awgn
                                         : kernels::purpose_relay_fading;
    const kernels::Stream stream = kernels::derive_stream(master_seed, purpose, snr_salt(snr_db));
    const kernels::KernelTable& table = kernels::kernel_table(opts.isa);

    std::uint64_t trials = 0;
    const ScalarCount total = run_batches<ScalarCount>(
        stop, resolve_workers(opts.workers),
        [&](std::uint64_t t0, std::uint64_t t1) {
            return ScalarCount{table.relay_batch(p, stream, t0, t1)};
        },
        [](const ScalarCount& counts) { return counts.errors; }, trials);
    return make_mc_point(snr_db, total.errors, trials);
}

E2eEstimate estimate_e2e_full(const SystemConfig& cfg, double snr_db, Destination dest,
                              const StoppingRule& stop, std::uint64_t master_seed,
                              const SimOptions& opts) {
    const SystemConfig c = validate(cfg).at_snr_db(snr_db);
    validate(stop);
    kernels::E2eParams p;
    p.sqrt_ps1 = std::sqrt(c.ps1);
    p.sqrt_ps2 = std::sqrt(c.ps2);
    p.sqrt_pr = std::sqrt(c.pr);
    p.sigma = std::sqrt(c.n0);
    p.eta1 = c.eta1;
    p.eta2 = c.eta2;
    p.eta3 = c.eta3;
    p.half_n1 = c.n1 / 2;
    p.half_n2 = c.n2 / 2;
    p.half_n3 = c.n3 / 2;
    p.ris = c.ris_enabled;

    const kernels::Stream stream =
        kernels::derive_stream(master_seed, kernels::purpose_e2e, snr_salt(snr_db));
    const kernels::KernelTable& table = kernels::kernel_table(opts.isa);
    const bool d1 = dest == Destination::d1;

    std::uint64_t trials = 0;
    const kernels::E2eCounts total = run_batches<kernels::E2eCounts>(
        stop, resolve_workers(opts.workers),
        [&](std::uint64_t t0, std::uint64_t t1) { return table.e2e_batch(p, stream, t0, t1); },
        [d1](const kernels::E2eCounts& counts) {
            return d1 ? counts.remote_d1 : counts.remote_d2;
        },
        trials);

    E2eEstimate est;
    est.remote = make_mc_point(snr_db, d1 ? total.remote_d1 : total.remote_d2, trials);
    est.local = make_mc_point(snr_db, d1 ? total.local_d1 : total.local_d2, trials);
    return est;
}

BerPoint estimate_e2e_ber(const SystemConfig& cfg, double snr_db, Destination dest,
                          const StoppingRule& stop, std::uint64_t master_seed,
                          const SimOptions& opts) {
    return estimate_e2e_full(cfg, snr_db, dest, stop, master_seed, opts).remote;
}

BerPoint estimate_link_ber(const SystemConfig& cfg, LinkId link, double snr_db,
                           const StoppingRule& stop, std::uint64_t master_seed,
                           const SimOptions& opts) {
    const SystemConfig c = validate(cfg).at_snr_db(snr_db);
    validate(stop);
    kernels::LinkParams p;
    p.sigma = std::sqrt(c.n0);
    p.ris = c.ris_enabled;
    switch (link) {
    case LinkId::s1d1:
        p.sqrt_p = std::sqrt(c.ps1);
        p.eta = c.eta1;
        p.half_n = c.n1 / 2;
        break;
    case LinkId::s2d2:
        p.sqrt_p = std::sqrt(c.ps2);
        p.eta = c.eta2;
        p.half_n = c.n2 / 2;
        break;
    case LinkId::rd1:
    case LinkId::rd2:
        p.sqrt_p = std::sqrt(c.pr);
        p.eta = c.eta3;
        p.half_n = c.n3 / 2;
        break;
    }

    const std::uint32_t purpose =
        kernels::purpose_link_base + static_cast<std::uint32_t>(link);
    const kernels::Stream stream = kernels::derive_stream(master_seed, purpose, snr_salt(snr_db));
    const kernels::KernelTable& table = kernels::kernel_table(opts.isa);

    std::uint64_t trials = 0;
    const ScalarCount total = run_batches<ScalarCount>(
        stop, resolve_workers(opts.workers),
        [&](std::uint64_t t0, std::uint64_t t1) {
            return ScalarCount{table.link_batch(p, stream, t0, t1)};
        },
        [](const ScalarCount& counts) { return counts.errors; }, trials);
    return make_mc_point(snr_db, total.errors, trials);
}

void BerCurve::append(const BerPoint& p) {
    if (!points.empty()) {
        if (p.snr_db <= points.back().snr_db) {
            throw std::invalid_argument("BerCurve requires strictly increasing snr_db");
        }
        if (p.source != source) {
            throw std::invalid_argument("BerCurve requires a homogeneous source tag");
        }
    } else {
        source = p.source;
    }
    points.push_back(p);
}

BerCurve sweep(const SystemConfig& cfg, const std::vector<double>& snr_grid_db, SweepKind kind,
               const StoppingRule& stop, std::uint64_t master_seed, const SimOptions& opts,
               LinkId link) {
    for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
        if (!(snr_grid_db[i] > snr_grid_db[i - 1])) {
            throw std::invalid_argument("sweep requires a strictly increasing SNR grid");
        }
    }
    BerCurve curve;
    curve.cfg = validate(cfg);
    for (const double snr : snr_grid_db) {
        BerPoint p;
        switch (kind) {
        case SweepKind::relay_awgn:
            p = estimate_relay_ber(cfg, snr, stop, master_seed, RelayEnvironment::awgn, opts);
            break;
        case SweepKind::relay_fading:
            p = estimate_relay_ber(cfg, snr, stop, master_seed, RelayEnvironment::fading, opts);
            break;
        case SweepKind::e2e_d1:
            p = estimate_e2e_ber(cfg, snr, Destination::d1, stop, master_seed, opts);
            break;
        case SweepKind::e2e_d2:
            p = estimate_e2e_ber(cfg, snr, Destination::d2, stop, master_seed, opts);
            break;
        case SweepKind::links:
            p = estimate_link_ber(cfg, link, snr, stop, master_seed, opts);
            break;
        }
        curve.append(p);
    }
    return curve;
}

bool ber_crossing_db(const std::vector<BerPoint>& points, double level, double& out_db) {
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const BerPoint& a = points[i];
        const BerPoint& b = points[i + 1];
        if (a.ber >= level && b.ber < level) {
            if (b.ber <= 0.0 || a.ber <= 0.0) {
                out_db = b.snr_db;
                return true;
            }
            const double la = std::log10(a.ber);
            const double lb = std::log10(b.ber);
            const double t = (std::log10(level) - la) / (lb - la);
            out_db = a.snr_db + t * (b.snr_db - a.snr_db);
            return true;
        }
    }
    return false;
}

} // namespace risnc
