#pragma once

#include <cstdint>
#include <vector>

#include "risnc/config.hpp"
#include "risnc/kernels/kernels.hpp"
#include "risnc/types.hpp"

namespace risnc {

// Early-stopping policy. Trials run in fixed batches and the stop decision
// is taken in batch order, so a point's result depends only on the stream
// and the rule, never on scheduling or worker count.
struct StoppingRule {
    std::uint64_t max_trials = 10'000'000;
    std::uint64_t target_errors = 200;
    std::uint64_t min_trials = 10'000;
};

StoppingRule validate(const StoppingRule& rule);

struct SimOptions {
    unsigned workers = 1;              // 0 = hardware concurrency
    kernels::Isa isa = kernels::best_isa();
};

enum class RelayEnvironment { awgn, fading };

// Relay PLNC bit error rate at one SNR point (joint-ML detection).
BerPoint estimate_relay_ber(const SystemConfig& cfg, double snr_db, const StoppingRule& stop,
                            std::uint64_t master_seed, RelayEnvironment env,
                            const SimOptions& opts = {});

// Full two-slot protocol; the error event is a wrong remote bit at the
// chosen destination. The local (direct-link) bit error rate observed in
// the same trials is reported alongside.
struct E2eEstimate {
    BerPoint remote;
    BerPoint local;
};

E2eEstimate estimate_e2e_full(const SystemConfig& cfg, double snr_db, Destination dest,
                              const StoppingRule& stop, std::uint64_t master_seed,
                              const SimOptions& opts = {});

BerPoint estimate_e2e_ber(const SystemConfig& cfg, double snr_db, Destination dest,
                          const StoppingRule& stop, std::uint64_t master_seed,
                          const SimOptions& opts = {});

enum class LinkId { s1d1, s2d2, rd1, rd2 };

const char* to_string(LinkId link);

// Single RIS-assisted BPSK link, sliced at the receiver.
BerPoint estimate_link_ber(const SystemConfig& cfg, LinkId link, double snr_db,
                           const StoppingRule& stop, std::uint64_t master_seed,
                           const SimOptions& opts = {});

enum class SweepKind { relay_awgn, relay_fading, e2e_d1, e2e_d2, links };

// A sweep is the concatenation of independent single-point estimates; each
// point derives its own stream from (seed, kind, snr), so results do not
// depend on the grid shape.
struct BerCurve {
    SystemConfig cfg;
    Source source = Source::mc;
    std::vector<BerPoint> points;

    void append(const BerPoint& p);
};

// `link` selects the node for the links kind and is ignored otherwise.
BerCurve sweep(const SystemConfig& cfg, const std::vector<double>& snr_grid_db, SweepKind kind,
               const StoppingRule& stop, std::uint64_t master_seed, const SimOptions& opts = {},
               LinkId link = LinkId::s1d1);

// Wilson 95% score interval for an error count.
void wilson_interval(std::uint64_t errors, std::uint64_t trials, double& low, double& high);

// Linear-in-dB / log10(ber) interpolation of the SNR where a curve crosses
// the given BER level; returns false when it never crosses.
bool ber_crossing_db(const std::vector<BerPoint>& points, double level, double& out_db);

} // namespace risnc
