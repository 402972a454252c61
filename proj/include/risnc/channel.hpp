#pragma once

#include <vector>

#include "risnc/config.hpp"
#include "risnc/kernels/kernels.hpp"
#include "risnc/types.hpp"

namespace risnc {

// One RIS-assisted link of a realization: element magnitudes, channel
// phases, the RIS phase profile and the resulting compensated gain
// |eta * sum_j alpha_j e^(j(phi_j - theta_j))|.
struct LinkChannel {
    std::vector<double> magnitudes;
    std::vector<double> channel_phases;
    std::vector<double> ris_phases;
    double eta = 1.0;
    double effective_gain = 0.0;
};

// A full draw of the six links. Under ideal compensation every RIS phase
// equals its channel phase and each effective gain is the plain magnitude
// sum; without RIS each link is a single unit-power Rayleigh tap.
struct ChannelRealization {
    LinkChannel s1r;
    LinkChannel s2r;
    LinkChannel s1d1;
    LinkChannel s2d2;
    LinkChannel rd1;
    LinkChannel rd2;
    bool ris_enabled = true;
};

// Drawn from trial `trial` of `gain_stream` using the same magnitude draw
// layout as the end-to-end simulation kernel (links in the order s1r, s2r,
// s1d1, s2d2, rd1, rd2), so a realization can be checked against the batch
// kernels draw for draw. Phases come from an independent substream.
// `ideal_compensation = false` is a test seam that leaves the RIS phases
// random instead of matched.
ChannelRealization sample_realization(const SystemConfig& cfg, kernels::Stream gain_stream,
                                      std::uint64_t trial, bool ideal_compensation = true);

// Relay observation y = sqrt(ps1) g1 x1 + sqrt(ps2) g2 x2 + n, n ~ N(0, n0).
// In AWGN mode both gains are 1 regardless of the realization.
struct RelayObservation {
    double y = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
};

RelayObservation relay_observation(const ChannelRealization& real, const SystemConfig& cfg,
                                   double x1, double x2, kernels::U01Cursor& noise,
                                   bool awgn_mode = false);

// Single-input link observation sqrt(p) * gain * symbol + N(0, n0).
double link_observation(double gain, double tx_power, double symbol, double n0,
                        kernels::U01Cursor& noise);

} // namespace risnc
