#include "risnc/channel.hpp"

#include <cmath>

namespace risnc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

// Magnitudes must consume draws exactly like the batch kernels: one draw
// per element through sqrt(-ln u).
LinkChannel draw_link(kernels::U01Cursor& gains, kernels::U01Cursor& phases, int elements,
                      double eta, bool ris, bool ideal_compensation) {
    LinkChannel link;
    link.eta = ris ? eta : 1.0;
    const int count = ris ? elements : 1;
    link.magnitudes.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        link.magnitudes.push_back(kernels::rayleigh_from_u01(gains.next()));
    }
    link.channel_phases.reserve(static_cast<std::size_t>(count));
    link.ris_phases.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        link.channel_phases.push_back(kTwoPi * phases.next());
    }
    for (int i = 0; i < count; ++i) {
        if (ideal_compensation) {
            link.ris_phases.push_back(link.channel_phases[static_cast<std::size_t>(i)]);
        } else {
            link.ris_phases.push_back(kTwoPi * phases.next());
        }
    }

    if (ideal_compensation) {
        double sum = 0.0;
        for (const double a : link.magnitudes) {
            sum += a;
        }
        link.effective_gain = link.eta * sum;
    } else {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t i = 0; i < link.magnitudes.size(); ++i) {
            const double rot = link.ris_phases[i] - link.channel_phases[i];
            re += link.magnitudes[i] * std::cos(rot);
            im += link.magnitudes[i] * std::sin(rot);
        }
        link.effective_gain = link.eta * std::sqrt(re * re + im * im);
    }
    return link;
}

} // namespace

ChannelRealization sample_realization(const SystemConfig& cfg, kernels::Stream gain_stream,
                                      std::uint64_t trial, bool ideal_compensation) {
    const SystemConfig checked = validate(cfg);
    kernels::U01Cursor gains(gain_stream, trial);
    kernels::U01Cursor phases(kernels::substream(gain_stream, kernels::purpose_channel_phases),
                              trial);

    ChannelRealization real;
    real.ris_enabled = checked.ris_enabled;
    const bool ris = checked.ris_enabled;
    real.s1r = draw_link(gains, phases, checked.n1 / 2, checked.eta1, ris, ideal_compensation);
    real.s2r = draw_link(gains, phases, checked.n2 / 2, checked.eta2, ris, ideal_compensation);
    real.s1d1 = draw_link(gains, phases, checked.n1 / 2, checked.eta1, ris, ideal_compensation);
    real.s2d2 = draw_link(gains, phases, checked.n2 / 2, checked.eta2, ris, ideal_compensation);
    real.rd1 = draw_link(gains, phases, checked.n3 / 2, checked.eta3, ris, ideal_compensation);
    real.rd2 = draw_link(gains, phases, checked.n3 / 2, checked.eta3, ris, ideal_compensation);
    return real;
}

RelayObservation relay_observation(const ChannelRealization& real, const SystemConfig& cfg,
                                   double x1, double x2, kernels::U01Cursor& noise,
                                   bool awgn_mode) {
    RelayObservation obs;
    obs.g1 = awgn_mode ? 1.0 : real.s1r.effective_gain;
    obs.g2 = awgn_mode ? 1.0 : real.s2r.effective_gain;
    double z0 = 0.0, z1 = 0.0;
    kernels::normal_pair(noise.next(), noise.next(), z0, z1);
    obs.y = std::sqrt(cfg.ps1) * obs.g1 * x1 + std::sqrt(cfg.ps2) * obs.g2 * x2 +
            std::sqrt(cfg.n0) * z0;
    return obs;
}

double link_observation(double gain, double tx_power, double symbol, double n0,
                        kernels::U01Cursor& noise) {
    double z0 = 0.0, z1 = 0.0;
    kernels::normal_pair(noise.next(), noise.next(), z0, z1);
    return std::sqrt(tx_power) * gain * symbol + std::sqrt(n0) * z0;
}

} // namespace risnc
