#pragma once

#include <functional>

#include "risnc/config.hpp"
#include "risnc/special.hpp"
#include "risnc/types.hpp"

namespace risnc {

// Per-branch inputs of the joint MGF plus the detection constants shared by
// the relay BER expressions.
struct MgfBranch {
    int n = 0;       // total element count N_i of the panel
    double snr = 0.0; // Ps_i / N0, linear
};

struct MgfParams {
    MgfBranch branch1;
    MgfBranch branch2;
    double v_sq = 0.0; // commonality constant V^2 = min(ps1, ps2)
    double pg1 = 0.0;  // min(ps1, ps2)
    double pg2 = 0.0;  // (2 sqrt(max) + sqrt(min))^2
    double pg3 = 0.0;  // (2 sqrt(max) - sqrt(min))^2
    FormulaMode mode = FormulaMode::derived;

    static MgfParams from_config(const SystemConfig& cfg);
};

// Joint MGF of the relay SNR evaluated at s <= 0. In printed mode the
// typeset signs are used literally; if that produces a value above 1 (an
// impossible MGF for a nonnegative variate) an InvalidMgfError carrying the
// value is thrown.
double relay_mgf(double s, const MgfParams& params);

// Generic MGF-based BER: (1/pi) * int_0^{pi/2} mgf(-v_sq / (2 sin^2 w)) dw,
// clamped to [0, 1/2] against quadrature round-off.
double ber_from_mgf(const std::function<double(double)>& mgf, double v_sq,
                    const QuadratureSpec& quad = {});

double mgf_ber(const MgfParams& params, const QuadratureSpec& quad = {});

// Relay BER in fading via the minimum-distance substitution.
double relay_ber_approx_fading(const SystemConfig& cfg, const QuadratureSpec& quad = {});

// Closed-form bound: half the approx integrand at omega = pi/2.
double relay_ber_upper_bound(const SystemConfig& cfg);

// Alternating three-term exact relay BER over the power factors Pg_i.
double relay_ber_exact_fading(const SystemConfig& cfg, const QuadratureSpec& quad = {});

enum class LinkMode { bound, integral };

// BPSK BER of one RIS-assisted link (direct or relay-to-destination).
// Zero allocated elements degenerate to BER 1/2.
double link_ber(const LinkBudget& link, double n0, LinkMode mode,
                const QuadratureSpec& quad = {});

struct OverallBer {
    double value = 0.0;
    bool clamped = false; // true when the union-style sum exceeded 1
};

// Overall destination BER: Pe_direct + Pe_relay * Pe_relay_to_destination.
OverallBer overall_ber(const SystemConfig& cfg, Destination dest,
                       LinkMode link_mode = LinkMode::bound,
                       const QuadratureSpec& quad = {});

} // namespace risnc
