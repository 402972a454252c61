#pragma once

#include <array>
#include <utility>

#include "risnc/config.hpp"
#include "risnc/special.hpp"
#include "risnc/types.hpp"

namespace risnc {

// The four relay-side amplitudes under simultaneous BPSK transmission and
// the duobinary-like decision geometry: the outer (same-sign) points decode
// to XOR bit 0, the inner (alternate-sign) points to bit 1, with thresholds
// at +-max(sqrt(ps1), sqrt(ps2)).
struct SuperimposedConstellation {
    std::array<double, 4> points;     // Sy1..Sy4
    std::array<Bit, 4> xor_labels;    // 0,1,1,0
    double threshold;                 // max(sqrt(ps1), sqrt(ps2))
    // hypothesis enumeration order used by the joint-ML detector
    static constexpr std::array<std::pair<double, double>, 4> hypotheses = {{
        {-1.0, -1.0},
        {-1.0, +1.0},
        {+1.0, -1.0},
        {+1.0, +1.0},
    }};

    static SuperimposedConstellation from_config(const SystemConfig& cfg);
};

enum class CraigForm { qform, craig };

// Error probability of the outer points Sy1/Sy4: the Gaussian mass that
// falls back inside (-threshold, +threshold).
double awgn_symbol_error_outer(const SystemConfig& cfg);

// Error probability of the inner points Sy2/Sy3: the mass that escapes
// (-threshold, +threshold).
double awgn_symbol_error_inner(const SystemConfig& cfg);

// Equiprobable average of the four symbol error probabilities.
double awgn_relay_ber_exact(const SystemConfig& cfg, CraigForm form = CraigForm::qform,
                            const QuadratureSpec& quad = {});

// High-SNR approximation: only the minimum-distance pairs contribute.
double awgn_relay_ber_approx(const SystemConfig& cfg, CraigForm form = CraigForm::qform,
                             const QuadratureSpec& quad = {});

} // namespace risnc
