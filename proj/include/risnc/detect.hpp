#pragma once

#include "risnc/types.hpp"

namespace risnc {

struct RelayDecision {
    double x1_hat = 1.0;
    double x2_hat = 1.0;
    Bit plnc_bit = 0;
};

// argmin over the four (x1, x2) sign pairs of |y - sqrt(ps1) g1 x1
// - sqrt(ps2) g2 x2|^2, enumerated (-1,-1), (-1,+1), (+1,-1), (+1,+1);
// the first minimum wins ties.
RelayDecision joint_ml_detect(double y, double g1, double g2, double ps1, double ps2);

// Duobinary-style decision for the unit-gain AWGN constellation: beyond
// +-max(sqrt(ps1), sqrt(ps2)) decodes XOR bit 0, inside decodes bit 1.
Bit threshold_detect_plnc(double y, double ps1, double ps2);

// Hard BPSK slice; the gain is nonnegative so it cannot flip the sign.
double bpsk_slice(double y, double gain);

inline Bit recover_remote(Bit local_bit, Bit relayed_bit) { return xor_bits(local_bit, relayed_bit); }

} // namespace risnc
