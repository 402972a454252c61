#include "risnc/detect.hpp"

#include <cmath>

namespace risnc {

RelayDecision joint_ml_detect(double y, double g1, double g2, double ps1, double ps2) {
    const double a1 = std::sqrt(ps1) * g1;
    const double a2 = std::sqrt(ps2) * g2;
    const double sum = a1 + a2;
    const double diff = a1 - a2;
    // residuals against the four hypotheses, in enumeration order
    const double d0 = (y + sum) * (y + sum);   // (-1,-1)
    const double d1 = (y + diff) * (y + diff); // (-1,+1)
    const double d2 = (y - diff) * (y - diff); // (+1,-1)
    const double d3 = (y - sum) * (y - sum);   // (+1,+1)

    double best = d0;
    int k = 0;
    if (d1 < best) {
        best = d1;
        k = 1;
    }
    if (d2 < best) {
        best = d2;
        k = 2;
    }
    if (d3 < best) {
        k = 3;
    }

    RelayDecision decision;
    decision.x1_hat = (k & 2) ? 1.0 : -1.0;
    decision.x2_hat = (k & 1) ? 1.0 : -1.0;
    decision.plnc_bit = static_cast<Bit>((k ^ (k >> 1)) & 1);
    return decision;
}

Bit threshold_detect_plnc(double y, double ps1, double ps2) {
    const double threshold = std::sqrt(ps1 > ps2 ? ps1 : ps2);
    return std::fabs(y) > threshold ? Bit{0} : Bit{1};
}

double bpsk_slice(double y, double gain) {
    (void)gain;
    return y >= 0.0 ? 1.0 : -1.0;
}

} // namespace risnc
