#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace risnc {

// Which variant of the fading formulas to evaluate. `printed` is the text
// exactly as typeset (known to blow up, kept as evidence), `corrected`
// repairs the signs but keeps the typeset coefficients, `derived` also uses
// the per-element-consistent moment coefficients and is the variant that
// agrees with simulation.
enum class FormulaMode { printed, corrected, derived };

const char* to_string(FormulaMode mode);
bool formula_mode_from_string(const std::string& text, FormulaMode& out);

using Bit = std::uint8_t; // 0 or 1

// BPSK map: bit 0 -> +1, bit 1 -> -1.
inline double bpsk_symbol(Bit b) { return 1.0 - 2.0 * static_cast<double>(b); }
inline Bit bit_from_symbol(double x) { return x >= 0.0 ? Bit{0} : Bit{1}; }
inline Bit xor_bits(Bit a, Bit b) { return static_cast<Bit>((a ^ b) & 1u); }

enum class Source { analytic_exact, analytic_approx, analytic_bound, mc };

const char* to_string(Source source);

enum class Destination { d1, d2 };

// One point of a BER curve. Analytic sources carry a zero-width confidence
// interval and zero trial counts; Monte-Carlo points carry the Wilson 95%
// interval.
struct BerPoint {
    double snr_db = 0.0;
    double ber = 0.0;
    Source source = Source::mc;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double ci_low = 0.0;
    double ci_high = 0.0;

    static BerPoint analytic(double snr_db, double ber, Source source);
};

} // namespace risnc
