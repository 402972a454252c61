#include "risnc/fading.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "risnc/errors.hpp"

namespace risnc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// One factor of the joint MGF. The base term 1 - s*N*(4-pi)*SNR/4 carries
// the variance of the CLT Gaussian; the exponent carries its mean power.
// printed:   exp(+(-s)*lambda / base), lambda = N^2*pi*SNR/8  (as typeset)
// corrected: exp(  s  *lambda / base), lambda = N^2*pi*SNR/8
// derived:   exp(  s  *lambda / base), lambda = N^2*pi*SNR/16
double branch_factor(double s, const MgfBranch& b, FormulaMode mode) {
    const double n = static_cast<double>(b.n);
    const double base = 1.0 - s * n * (4.0 - kPi) * b.snr / 4.0;
    double lambda = n * n * kPi * b.snr / 8.0;
    double exponent;
    switch (mode) {
    case FormulaMode::printed:
        exponent = (-s * lambda) / base;
        break;
    case FormulaMode::corrected:
        exponent = (s * lambda) / base;
        break;
    case FormulaMode::derived:
        lambda = n * n * kPi * b.snr / 16.0;
        exponent = (s * lambda) / base;
        break;
    default:
        throw std::logic_error("unknown formula mode");
    }
    return std::exp(exponent) / std::sqrt(base);
}

} // namespace

MgfParams MgfParams::from_config(const SystemConfig& cfg) {
    const SystemConfig checked = validate(cfg);
    const double lo = checked.min_power();
    const double hi = checked.max_power();
    MgfParams p;
    p.branch1 = MgfBranch{checked.n1, checked.ps1 / checked.n0};
    p.branch2 = MgfBranch{checked.n2, checked.ps2 / checked.n0};
    p.v_sq = lo;
    p.pg1 = lo;
    const double root = 2.0 * std::sqrt(hi);
    p.pg2 = (root + std::sqrt(lo)) * (root + std::sqrt(lo));
    p.pg3 = (root - std::sqrt(lo)) * (root - std::sqrt(lo));
    p.mode = checked.formula_mode;
    return p;
}

double relay_mgf(double s, const MgfParams& params) {
    if (s > 0.0) {
        throw std::invalid_argument("relay_mgf requires s <= 0");
    }
    const double value = branch_factor(s, params.branch1, params.mode) *
                         branch_factor(s, params.branch2, params.mode);
    if (params.mode == FormulaMode::printed && value > 1.0) {
        std::ostringstream msg;
        msg << "joint MGF as printed evaluates to " << value
            << " > 1, impossible for a nonnegative variate";
        throw InvalidMgfError(msg.str(), value);
    }
    return value;
}

double ber_from_mgf(const std::function<double(double)>& mgf, double v_sq,
                    const QuadratureSpec& quad) {
    const double raw = integrate_half_pi(
                           [&mgf, v_sq](double w) {
                               const double sw = std::sin(w);
                               return mgf(-v_sq / (2.0 * sw * sw));
                           },
                           quad) /
                       kPi;
    return std::clamp(raw, 0.0, 0.5);
}

double mgf_ber(const MgfParams& params, const QuadratureSpec& quad) {
    return ber_from_mgf([&params](double s) { return relay_mgf(s, params); }, params.v_sq,
                        quad);
}

double relay_ber_approx_fading(const SystemConfig& cfg, const QuadratureSpec& quad) {
    return mgf_ber(MgfParams::from_config(cfg), quad);
}

double relay_ber_upper_bound(const SystemConfig& cfg) {
    const MgfParams params = MgfParams::from_config(cfg);
    return 0.5 * relay_mgf(-params.v_sq / 2.0, params);
}

double relay_ber_exact_fading(const SystemConfig& cfg, const QuadratureSpec& quad) {
    MgfParams params = MgfParams::from_config(cfg);
    const double pg[3] = {params.pg1, params.pg2, params.pg3};
    double total = 0.0;
    double sign = 1.0;
    for (int i = 0; i < 3; ++i) {
        params.v_sq = pg[i];
        total += sign * mgf_ber(params, quad);
        sign = -sign;
    }
    return std::clamp(total, 0.0, 0.5);
}

double link_ber(const LinkBudget& link, double n0, LinkMode mode, const QuadratureSpec& quad) {
    const LinkBudget checked = validate(link);
    if (!(std::isfinite(n0) && n0 > 0.0)) {
        throw ConfigError("noise variance must be positive");
    }
    const double na = static_cast<double>(checked.allocated_elements);
    const double p_over_n0 = checked.tx_power / n0;
    const double var_coeff = na * (4.0 - kPi) * p_over_n0 / 2.0;
    const double mean_coeff = na * na * kPi * p_over_n0 / 4.0;
    const auto factor = [var_coeff, mean_coeff](double w) {
        const double sw = std::sin(w);
        const double inv = 1.0 / (sw * sw);
        const double base = 1.0 + var_coeff * inv;
        return std::exp(-(mean_coeff * inv) / base) / std::sqrt(base);
    };
    if (mode == LinkMode::bound) {
        return 0.5 * factor(kPi / 2.0);
    }
    return std::clamp(integrate_half_pi(factor, quad) / kPi, 0.0, 0.5);
}

OverallBer overall_ber(const SystemConfig& cfg, Destination dest, LinkMode link_mode,
                       const QuadratureSpec& quad) {
    const SystemConfig checked = validate(cfg);
    const bool d1 = dest == Destination::d1;
    const LinkBudget direct{(d1 ? checked.n1 : checked.n2) / 2, d1 ? checked.ps1 : checked.ps2};
    const LinkBudget relay_leg{checked.n3 / 2, checked.pr};

    const double pe_direct = link_ber(direct, checked.n0, link_mode, quad);
    const double pe_relay = relay_ber_exact_fading(checked, quad);
    const double pe_leg = link_ber(relay_leg, checked.n0, link_mode, quad);

    const double raw = pe_direct + pe_relay * pe_leg;
    OverallBer out;
    out.clamped = raw > 1.0;
    out.value = std::clamp(raw, 0.0, 1.0);
    return out;
}

} // namespace risnc
