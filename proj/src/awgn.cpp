#include "risnc/awgn.hpp"

#include <cmath>

namespace risnc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct AwgnGeometry {
    double sqrt_lo; // sqrt(min(ps1, ps2))
    double sqrt_hi; // sqrt(max(ps1, ps2))
    double sigma;   // sqrt(n0)
};

AwgnGeometry geometry(const SystemConfig& cfg) {
    const SystemConfig checked = validate(cfg);
    return AwgnGeometry{std::sqrt(checked.min_power()), std::sqrt(checked.max_power()),
                        std::sqrt(checked.n0)};
}

} // namespace

SuperimposedConstellation SuperimposedConstellation::from_config(const SystemConfig& cfg) {
    const SystemConfig checked = validate(cfg);
    const double s1 = std::sqrt(checked.ps1);
    const double s2 = std::sqrt(checked.ps2);
    SuperimposedConstellation c;
    c.points = {s1 + s2, s1 - s2, -s1 + s2, -s1 - s2};
    c.xor_labels = {0, 1, 1, 0};
    c.threshold = std::max(s1, s2);
    return c;
}

double awgn_symbol_error_outer(const SystemConfig& cfg) {
    const AwgnGeometry g = geometry(cfg);
    const double mu = g.sqrt_lo + g.sqrt_hi; // |Sy1|; symmetric in ps1 <-> ps2
    return q_func((mu - g.sqrt_hi) / g.sigma) - q_func((mu + g.sqrt_hi) / g.sigma);
}

double awgn_symbol_error_inner(const SystemConfig& cfg) {
    const AwgnGeometry g = geometry(cfg);
    const double mu = g.sqrt_hi - g.sqrt_lo; // |Sy2|
    return q_func((g.sqrt_hi - mu) / g.sigma) + q_func((g.sqrt_hi + mu) / g.sigma);
}

double awgn_relay_ber_exact(const SystemConfig& cfg, CraigForm form, const QuadratureSpec& quad) {
    const AwgnGeometry g = geometry(cfg);
    const double arg0 = g.sqrt_lo / g.sigma;
    const double arg1 = (2.0 * g.sqrt_hi + g.sqrt_lo) / g.sigma;
    const double arg2 = (2.0 * g.sqrt_hi - g.sqrt_lo) / g.sigma;
    if (form == CraigForm::qform) {
        return q_func(arg0) - 0.5 * q_func(arg1) + 0.5 * q_func(arg2);
    }
    const double h0 = 0.5 * arg0 * arg0;
    const double h1 = 0.5 * arg1 * arg1;
    const double h2 = 0.5 * arg2 * arg2;
    return integrate_half_pi(
               [h0, h1, h2](double w) {
                   const double sw = std::sin(w);
                   const double inv = 1.0 / (sw * sw);
                   return std::exp(-h0 * inv) - 0.5 * std::exp(-h1 * inv) +
                          0.5 * std::exp(-h2 * inv);
               },
               quad) /
           kPi;
}

double awgn_relay_ber_approx(const SystemConfig& cfg, CraigForm form, const QuadratureSpec& quad) {
    const AwgnGeometry g = geometry(cfg);
    const double arg = g.sqrt_lo / g.sigma;
    if (form == CraigForm::qform) {
        return q_func(arg);
    }
    return q_func_craig(arg, quad);
}

} // namespace risnc
