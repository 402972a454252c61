#include "risnc/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "risnc/errors.hpp"

namespace risnc {

namespace {

struct Rule {
    std::vector<double> nodes;   // on [0, pi/2]
    std::vector<double> weights; // scaled for [0, pi/2]
};

// Gauss-Legendre nodes on [-1,1] by Newton iteration on the Legendre
// recurrence, then mapped to [0, pi/2].
Rule build_rule(int order) {
    constexpr double kPi = 3.141592653589793238462643383279502884;
    Rule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));

    const double xm = kPi / 4.0; // midpoint of [0, pi/2]
    const double xl = kPi / 4.0; // half length
    const int m = (order + 1) / 2;
    const double dn = static_cast<double>(order);

    for (int i = 1; i <= m; ++i) {
        double z = std::cos(kPi * (static_cast<double>(i) - 0.25) / (dn + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= order; ++j) {
                const double dj = static_cast<double>(j);
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
            }
            pp = dn * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-15) {
                break;
            }
        }
        rule.nodes[static_cast<std::size_t>(i - 1)] = xm - xl * z;
        rule.nodes[static_cast<std::size_t>(order - i)] = xm + xl * z;
        const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[static_cast<std::size_t>(i - 1)] = w;
        rule.weights[static_cast<std::size_t>(order - i)] = w;
    }
    return rule;
}

const Rule& cached_rule(int order) {
    static std::mutex mu;
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) {
        it = cache.emplace(order, build_rule(order)).first;
    }
    return it->second;
}

double apply_rule(const std::function<double(double)>& f, const Rule& rule) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = f(rule.nodes[i]);
        if (!std::isfinite(v)) {
            throw std::domain_error("integrand returned a non-finite value");
        }
        acc += rule.weights[i] * v;
    }
    return acc;
}

} // namespace

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double q_func_craig(double x, const QuadratureSpec& quad) {
    if (x < 0.0) {
        throw std::invalid_argument("q_func_craig requires x >= 0");
    }
    constexpr double kPi = 3.141592653589793238462643383279502884;
    const double half_xsq = 0.5 * x * x;
    return integrate_half_pi(
               [half_xsq](double w) {
                   const double sw = std::sin(w);
                   return std::exp(-half_xsq / (sw * sw));
               },
               quad) /
           kPi;
}

double integrate_half_pi(const std::function<double(double)>& f, const QuadratureSpec& quad) {
    if (quad.order < 2 || quad.abs_tol <= 0.0 || quad.rel_tol <= 0.0) {
        throw std::invalid_argument("invalid quadrature spec");
    }
    int order = quad.order;
    double prev = apply_rule(f, cached_rule(order));
    for (int refinement = 0; refinement < quad.max_refinements; ++refinement) {
        order *= 2;
        const double next = apply_rule(f, cached_rule(order));
        const double diff = std::fabs(next - prev);
        if (diff <= quad.abs_tol || diff <= quad.rel_tol * std::fabs(next)) {
            return next;
        }
        if (refinement + 1 == quad.max_refinements) {
            throw QuadratureError("quadrature did not converge within max refinements",
                                  next, prev);
        }
        prev = next;
    }
    throw QuadratureError("quadrature did not converge", prev, prev);
}

} // namespace risnc
