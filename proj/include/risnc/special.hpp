#pragma once

#include <functional>

namespace risnc {

// Fixed-order Gauss-Legendre on [0, pi/2] with order doubling until two
// successive estimates agree. The open rule never samples the endpoints,
// which is what lets integrands with 1/sin^2 terms pass through safely
// (they decay to zero as omega -> 0 but are not defined there). Any
// replacement rule must preserve that property.
struct QuadratureSpec {
    int order = 64;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_refinements = 10;
};

// Standard Gaussian upper tail probability.
double q_func(double x);

// Craig's form (1/pi) * int_0^{pi/2} exp(-x^2 / (2 sin^2 w)) dw, x >= 0.
// Evaluated by quadrature; an independent cross-check of q_func.
double q_func_craig(double x, const QuadratureSpec& quad = {});

// int_0^{pi/2} f(w) dw. Throws QuadratureError when the refinement loop
// fails to converge and std::domain_error if f returns a non-finite value.
double integrate_half_pi(const std::function<double(double)>& f,
                         const QuadratureSpec& quad = {});

} // namespace risnc
