#include "owg/constants.hpp"

#include <cmath>

namespace owg {

double stable_expm1_div(double z, double t) {
    if (z == 0.0) return t;
    return std::expm1(z * t) / z;
}

ConstantsTable eval_constants(const ModelParams& params, double eps, std::optional<double> phi) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw invalid_parameter("eps", "instantaneous cost weight must be positive");
    if (phi && !(*phi > 0.0))
        throw invalid_parameter("phi", "terminal penalty must be positive when supplied");

    ConstantsTable c;
    c.lambda = params.lambda;
    c.beta = params.beta;
    c.horizon = params.horizon;
    c.eps = eps;
    c.n_traders = params.n_traders;
    c.phi = phi;

    const double lambda = params.lambda;
    const double beta = params.beta;
    const double T = params.horizon;
    const double N = params.n_traders;

    // z1, z2 are the roots of eps z^2 + lambda (N-1) z - beta (lambda (N+1) + beta eps).
    // The + root is computed from the product form to avoid the cancellation
    // -lambda(N-1) + sqrt(...) that degrades as eps -> 0.
    const double disc = (N - 1) * (N - 1) * lambda * lambda
                      + 4.0 * beta * eps * (N + 1) * lambda + 4.0 * beta * beta * eps * eps;
    const double s = lambda * (N - 1) + std::sqrt(disc);
    c.z1 = 2.0 * beta * (lambda * (N + 1) + beta * eps) / s;
    c.z2 = -s / (2.0 * eps);
    c.z3 = beta + lambda / eps;

    if (2.0 * c.z1 * T > 700.0) throw owg::overflow_error("b11");

    const double e1T = std::exp(c.z1 * T);
    const double e2T = std::exp(c.z2 * T);   // z2 < -beta: underflows harmlessly to 0
    const double e3mT = std::exp(-c.z3 * T); // e^{-z3 T}

    c.gamma1 = 1.0 / (c.z1 + beta) + e1T / (c.z1 - beta);
    c.gamma2 = 1.0 / (c.z2 + beta) + e2T / (c.z2 - beta);
    // z2 gamma2 = z2/(z2+beta) + z2 e^{z2 T}/(z2-beta) -> 1 as eps -> 0 while
    // gamma2 itself vanishes; the ratio stays well scaled.
    const double z2g2 = c.z2 / (c.z2 + beta) + c.z2 * e2T / (c.z2 - beta);
    c.gamma_ratio = c.z2 * c.gamma1 / z2g2;

    c.b1 = stable_expm1_div(c.z1, T);
    c.b2 = stable_expm1_div(c.z2, T);
    c.b11 = stable_expm1_div(2.0 * c.z1, T);
    c.b22 = stable_expm1_div(2.0 * c.z2, T);
    c.b12 = stable_expm1_div(c.z1 + c.z2, T);

    c.q0 = (1.0 - e3mT) / c.z3;
    c.q1 = (e1T - e3mT) / (c.z1 + c.z3);
    c.q2 = e3mT * stable_expm1_div(c.z2 + c.z3, T); // handles z2 + z3 ~ 0
    c.q3 = (1.0 - e3mT * e3mT) / (2.0 * c.z3);
    c.b3 = c.q0;
    c.b13 = c.q1;
    c.b23 = c.q2;
    c.b33 = c.q3;

    const double G = c.gamma_ratio;
    c.rho0 = e1T - G * e2T;
    c.rho_plus = e1T / (c.z1 + beta) - G * e2T / (c.z2 + beta);
    // Identity form of rho_-: makes I_0 = 0 hold to rounding.
    c.rho_minus = G / (c.z2 + beta) - 1.0 / (c.z1 + beta);

    c.varrho0 = c.b1 - G * c.b2;
    c.varrho1 = c.b1 / (c.z1 + beta) - G * c.b2 / (c.z2 + beta);
    c.m0 = c.q1 - G * c.q2;
    c.m1 = c.q1 / (c.z1 + beta) - G * c.q2 / (c.z2 + beta);
    c.r0 = c.b11 + G * G * c.b22 - 2.0 * G * c.b12;
    c.r1 = c.b11 / (c.z1 + beta) + G * G * c.b22 / (c.z2 + beta)
         - G * (1.0 / (c.z1 + beta) + 1.0 / (c.z2 + beta)) * c.b12;

    c.p_frak = c.rho0 + beta * c.rho_minus + lambda * N * (c.rho_plus + c.rho_minus) / eps;
    c.Psi = c.varrho0 + beta * c.rho_minus * T;
    c.Xi = beta * T + lambda * c.q0 / eps;

    if (phi) {
        c.psi = c.p_frak + (*phi / eps) * c.Psi;
        c.xi = c.z3 + (*phi / eps) * c.Xi;
    }

    c.h1 = c.rho_minus * (c.Psi + beta * c.varrho1) + c.r1;
    c.h2 = c.rho_minus * c.Xi + beta * c.varrho1 + lambda * c.m1 / eps;
    c.h3 = beta * c.rho_minus * (c.Psi + c.varrho0) + c.r0;
    c.h4 = beta * (2.0 * c.Xi - beta * T) + lambda * lambda / (eps * eps) * c.q3;
    c.h5 = beta * c.rho_minus * c.Xi + beta * c.varrho0 + lambda * c.m0 / eps;

    return c;
}

namespace {

// int_a^b e^{c t + s} dt, with the constant shift s supplied by the caller so
// that c*t + s stays <= 0 whenever c*(b-a) is large (the z3-anchored cases).
double exp_int(double c, double s, double a, double b) {
    if (std::abs(c) * (b - a) <= 1.0)
        return std::exp(c * a + s) * stable_expm1_div(c, b - a);
    return (std::exp(c * b + s) - std::exp(c * a + s)) / c;
}

} // namespace

double split_h3(const ConstantsTable& c, double a, double b) {
    const double G = c.gamma_ratio;
    const double br = c.beta * c.rho_minus;
    return br * br * (b - a)
         + 2.0 * br * (exp_int(c.z1, 0.0, a, b) - G * exp_int(c.z2, 0.0, a, b))
         + exp_int(2.0 * c.z1, 0.0, a, b)
         + G * G * exp_int(2.0 * c.z2, 0.0, a, b)
         - 2.0 * G * exp_int(c.z1 + c.z2, 0.0, a, b);
}

double split_h4(const ConstantsTable& c, double a, double b) {
    const double le = c.lambda / c.eps;
    const double zT = c.z3 * c.horizon;
    return c.beta * c.beta * (b - a)
         + 2.0 * c.beta * le * exp_int(c.z3, -zT, a, b)
         + le * le * exp_int(2.0 * c.z3, -2.0 * zT, a, b);
}

double split_h5(const ConstantsTable& c, double a, double b) {
    const double G = c.gamma_ratio;
    const double le = c.lambda / c.eps;
    const double zT = c.z3 * c.horizon;
    const double br = c.beta * c.rho_minus;
    return br * c.beta * (b - a)
         + c.beta * (exp_int(c.z1, 0.0, a, b) - G * exp_int(c.z2, 0.0, a, b))
         + le * (br * exp_int(c.z3, -zT, a, b)
                 + exp_int(c.z1 + c.z3, -zT, a, b)
                 - G * exp_int(c.z2 + c.z3, -zT, a, b));
}

} // namespace owg
