// Test-only numeric oracles, deliberately independent of the library's
// polynomial transforms: polynomials are evaluated by Horner on plain double
// coefficient arrays and every integral is done by adaptive quadrature.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double horner(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson correction.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = detail::simpson(a, b, fa, fm, fb);
    return detail::adapt(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Adaptive Simpson driven to a relative target: a coarse absolute pass sets
// the scale, a second pass refines against it.
inline double integrate_rel(const std::function<double(double)>& f, double a, double b,
                            double rel_tol) {
    const double coarse = integrate(f, a, b, 1e-10);
    const double abs_tol = std::max(1e-18, rel_tol * std::fabs(coarse));
    return integrate(f, a, b, abs_tol);
}

// int_0^x t^r P(x - t) dt
inline double conv_transform(const std::vector<double>& p, int r, double x, double tol = 1e-13) {
    return integrate([&](double t) { return std::pow(t, r) * horner(p, x - t); }, 0.0, x, tol);
}

// int_0^x t^r (x-t)^k dt evaluated to relative accuracy even for tiny x, via
// the dilation t = x s: x^{r+k+1} int_0^1 s^r (1-s)^k ds.
inline double conv_monomial(int k, int r, double x, double rel_tol = 1e-12) {
    const double unit = integrate_rel(
        [&](double s) { return std::pow(s, r) * std::pow(1.0 - s, k); }, 0.0, 1.0, rel_tol);
    return std::pow(x, r + k + 1) * unit;
}

// int_0^u t (theta_inv - t)^k P(u - t) dt
inline double shifted_kernel(const std::vector<double>& p, int k, double theta_inv, double u,
                             double tol = 1e-13) {
    return integrate([&](double t) { return t * std::pow(theta_inv - t, k) * horner(p, u - t); },
                     0.0, u, tol);
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// The six-term B(j;u), every transform evaluated numerically.
inline double b_value(int j, const std::vector<double>& p, double theta, double u,
                      double tol = 1e-13) {
    const double theta_inv = 1.0 / theta;
    const double p1 = conv_transform(p, 1, u, tol);
    const double p2 = conv_transform(p, 2, u, tol);
    const double p3 = conv_transform(p, 3, u, tol);
    const double pj2 = conv_transform(p, j + 2, u, tol);
    const double pj3 = conv_transform(p, j + 3, u, tol);
    double acc = -2.0 * p1 * pj2 / factorial(j + 2);
    acc += 2.0 * theta * p2 * pj2 / factorial(j + 2);
    acc += 4.0 * theta * p1 * pj3 / factorial(j + 3);
    acc -= theta / factorial(j + 2) * p1 * shifted_kernel(p, j + 2, theta_inv, u, tol);
    acc += theta / factorial(j + 1) * p2 * shifted_kernel(p, j + 1, theta_inv, u, tol);
    acc -= theta / (6.0 * factorial(j)) * p3 * shifted_kernel(p, j, theta_inv, u, tol);
    return acc;
}

// beta_j = int_0^1 (1-x)^3 B(j;x) dx by nested adaptive quadrature.
inline double beta(int j, const std::vector<double>& p, double theta, double outer_tol = 1e-12,
                   double inner_tol = 1e-13) {
    return integrate(
        [&](double x) {
            const double w = (1.0 - x) * (1.0 - x) * (1.0 - x);
            return w * b_value(j, p, theta, x, inner_tol);
        },
        0.0, 1.0, outer_tol);
}

}  // namespace oracle
