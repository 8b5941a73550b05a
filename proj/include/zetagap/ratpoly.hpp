#pragma once

#include <cstddef>
#include <vector>

#include "zetagap/rational.hpp"

namespace zetagap {

// Univariate polynomial with exact rational coefficients, index k holding the
// coefficient of x^k. Canonical form: no trailing zero coefficients, so the
// zero polynomial has an empty coefficient vector and equality is structural.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);

    static RatPoly monomial(std::size_t k, const Rational& c = Rational(1));

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t k) const;

    RatPoly operator+(const RatPoly& rhs) const;
    RatPoly operator-(const RatPoly& rhs) const;
    RatPoly operator-() const;
    RatPoly operator*(const RatPoly& rhs) const;  // exact Cauchy product
    RatPoly operator*(const Rational& s) const;
    bool operator==(const RatPoly& rhs) const { return coeffs_ == rhs.coeffs_; }

    Rational eval(const Rational& x) const;  // Horner, exact
    double eval_double(double x) const;

    RatPoly derivative() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

inline RatPoly operator*(const Rational& s, const RatPoly& p) { return p * s; }

// The convolution transform P_r(x) = int_0^x t^r P(x-t) dt. On monomials this
// is the Beta integral: x^k maps to r! k! / (r+k+1)! * x^{r+k+1}.
RatPoly convolve_power(const RatPoly& p, unsigned r);

// Exact int_0^1 p(x) dx = sum coeffs[k]/(k+1).
Rational integrate_unit(const RatPoly& p);

// The t-integral factor int_0^u t (theta_inv - t)^k P(u-t) dt as a polynomial
// in u, via binomial expansion:
//   sum_{i=0}^{k} C(k,i) theta_inv^{k-i} (-1)^i P_{i+1}(u).
RatPoly shifted_kernel_expand(const RatPoly& p, unsigned k, const Rational& theta_inv);

}  // namespace zetagap
