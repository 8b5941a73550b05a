#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zetagap/ratpoly.hpp"

namespace zetagap {

// Mollifier length exponent theta (y = T^theta), carried as an exact
// rational together with its reciprocal. The headline numbers are produced
// at theta = 1/2 exactly.
struct ThetaParam {
    Rational theta;
    Rational theta_inv;

    static ThetaParam half() { return of_theta_inv(make_rational(2)); }
    // theta_inv >= 2, i.e. 0 < theta <= 1/2
    static ThetaParam of_theta_inv(const Rational& theta_inv);

    bool is_half() const { return theta == make_rational(1, 2); }
};

// Admissible mollifier shape polynomial P(x) = sum_{k=2}^{M} a_k x^k. The
// constraint P(0) = P'(0) = 0 holds by construction: indices 0 and 1 do not
// exist in the coefficient map.
class MollifierSpec {
public:
    // coeffs maps k -> a_k for 2 <= k <= M; at least one entry nonzero.
    MollifierSpec(int degree_bound, std::map<int, Rational> coeffs);
    // convenience: dense list a_2, a_3, ..., a_M
    static MollifierSpec from_dense(const std::vector<Rational>& a);

    int degree_bound() const { return degree_bound_; }
    const std::map<int, Rational>& coeffs() const { return coeffs_; }
    RatPoly to_poly() const;

    MollifierSpec scaled(const Rational& s) const;

private:
    int degree_bound_;
    std::map<int, Rational> coeffs_;
};

// Full provenance of one h(c) evaluation.
struct RatioReport {
    double c = 0.0;
    ThetaParam theta;
    bool generalized_theta = false;
    Rational denominator;                           // exact
    std::vector<std::pair<int, Rational>> beta;     // (series index j, beta_{2j})
    std::vector<std::pair<int, double>> terms;      // (j, w_j(c) * beta_{2j})
    int j_used = 0;
    double h = 0.0;
    std::optional<double> lambda_implied;           // c/pi when h < 1
};

struct RatioOptions {
    double tol = 1e-14;
    int j_cap = 60;
    // The standard series weights hard-code theta = 1/2. Setting this flag
    // enables weights extrapolated to general theta; nothing the acceptance
    // suite certifies depends on that mode.
    bool generalized_theta = false;
};

// (1-x)^3 (theta_inv P_1(x)^2 - 2 P_1(x) P_2(x)) as an exact polynomial.
RatPoly denominator_poly(const MollifierSpec& P, const ThetaParam& theta);

// Exact int_0^1 (1-x)^3 (P_1^2 - P_1 P_2) dx. Throws DegenerateDenominator
// if the value is not positive.
Rational h_denominator(const MollifierSpec& P);

// The six-term coefficient polynomial B(j;u), bilinear in P.
RatPoly b_poly(int j, const MollifierSpec& P, const ThetaParam& theta);

// beta_j = int_0^1 (1-x)^3 B(j;x) dx, exact.
Rational beta_coefficient(int j, const MollifierSpec& P, const ThetaParam& theta);

// h(c) via the alternating series over beta_{2j}. Exact rationals throughout;
// floats enter only in the per-term combination with c.
RatioReport h_ratio(const MollifierSpec& P, double c, const ThetaParam& theta,
                    const RatioOptions& opts = {});

// Symmetric quadratic forms N(c), D over monomial degrees 2..M such that
// h(c) = a^T N(c) a / a^T D a for coefficient vectors a. Built by
// polarization of beta_{2j} and of the denominator integral; the per-j
// numerator matrices are exact rationals and independent of c.
class QuadForms {
public:
    // Wrap externally supplied dense symmetric matrices (row-major, dimension
    // degree_bound - 1). The exact-rational path is unavailable on the result.
    static QuadForms from_dense(int degree_bound, double c, std::vector<double> n_matrix,
                                std::vector<double> d_matrix);

    int degree_bound() const { return degree_bound_; }
    double c() const { return c_; }
    int dim() const { return degree_bound_ - 1; }
    int j_terms() const { return static_cast<int>(weights_.size()); }

    const std::vector<double>& n_float() const { return n_float_; }
    const std::vector<double>& d_float() const { return d_float_; }
    const std::vector<Rational>& d_exact() const { return d_exact_; }
    const std::vector<Rational>& n_exact(int j) const { return n_exact_.at(j - 1); }

    // float quadratic-form ratio a^T N a / a^T D a
    double ratio(std::span<const double> a) const;
    // same series combination as h_ratio but with exact bilinear forms;
    // agrees with h_ratio(MollifierSpec(a)) to ~1e-15 relative
    double ratio_exact(const std::vector<Rational>& a) const;

    // Congruence-transformed problem: with D = L Dt L^T (exact rational LDL^T),
    // S(c) = Dt^{-1/2} L^{-1} N(c) L^{-T} Dt^{-1/2} has the generalized
    // spectrum of (N, D) as its ordinary spectrum and is well conditioned even
    // where the monomial Gram matrix D is not. The transform is carried out in
    // exact arithmetic; floats appear only in the final S entries.
    bool has_exact_transform() const { return !s_float_.empty(); }
    const std::vector<double>& s_float() const { return s_float_; }
    // maps an S-eigenvector back to monomial coordinates: a = L^{-T} Dt^{-1/2} y
    std::vector<double> back_transform(const std::vector<double>& y) const;

private:
    friend class QuadFormBasis;
    int degree_bound_ = 0;
    double c_ = 0.0;
    ThetaParam theta_;
    std::vector<Rational> d_exact_;               // packed symmetric, row-major upper
    std::vector<std::vector<Rational>> n_exact_;  // per series index j
    std::vector<double> weights_;                 // w_j(c), ascending j
    std::vector<double> n_float_;                 // dense (dim x dim)
    std::vector<double> d_float_;
    std::vector<double> s_float_;                 // dense transformed S(c)
    std::vector<double> linv_float_;              // dense L^{-1}
    std::vector<double> inv_sqrt_diag_;           // Dt^{-1/2}
};

// The c-independent part of the quadratic forms for one (M, theta):
// exact polarized matrices, grown lazily in the series index.
class QuadFormBasis {
public:
    QuadFormBasis(int degree_bound, ThetaParam theta);

    // Assemble N(c), D with the series truncated like h_ratio's rule.
    QuadForms at(double c, double tol = 1e-15, int j_cap = 60);

    int degree_bound() const { return degree_bound_; }

private:
    void ensure_terms(int j);

    int degree_bound_;
    ThetaParam theta_;
    std::vector<Rational> d_exact_;
    std::vector<std::vector<Rational>> n_exact_;
    std::vector<double> n_norms_;  // max |entry| per j, for the truncation rule

    // exact LDL^T of d_exact and the transformed per-j numerator matrices
    std::vector<Rational> linv_;                 // dense L^{-1}, unit lower triangular
    std::vector<Rational> diag_;                 // Dt, positive (exact PD certificate)
    std::vector<std::vector<double>> s_float_;   // per j: Dt^{-1/2} L^{-1} N_j L^{-T} Dt^{-1/2}
};

QuadForms quad_forms(int degree_bound, double c, const ThetaParam& theta, double tol = 1e-15);

}  // namespace zetagap
