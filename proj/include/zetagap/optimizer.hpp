#pragma once

#include <optional>
#include <vector>

#include "zetagap/functional.hpp"

namespace zetagap {

struct EigenResult {
    double mu = 0.0;            // minimal generalized eigenvalue of (N, D)
    std::vector<double> a;      // eigenvector, normalized so max-|entry| is +1
    double residual = 0.0;      // ||N a - mu D a||_inf / ||a||_inf
};

struct LambdaCertificate {
    int degree_bound = 0;
    double c_star = 0.0;
    double lambda = 0.0;        // c_star / pi
    MollifierSpec witness;      // rationalized eigenvector, exact-pipeline verified
    double h_at_witness = 0.0;
    double tolerance_c = 0.0;
};

// Minimize the Rayleigh quotient a^T N a / a^T D a: Cholesky of D, two-sided
// transform to an ordinary symmetric problem, cyclic Jacobi. Deterministic
// rotation order; sizes here never exceed a few dozen.
EigenResult min_rayleigh(const QuadForms& forms);

struct CertifyResult {
    bool certified = false;
    std::optional<MollifierSpec> witness;  // present iff certified
    double mu = 0.0;                       // eigensolver minimum
    double h_at_witness = 0.0;             // exact-pipeline value at the witness
};

// True iff the eigensolver minimum is < 1 AND the rationalized eigenvector
// re-verifies h < 1 through the exact pipeline. The eigensolver on its own is
// never accepted as evidence.
CertifyResult certify_lambda(int degree_bound, double c, const ThetaParam& theta);
CertifyResult certify_lambda(QuadFormBasis& basis, double c, const ThetaParam& theta);

// Largest certified c within tol_c, found by doubling from c = pi and
// bisecting. Throws BracketFailure if nothing fails below 10*pi.
LambdaCertificate max_lambda(int degree_bound, const ThetaParam& theta, double tol_c = 1e-6);

// Continued-fraction rounding of each eigenvector entry (denominator cap
// 10^6), producing the exact witness candidate.
MollifierSpec rationalize_witness(const std::vector<double>& a, int degree_bound,
                                  std::uint64_t max_den = 1000000);

}  // namespace zetagap
