#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zetagap/rational.hpp"

namespace zetagap {

// Per-prime local factors of the Euler products, all exact. The two product
// identities C_p^2 D_p = A_p and U1_p U2_p W_p = A_p hold per prime and are
// the strongest cross-check of the V1..V4 chain.
struct LocalFactors {
    std::int64_t p = 0;
    Rational A, C, D, U1, U2, W;
    Rational F, V1, V2, V3, V4;

    bool identities_hold() const { return C * C * D == A && U1 * U2 * W == A; }
};

struct EulerProductResult {
    std::string name;
    double value = 0.0;
    std::int64_t cutoff = 0;
    double tail_bound = 0.0;  // bound on |log(true/computed)|
};

// All factor formulas evaluated at s = 0, alpha = 0. Throws NotPrime.
LocalFactors local_factors(std::int64_t p);

// Names: "A", "C", "D", "U1", "U2", "W". Throws UnknownConstant.
// Requires cutoff >= 100 (the tail bounds are only claimed beyond 100).
EulerProductResult euler_product(const std::string& name, std::int64_t cutoff);

std::vector<EulerProductResult> all_euler_products(std::int64_t cutoff);

// Upper bound on p^2 |log f_p| valid for p > 100, per constant.
double tail_constant(const std::string& name);

const std::vector<std::string>& euler_constant_names();

// Sieve of Eratosthenes, primes <= n ascending.
std::vector<std::int64_t> sieve_primes(std::int64_t n);

bool is_prime(std::int64_t n);

// Exact identity check over all primes p <= bound; returns the first failing
// prime, or 0 when the identities hold everywhere.
std::int64_t first_identity_failure(std::int64_t bound);

}  // namespace zetagap
