#include "zetagap/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "zetagap/errors.hpp"

namespace zetagap {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::int64_t> sieve_primes(std::int64_t n) {
    if (n < 2) return {};
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    std::vector<std::int64_t> primes;
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        primes.push_back(i);
        for (std::int64_t k = i * i; k <= n; k += i) composite[static_cast<std::size_t>(k)] = true;
    }
    return primes;
}

LocalFactors local_factors(std::int64_t p) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    LocalFactors lf;
    lf.p = p;
    const Rational one(1);
    const Rational inv_p = make_rational(1, p);
    const Rational q = one - inv_p;  // 1 - 1/p, also F(p) at alpha = 0

    lf.F = q;
    // V1, U1 come from the factor 1 - 2 F(p)^2 / (phi(p) p^{s+a1}) at s = 0,
    // alpha = 0, where phi(p) = p - 1.
    const Rational v1_inv = one - Rational(2) * q * q / Rational(p - 1);
    lf.V1 = one / v1_inv;
    lf.U1 = v1_inv / (q * q);

    const Rational two_v1_over_p = Rational(2) * lf.V1 * inv_p;
    lf.V2 = one / (one + two_v1_over_p);
    lf.V3 = (one + Rational(2) * inv_p) * lf.V2;
    const Rational v4_inv = one + two_v1_over_p * (one + Rational(2) * inv_p) * lf.V2;
    lf.V4 = one / v4_inv;
    lf.U2 = (one + two_v1_over_p) * v4_inv * q * q * q * q;

    const Rational w_core = one + Rational(2) * lf.F * lf.V1 * lf.V3 * lf.V4 * inv_p +
                            Rational(4) * lf.F * lf.F * lf.V1 * lf.V2 * lf.V4 * inv_p;
    lf.W = w_core * q * q * q * q * q * q;

    lf.A = (one + Rational(8) * inv_p) * q * q * q * q * q * q * q * q;
    lf.C = (one + Rational(2) * inv_p) * q * q;
    const Rational d_core =
        one + Rational(4 * (p - 1)) / Rational(p * p) / ((one + Rational(2) * inv_p) * (one + Rational(2) * inv_p));
    lf.D = d_core * q * q * q * q;
    return lf;
}

namespace {

const Rational& factor_by_name(const LocalFactors& lf, const std::string& name) {
    if (name == "A") return lf.A;
    if (name == "C") return lf.C;
    if (name == "D") return lf.D;
    if (name == "U1") return lf.U1;
    if (name == "U2") return lf.U2;
    if (name == "W") return lf.W;
    throw UnknownConstant("unknown Euler-product constant: " + name);
}

}  // namespace

const std::vector<std::string>& euler_constant_names() {
    static const std::vector<std::string> names{"A", "C", "D", "U1", "U2", "W"};
    return names;
}

double tail_constant(const std::string& name) {
    // Upper bounds on p^2 |log f_p| for p > 100. The 1/p^2 coefficients of
    // log f_p are -36, -3, -30, 1, 2, -39; margins cover the 1/p^3 tails
    // (verified over the sieve range in the test suite).
    if (name == "A") return 40.0;
    if (name == "C") return 4.0;
    if (name == "D") return 34.0;
    if (name == "U1") return 2.0;
    if (name == "U2") return 3.0;
    if (name == "W") return 44.0;
    throw UnknownConstant("unknown Euler-product constant: " + name);
}

EulerProductResult euler_product(const std::string& name, std::int64_t cutoff) {
    if (cutoff < 100) throw std::invalid_argument("cutoff must be >= 100");
    tail_constant(name);  // validates the name
    EulerProductResult res;
    res.name = name;
    res.cutoff = cutoff;
    double value = 1.0;
    for (std::int64_t p : sieve_primes(cutoff))
        value *= to_double(factor_by_name(local_factors(p), name));
    res.value = value;
    // sum_{p > cutoff} |log f_p| <= K sum_{n > cutoff} 1/n^2 < K / cutoff
    res.tail_bound = tail_constant(name) / static_cast<double>(cutoff);
    return res;
}

std::vector<EulerProductResult> all_euler_products(std::int64_t cutoff) {
    if (cutoff < 100) throw std::invalid_argument("cutoff must be >= 100");
    const auto primes = sieve_primes(cutoff);
    std::vector<EulerProductResult> results;
    for (const auto& name : euler_constant_names())
        results.push_back({name, 1.0, cutoff, tail_constant(name) / static_cast<double>(cutoff)});
    for (std::int64_t p : primes) {
        const LocalFactors lf = local_factors(p);
        for (auto& r : results) r.value *= to_double(factor_by_name(lf, r.name));
    }
    return results;
}

std::int64_t first_identity_failure(std::int64_t bound) {
    for (std::int64_t p : sieve_primes(bound))
        if (!local_factors(p).identities_hold()) return p;
    return 0;
}

}  // namespace zetagap
