#include "zetagap/ratpoly.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace zetagap {

double to_double(const Rational& r) { return mpq_get_d(r.get_mpq_t()); }

Rational parse_rational(const std::string& text) {
    std::string s = text;
    // strip surrounding whitespace
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
    s = s.substr(b, e - b + 1);

    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos)
            throw std::invalid_argument("rational literal mixes '.' and '/': " + text);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("bad rational literal: " + text);
        BigInt num;
        if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        BigInt den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational literal: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

namespace {
constexpr unsigned kFactorialCap = 2 * 60 + 4;  // series cap 60 needs (2j+3)!
}

const BigInt& factorial(unsigned n) {
    static std::vector<BigInt> table;
    static std::once_flag once;
    std::call_once(once, [] {
        table.resize(kFactorialCap + 1);
        table[0] = 1;
        for (unsigned i = 1; i <= kFactorialCap; ++i) table[i] = table[i - 1] * i;
    });
    if (n <= kFactorialCap) return table[n];
    throw std::invalid_argument("factorial index beyond series cap: " + std::to_string(n));
}

BigInt binomial(unsigned n, unsigned k) {
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Rational rationalize(double x, std::uint64_t max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize non-finite value");
    if (max_den == 0) throw std::invalid_argument("max_den must be positive");
    const bool neg = x < 0;
    double y = std::fabs(x);

    // convergents h_k / k_k of the continued fraction of y
    std::uint64_t h_prev = 1, h = static_cast<std::uint64_t>(std::floor(y));
    std::uint64_t k_prev = 0, k = 1;
    double frac = y - std::floor(y);
    for (int iter = 0; iter < 64 && frac > 1e-18; ++iter) {
        y = 1.0 / frac;
        const double fl = std::floor(y);
        if (fl > 9e18) break;
        const auto a = static_cast<std::uint64_t>(fl);
        if (a != 0 && k > (max_den - k_prev) / a) break;  // next denominator would overflow the cap
        const std::uint64_t h_next = a * h + h_prev;
        const std::uint64_t k_next = a * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        frac = y - fl;
    }
    Rational r(BigInt(static_cast<unsigned long>(h)), BigInt(static_cast<unsigned long>(k)));
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

RatPoly::RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::monomial(std::size_t k, const Rational& c) {
    if (c == 0) return RatPoly();
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return RatPoly(std::move(v));
}

Rational RatPoly::coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

void RatPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPoly RatPoly::operator+(const RatPoly& rhs) const {
    std::vector<Rational> out(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + rhs.coeff(i);
    return RatPoly(std::move(out));
}

RatPoly RatPoly::operator-(const RatPoly& rhs) const { return *this + (-rhs); }

RatPoly RatPoly::operator-() const {
    std::vector<Rational> out(coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -coeffs_[i];
    return RatPoly(std::move(out));
}

RatPoly RatPoly::operator*(const RatPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return RatPoly();
    std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    return RatPoly(std::move(out));
}

RatPoly RatPoly::operator*(const Rational& s) const {
    if (s == 0) return RatPoly();
    std::vector<Rational> out(coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] * s;
    return RatPoly(std::move(out));
}

Rational RatPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double RatPoly::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (coeffs_.size() <= 1) return RatPoly();
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        out[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
    return RatPoly(std::move(out));
}

RatPoly convolve_power(const RatPoly& p, unsigned r) {
    if (p.is_zero()) return RatPoly();
    const auto& c = p.coeffs();
    std::vector<Rational> out(c.size() + r + 1, Rational(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        Rational beta(factorial(r) * factorial(static_cast<unsigned>(k)),
                      factorial(r + static_cast<unsigned>(k) + 1));
        beta.canonicalize();
        out[r + k + 1] = c[k] * beta;
    }
    return RatPoly(std::move(out));
}

Rational integrate_unit(const RatPoly& p) {
    Rational acc(0);
    const auto& c = p.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k)
        acc += c[k] / Rational(static_cast<long>(k) + 1);
    return acc;
}

RatPoly shifted_kernel_expand(const RatPoly& p, unsigned k, const Rational& theta_inv) {
    std::vector<Rational> powers(k + 1);  // powers[e] = theta_inv^e
    powers[0] = 1;
    for (unsigned e = 1; e <= k; ++e) powers[e] = powers[e - 1] * theta_inv;
    RatPoly acc;
    for (unsigned i = 0; i <= k; ++i) {
        Rational coef(binomial(k, i) * (i % 2 == 0 ? 1 : -1));
        coef *= powers[k - i];
        acc = acc + convolve_power(p, i + 1) * coef;
    }
    return acc;
}

}  // namespace zetagap
