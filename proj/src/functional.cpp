#include "zetagap/functional.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zetagap/errors.hpp"

namespace zetagap {

namespace {

// (1-x)^3
const RatPoly& cubic_weight() {
    static const RatPoly w(std::vector<Rational>{Rational(1), Rational(-3), Rational(3), Rational(-1)});
    return w;
}

}  // namespace

ThetaParam ThetaParam::of_theta_inv(const Rational& theta_inv) {
    if (theta_inv < 2) throw std::invalid_argument("theta_inv must be >= 2 (0 < theta <= 1/2)");
    ThetaParam t;
    t.theta_inv = theta_inv;
    t.theta = Rational(1) / theta_inv;
    return t;
}

MollifierSpec::MollifierSpec(int degree_bound, std::map<int, Rational> coeffs)
    : degree_bound_(degree_bound), coeffs_(std::move(coeffs)) {
    if (degree_bound_ < 2)
        throw std::invalid_argument("degree bound must be >= 2: no admissible polynomial has P(0)=P'(0)=0 otherwise");
    bool any = false;
    for (const auto& [k, a] : coeffs_) {
        if (k < 2 || k > degree_bound_)
            throw std::invalid_argument("coefficient index " + std::to_string(k) + " outside [2, M]");
        any = any || a != 0;
    }
    if (!any) throw std::invalid_argument("mollifier polynomial must be nonzero");
}

MollifierSpec MollifierSpec::from_dense(const std::vector<Rational>& a) {
    if (a.empty()) throw std::invalid_argument("empty coefficient list");
    std::map<int, Rational> m;
    for (std::size_t i = 0; i < a.size(); ++i) m[static_cast<int>(i) + 2] = a[i];
    return MollifierSpec(static_cast<int>(a.size()) + 1, std::move(m));
}

RatPoly MollifierSpec::to_poly() const {
    std::vector<Rational> c(static_cast<std::size_t>(degree_bound_) + 1, Rational(0));
    for (const auto& [k, a] : coeffs_) c[static_cast<std::size_t>(k)] = a;
    return RatPoly(std::move(c));
}

MollifierSpec MollifierSpec::scaled(const Rational& s) const {
    std::map<int, Rational> m;
    for (const auto& [k, a] : coeffs_) m[k] = a * s;
    return MollifierSpec(degree_bound_, std::move(m));
}

RatPoly denominator_poly(const MollifierSpec& P, const ThetaParam& theta) {
    const RatPoly p = P.to_poly();
    const RatPoly p1 = convolve_power(p, 1);
    const RatPoly p2 = convolve_power(p, 2);
    return cubic_weight() * (p1 * p1 * theta.theta_inv - p1 * p2 * Rational(2));
}

Rational h_denominator(const MollifierSpec& P) {
    const RatPoly p = P.to_poly();
    const RatPoly p1 = convolve_power(p, 1);
    const RatPoly p2 = convolve_power(p, 2);
    const Rational v = integrate_unit(cubic_weight() * (p1 * p1 - p1 * p2));
    if (v <= 0)
        throw DegenerateDenominator("second-moment denominator is not positive: " + to_string(v));
    return v;
}

RatPoly b_poly(int j, const MollifierSpec& P, const ThetaParam& theta) {
    if (j < 1) throw std::invalid_argument("b_poly requires j >= 1");
    const auto ju = static_cast<unsigned>(j);
    const RatPoly p = P.to_poly();
    const RatPoly p1 = convolve_power(p, 1);
    const RatPoly p2 = convolve_power(p, 2);
    const RatPoly p3 = convolve_power(p, 3);
    const RatPoly pj2 = convolve_power(p, ju + 2);
    const RatPoly pj3 = convolve_power(p, ju + 3);
    const Rational& th = theta.theta;

    Rational inv_j2(1, 1), inv_j3(1, 1), inv_j1(1, 1), inv_j(1, 1);
    inv_j2 = Rational(1) / Rational(factorial(ju + 2));
    inv_j3 = Rational(1) / Rational(factorial(ju + 3));
    inv_j1 = Rational(1) / Rational(factorial(ju + 1));
    inv_j = Rational(1) / Rational(factorial(ju));

    RatPoly acc = (p1 * pj2) * (Rational(-2) * inv_j2);
    acc = acc + (p2 * pj2) * (Rational(2) * th * inv_j2);
    acc = acc + (p1 * pj3) * (Rational(4) * th * inv_j3);
    acc = acc + (p1 * shifted_kernel_expand(p, ju + 2, theta.theta_inv)) * (-th * inv_j2);
    acc = acc + (p2 * shifted_kernel_expand(p, ju + 1, theta.theta_inv)) * (th * inv_j1);
    acc = acc + (p3 * shifted_kernel_expand(p, ju, theta.theta_inv)) * (-th * inv_j * Rational(1, 6));
    return acc;
}

Rational beta_coefficient(int j, const MollifierSpec& P, const ThetaParam& theta) {
    return integrate_unit(cubic_weight() * b_poly(j, P, theta));
}

namespace {

// w_j(c) = 2 theta^{2j} c^{2j+1} / (2j+1); at theta = 1/2 this is the printed
// weight c^{2j+1} / (2^{2j-1} (2j+1)).
class SeriesWeights {
public:
    SeriesWeights(double c, double theta) : c_(c), rho_(theta * theta * c * c), pow_(1.0) {}
    double next(int j) {
        pow_ *= rho_;  // theta^{2j} c^{2j}
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        return sign * 2.0 * c_ * pow_ / (2.0 * j + 1.0);
    }

private:
    double c_, rho_, pow_;
};

}  // namespace

RatioReport h_ratio(const MollifierSpec& P, double c, const ThetaParam& theta,
                    const RatioOptions& opts) {
    if (!(c > 0)) throw std::invalid_argument("h_ratio requires c > 0");
    if (!(opts.tol > 0)) throw std::invalid_argument("h_ratio requires tol > 0");
    if (!theta.is_half() && !opts.generalized_theta)
        throw std::invalid_argument(
            "theta != 1/2 requires the generalized-theta mode (excluded from acceptance)");

    RatioReport rep;
    rep.c = c;
    rep.theta = theta;
    rep.generalized_theta = !theta.is_half();
    // Equals h_denominator at theta = 1/2; the theta-dependent form otherwise.
    rep.denominator = integrate_unit(denominator_poly(P, theta)) * Rational(1, 2);
    if (rep.denominator <= 0)
        throw DegenerateDenominator("second-moment denominator is not positive: " +
                                    to_string(rep.denominator));

    SeriesWeights weights(c, to_double(theta.theta));
    double partial = 0.0;  // sum of w_j * (beta_{2j}/den), ascending j
    bool converged = false;
    for (int j = 1; j <= opts.j_cap; ++j) {
        const Rational beta = beta_coefficient(2 * j, P, theta);
        const double w = weights.next(j);
        if (!std::isfinite(w)) throw TruncationFailure("series weight overflowed at j = " + std::to_string(j));
        // The exact ratio makes h invariant under P -> s P bit for bit.
        const double term_over_den = w * to_double(beta / rep.denominator);
        partial += term_over_den;
        rep.beta.emplace_back(j, beta);
        rep.terms.emplace_back(j, w * to_double(beta));
        rep.j_used = j;
        if (std::fabs(term_over_den) < opts.tol * std::max(1.0, std::fabs(partial))) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw TruncationFailure("series cap " + std::to_string(opts.j_cap) +
                                " reached without meeting tolerance");
    rep.h = partial / (2.0 * std::numbers::pi);
    if (rep.h < 1.0) rep.lambda_implied = c / std::numbers::pi;
    return rep;
}

// ---------------------------------------------------------------------------
// quadratic forms

namespace {

inline std::size_t packed_index(int i, int j, int n) {
    // upper-triangular packed storage, i <= j
    return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i - 1) / 2 +
           static_cast<std::size_t>(j - i);
}

Rational bilinear_packed_exact(const std::vector<Rational>& m, const std::vector<Rational>& a) {
    const int n = static_cast<int>(a.size());
    Rational acc(0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rational v = m[packed_index(i, j, n)] * a[static_cast<std::size_t>(i)] *
                         a[static_cast<std::size_t>(j)];
            acc += (i == j) ? v : Rational(2) * v;
        }
    return acc;
}

}  // namespace

QuadFormBasis::QuadFormBasis(int degree_bound, ThetaParam theta)
    : degree_bound_(degree_bound), theta_(std::move(theta)) {
    if (degree_bound_ < 2) throw std::invalid_argument("degree bound must be >= 2");
    const int n = degree_bound_ - 1;
    d_exact_.resize(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i) {
        const RatPoly pk = RatPoly::monomial(static_cast<std::size_t>(i) + 2);
        for (int j = i; j < n; ++j) {
            const RatPoly pl = RatPoly::monomial(static_cast<std::size_t>(j) + 2);
            // polarization of the denominator integral
            const RatPoly p1k = convolve_power(pk, 1);
            const RatPoly p2k = convolve_power(pk, 2);
            const RatPoly p1l = convolve_power(pl, 1);
            const RatPoly p2l = convolve_power(pl, 2);
            // symmetric bilinear form of int (1-x)^3 (P1^2 - P1 P2):
            // B(Q,R) = int (1-x)^3 (Q1 R1 - (Q1 R2 + Q2 R1)/2)
            const RatPoly w(std::vector<Rational>{Rational(1), Rational(-3), Rational(3), Rational(-1)});
            const RatPoly cross = p1k * p1l - (p1k * p2l + p2k * p1l) * Rational(1, 2);
            d_exact_[packed_index(i, j, n)] = integrate_unit(w * cross);
        }
    }

    // exact LDL^T of D; the monomial Gram matrix is far too ill conditioned
    // for float factorization beyond M ~ 10
    std::vector<Rational> l(static_cast<std::size_t>(n) * n, Rational(0));
    diag_.assign(static_cast<std::size_t>(n), Rational(0));
    auto dref = [&](int i, int j) -> const Rational& {
        return d_exact_[packed_index(std::min(i, j), std::max(i, j), n)];
    };
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k <= i; ++k) {
            Rational s = dref(i, k);
            for (int m = 0; m < k; ++m)
                s -= l[static_cast<std::size_t>(i) * n + m] * diag_[static_cast<std::size_t>(m)] *
                     l[static_cast<std::size_t>(k) * n + m];
            if (i == k) {
                if (s <= 0)
                    throw NotPositiveDefinite("exact LDL^T pivot " + std::to_string(i) +
                                              " is not positive");
                diag_[static_cast<std::size_t>(i)] = s;
                l[static_cast<std::size_t>(i) * n + i] = 1;
            } else {
                l[static_cast<std::size_t>(i) * n + k] = s / diag_[static_cast<std::size_t>(k)];
            }
        }
    }
    // L^{-1} by forward substitution on identity columns (unit lower triangular)
    linv_.assign(static_cast<std::size_t>(n) * n, Rational(0));
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) {
            Rational s = (i == col) ? Rational(1) : Rational(0);
            for (int m = 0; m < i; ++m)
                s -= l[static_cast<std::size_t>(i) * n + m] * linv_[static_cast<std::size_t>(m) * n + col];
            linv_[static_cast<std::size_t>(i) * n + col] = s;
        }
    }
}

void QuadFormBasis::ensure_terms(int j) {
    const int n = degree_bound_ - 1;
    while (static_cast<int>(n_exact_.size()) < j) {
        const int jj = static_cast<int>(n_exact_.size()) + 1;  // series index
        std::vector<Rational> mat(static_cast<std::size_t>(n) * (n + 1) / 2);
        double norm = 0.0;
        for (int a = 0; a < n; ++a) {
            for (int b = a; b < n; ++b) {
                const int k = a + 2, l = b + 2;
                Rational v;
                if (a == b) {
                    v = beta_coefficient(2 * jj, MollifierSpec(k, {{k, Rational(1)}}), theta_);
                } else {
                    // B_bil(x^k, x^l) = (beta(x^k + x^l) - beta(x^k - x^l)) / 4
                    const MollifierSpec plus(l, {{k, Rational(1)}, {l, Rational(1)}});
                    const MollifierSpec minus(l, {{k, Rational(1)}, {l, Rational(-1)}});
                    v = (beta_coefficient(2 * jj, plus, theta_) -
                         beta_coefficient(2 * jj, minus, theta_)) *
                        Rational(1, 4);
                }
                mat[packed_index(a, b, n)] = v;
                norm = std::max(norm, std::fabs(to_double(v)));
            }
        }

        // S_j = Dt^{-1/2} L^{-1} N_j L^{-T} Dt^{-1/2}, transform done exactly
        std::vector<Rational> full(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                full[static_cast<std::size_t>(a) * n + b] =
                    mat[packed_index(std::min(a, b), std::max(a, b), n)];
        std::vector<Rational> tmp(static_cast<std::size_t>(n) * n, Rational(0));  // L^{-1} N_j
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Rational s(0);
                for (int m = 0; m <= a; ++m)
                    s += linv_[static_cast<std::size_t>(a) * n + m] *
                         full[static_cast<std::size_t>(m) * n + b];
                tmp[static_cast<std::size_t>(a) * n + b] = s;
            }
        std::vector<double> sj(static_cast<std::size_t>(n) * n, 0.0);
        for (int a = 0; a < n; ++a) {
            const double sa = std::sqrt(to_double(diag_[static_cast<std::size_t>(a)]));
            for (int b = a; b < n; ++b) {
                Rational s(0);
                for (int m = 0; m <= b; ++m)
                    s += tmp[static_cast<std::size_t>(a) * n + m] *
                         linv_[static_cast<std::size_t>(b) * n + m];
                const double sb = std::sqrt(to_double(diag_[static_cast<std::size_t>(b)]));
                const double v = to_double(s) / (sa * sb);
                sj[static_cast<std::size_t>(a) * n + b] = v;
                sj[static_cast<std::size_t>(b) * n + a] = v;
            }
        }

        n_exact_.push_back(std::move(mat));
        n_norms_.push_back(norm);
        s_float_.push_back(std::move(sj));
    }
}

QuadForms QuadFormBasis::at(double c, double tol, int j_cap) {
    if (!(c > 0)) throw std::invalid_argument("quad_forms requires c > 0");
    QuadForms f;
    f.degree_bound_ = degree_bound_;
    f.c_ = c;
    f.theta_ = theta_;
    f.d_exact_ = d_exact_;

    const int n = degree_bound_ - 1;
    std::vector<double> nmat(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> smat(static_cast<std::size_t>(n) * n, 0.0);
    SeriesWeights weights(c, to_double(theta_.theta));
    double scale = 0.0;  // running max |w_j| * ||N_j||_max
    int consecutive_small = 0;
    bool converged = false;
    for (int j = 1; j <= j_cap; ++j) {
        ensure_terms(j);
        const double w = weights.next(j);
        if (!std::isfinite(w)) throw TruncationFailure("series weight overflowed at j = " + std::to_string(j));
        f.weights_.push_back(w);
        f.n_exact_.push_back(n_exact_[static_cast<std::size_t>(j) - 1]);
        const auto& mat = n_exact_[static_cast<std::size_t>(j) - 1];
        const auto& sj = s_float_[static_cast<std::size_t>(j) - 1];
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                const double v = w * to_double(mat[packed_index(a, b, n)]);
                nmat[static_cast<std::size_t>(a) * n + b] += v;
                if (a != b) nmat[static_cast<std::size_t>(b) * n + a] += v;
                const double sv = w * sj[static_cast<std::size_t>(a) * n + b];
                smat[static_cast<std::size_t>(a) * n + b] += sv;
                if (a != b) smat[static_cast<std::size_t>(b) * n + a] += sv;
            }
        const double contribution = std::fabs(w) * n_norms_[static_cast<std::size_t>(j) - 1];
        scale = std::max(scale, contribution);
        // beta signs flip at j-dependent places, so require two consecutive
        // below-tolerance contributions before stopping
        consecutive_small = contribution < tol * std::max(1.0, scale) ? consecutive_small + 1 : 0;
        if (consecutive_small >= 2) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw TruncationFailure("quad-form series cap " + std::to_string(j_cap) +
                                " reached without meeting tolerance");

    // the 1/2pi and denominator are kept out of the matrices: h = a^T N a / a^T D a
    // requires N to absorb 1/(2 pi)
    for (auto& v : nmat) v /= 2.0 * std::numbers::pi;
    for (auto& v : smat) v /= 2.0 * std::numbers::pi;
    for (auto& w : f.weights_) w /= 2.0 * std::numbers::pi;

    f.n_float_ = std::move(nmat);
    f.s_float_ = std::move(smat);
    f.d_float_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            const double v = to_double(d_exact_[packed_index(a, b, n)]);
            f.d_float_[static_cast<std::size_t>(a) * n + b] = v;
            f.d_float_[static_cast<std::size_t>(b) * n + a] = v;
        }
    f.linv_float_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            f.linv_float_[static_cast<std::size_t>(a) * n + b] =
                to_double(linv_[static_cast<std::size_t>(a) * n + b]);
    f.inv_sqrt_diag_.assign(static_cast<std::size_t>(n), 0.0);
    for (int a = 0; a < n; ++a)
        f.inv_sqrt_diag_[static_cast<std::size_t>(a)] =
            1.0 / std::sqrt(to_double(diag_[static_cast<std::size_t>(a)]));
    return f;
}

std::vector<double> QuadForms::back_transform(const std::vector<double>& y) const {
    const int n = dim();
    if (static_cast<int>(y.size()) != n || !has_exact_transform())
        throw std::invalid_argument("back_transform needs the exact-transform data");
    // a = L^{-T} Dt^{-1/2} y
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] * inv_sqrt_diag_[static_cast<std::size_t>(i)];
    std::vector<double> a(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int m = i; m < n; ++m)  // (L^{-T})[i][m] = L^{-1}[m][i]
            s += linv_float_[static_cast<std::size_t>(m) * n + i] * w[static_cast<std::size_t>(m)];
        a[static_cast<std::size_t>(i)] = s;
    }
    return a;
}

double QuadForms::ratio(std::span<const double> a) const {
    const int n = dim();
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("vector length mismatch");
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            num += a[static_cast<std::size_t>(i)] * n_float_[static_cast<std::size_t>(i) * n + j] *
                   a[static_cast<std::size_t>(j)];
            den += a[static_cast<std::size_t>(i)] * d_float_[static_cast<std::size_t>(i) * n + j] *
                   a[static_cast<std::size_t>(j)];
        }
    if (!(den > 0)) throw DegenerateDenominator("a^T D a is not positive");
    return num / den;
}

double QuadForms::ratio_exact(const std::vector<Rational>& a) const {
    const int n = dim();
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("vector length mismatch");
    const Rational den = bilinear_packed_exact(d_exact_, a);
    if (den <= 0) throw DegenerateDenominator("a^T D a is not positive");
    double acc = 0.0;
    for (std::size_t j = 0; j < n_exact_.size(); ++j) {
        const Rational num_j = bilinear_packed_exact(n_exact_[j], a);
        acc += weights_[j] * to_double(num_j / den);
    }
    return acc;
}

QuadForms QuadForms::from_dense(int degree_bound, double c, std::vector<double> n_matrix,
                                std::vector<double> d_matrix) {
    const int n = degree_bound - 1;
    if (n < 1 || n_matrix.size() != static_cast<std::size_t>(n) * n ||
        d_matrix.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("matrix dimensions do not match degree bound");
    QuadForms f;
    f.degree_bound_ = degree_bound;
    f.c_ = c;
    f.theta_ = ThetaParam::half();
    f.n_float_ = std::move(n_matrix);
    f.d_float_ = std::move(d_matrix);
    return f;
}

QuadForms quad_forms(int degree_bound, double c, const ThetaParam& theta, double tol) {
    QuadFormBasis basis(degree_bound, theta);
    return basis.at(c, tol);
}

}  // namespace zetagap
