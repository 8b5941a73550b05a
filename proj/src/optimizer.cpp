#include "zetagap/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zetagap/errors.hpp"

namespace zetagap {

namespace {

// Lower-triangular Cholesky of a dense symmetric matrix (row-major).
std::vector<double> cholesky(const std::vector<double>& m, int n) {
    std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                s -= l[static_cast<std::size_t>(i) * n + k] * l[static_cast<std::size_t>(j) * n + k];
            if (i == j) {
                if (!(s > 0.0))
                    throw NotPositiveDefinite("Cholesky pivot " + std::to_string(i) +
                                              " is not positive");
                l[static_cast<std::size_t>(i) * n + i] = std::sqrt(s);
            } else {
                l[static_cast<std::size_t>(i) * n + j] = s / l[static_cast<std::size_t>(j) * n + j];
            }
        }
    }
    return l;
}

// Solve L x = b in place.
void forward_solve(const std::vector<double>& l, int n, std::vector<double>& b) {
    for (int i = 0; i < n; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) s -= l[static_cast<std::size_t>(i) * n + k] * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = s / l[static_cast<std::size_t>(i) * n + i];
    }
}

// Solve L^T x = b in place.
void backward_solve(const std::vector<double>& l, int n, std::vector<double>& b) {
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) s -= l[static_cast<std::size_t>(k) * n + i] * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = s / l[static_cast<std::size_t>(i) * n + i];
    }
}

double off_diagonal_norm(const std::vector<double>& s, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) acc += s[static_cast<std::size_t>(i) * n + j] * s[static_cast<std::size_t>(i) * n + j];
    return std::sqrt(acc);
}

// Cyclic Jacobi on a symmetric matrix; accumulates rotations into v.
// Deterministic sweep order (row-major over the strict upper triangle).
void jacobi_eigen(std::vector<double>& s, std::vector<double>& v, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] = (i == j) ? 1.0 : 0.0;
    double frob = 0.0;
    for (double x : s) frob += x * x;
    const double stop = 1e-13 * std::max(1.0, std::sqrt(frob));
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(s, n) < stop) return;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = s[static_cast<std::size_t>(p) * n + q];
                if (apq == 0.0) continue;
                const double app = s[static_cast<std::size_t>(p) * n + p];
                const double aqq = s[static_cast<std::size_t>(q) * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                for (int k = 0; k < n; ++k) {
                    const double skp = s[static_cast<std::size_t>(k) * n + p];
                    const double skq = s[static_cast<std::size_t>(k) * n + q];
                    s[static_cast<std::size_t>(k) * n + p] = cs * skp - sn * skq;
                    s[static_cast<std::size_t>(k) * n + q] = sn * skp + cs * skq;
                }
                for (int k = 0; k < n; ++k) {
                    const double spk = s[static_cast<std::size_t>(p) * n + k];
                    const double sqk = s[static_cast<std::size_t>(q) * n + k];
                    s[static_cast<std::size_t>(p) * n + k] = cs * spk - sn * sqk;
                    s[static_cast<std::size_t>(q) * n + k] = sn * spk + cs * sqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[static_cast<std::size_t>(k) * n + p];
                    const double vkq = v[static_cast<std::size_t>(k) * n + q];
                    v[static_cast<std::size_t>(k) * n + p] = cs * vkp - sn * vkq;
                    v[static_cast<std::size_t>(k) * n + q] = sn * vkp + cs * vkq;
                }
            }
        }
    }
    if (off_diagonal_norm(s, n) >= stop)
        throw std::runtime_error("Jacobi iteration failed to converge");
}

std::vector<double> mat_vec(const std::vector<double>& m, int n, const std::vector<double>& x) {
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += m[static_cast<std::size_t>(i) * n + j] * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

double inf_norm(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

}  // namespace

EigenResult min_rayleigh(const QuadForms& forms) {
    const int n = forms.dim();
    const auto& nf = forms.n_float();
    const auto& df = forms.d_float();

    if (forms.has_exact_transform()) {
        // S carries the generalized spectrum of (N, D) after the exact
        // congruence, so plain Jacobi suffices regardless of how badly the
        // monomial Gram matrix D is conditioned.
        std::vector<double> s = forms.s_float();
        std::vector<double> v(static_cast<std::size_t>(n) * n);
        jacobi_eigen(s, v, n);
        int min_idx = 0;
        for (int i = 1; i < n; ++i)
            if (s[static_cast<std::size_t>(i) * n + i] < s[static_cast<std::size_t>(min_idx) * n + min_idx])
                min_idx = i;
        const double mu = s[static_cast<std::size_t>(min_idx) * n + min_idx];
        std::vector<double> y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            y[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i) * n + min_idx];
        std::vector<double> a = forms.back_transform(y);

        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (std::fabs(a[static_cast<std::size_t>(i)]) > std::fabs(a[static_cast<std::size_t>(arg)])) arg = i;
        const double piv = a[static_cast<std::size_t>(arg)];
        for (auto& x : a) x /= piv;

        EigenResult res;
        res.mu = mu;
        res.a = std::move(a);
        const auto na = mat_vec(nf, n, res.a);
        const auto da = mat_vec(df, n, res.a);
        std::vector<double> r(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            r[static_cast<std::size_t>(i)] =
                na[static_cast<std::size_t>(i)] - mu * da[static_cast<std::size_t>(i)];
        res.residual = inf_norm(r) / inf_norm(res.a);
        return res;
    }

    // Fallback for externally supplied dense matrices: float Cholesky with
    // diagonal pre-scaling. The generalized eigenproblem is invariant under
    // congruence, and the eigenvector maps back exactly.
    std::vector<double> scale(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double dii = df[static_cast<std::size_t>(i) * n + i];
        if (!(dii > 0.0)) throw NotPositiveDefinite("D has a non-positive diagonal entry");
        scale[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(dii);
    }
    std::vector<double> ns(static_cast<std::size_t>(n) * n), ds(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double f = scale[static_cast<std::size_t>(i)] * scale[static_cast<std::size_t>(j)];
            ns[static_cast<std::size_t>(i) * n + j] = nf[static_cast<std::size_t>(i) * n + j] * f;
            ds[static_cast<std::size_t>(i) * n + j] = df[static_cast<std::size_t>(i) * n + j] * f;
        }

    const std::vector<double> l = cholesky(ds, n);

    // S = L^{-1} N L^{-T}, formed column by column
    std::vector<double> s(static_cast<std::size_t>(n) * n);
    {
        // first W = L^{-1} N  (solve L W = N column-wise)
        std::vector<double> col(static_cast<std::size_t>(n));
        std::vector<double> w(static_cast<std::size_t>(n) * n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = ns[static_cast<std::size_t>(i) * n + j];
            forward_solve(l, n, col);
            for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i) * n + j] = col[static_cast<std::size_t>(i)];
        }
        // S = W L^{-T}: S^T = L^{-1} W^T, solve per row of W
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) col[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(i) * n + j];
            forward_solve(l, n, col);
            for (int j = 0; j < n; ++j) s[static_cast<std::size_t>(i) * n + j] = col[static_cast<std::size_t>(j)];
        }
        // enforce symmetry lost to rounding
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double avg = 0.5 * (s[static_cast<std::size_t>(i) * n + j] +
                                          s[static_cast<std::size_t>(j) * n + i]);
                s[static_cast<std::size_t>(i) * n + j] = avg;
                s[static_cast<std::size_t>(j) * n + i] = avg;
            }
    }

    std::vector<double> v(static_cast<std::size_t>(n) * n);
    jacobi_eigen(s, v, n);

    int min_idx = 0;
    for (int i = 1; i < n; ++i)
        if (s[static_cast<std::size_t>(i) * n + i] < s[static_cast<std::size_t>(min_idx) * n + min_idx])
            min_idx = i;
    const double mu = s[static_cast<std::size_t>(min_idx) * n + min_idx];

    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i) * n + min_idx];
    backward_solve(l, n, y);  // y := L^{-T} y
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] *= scale[static_cast<std::size_t>(i)];

    // normalize: largest-magnitude entry becomes +1
    int arg = 0;
    for (int i = 1; i < n; ++i)
        if (std::fabs(y[static_cast<std::size_t>(i)]) > std::fabs(y[static_cast<std::size_t>(arg)])) arg = i;
    const double piv = y[static_cast<std::size_t>(arg)];
    for (auto& x : y) x /= piv;

    EigenResult res;
    res.mu = mu;
    res.a = y;
    const auto na = mat_vec(nf, n, res.a);
    const auto da = mat_vec(df, n, res.a);
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        r[static_cast<std::size_t>(i)] = na[static_cast<std::size_t>(i)] - mu * da[static_cast<std::size_t>(i)];
    res.residual = inf_norm(r) / inf_norm(res.a);
    return res;
}

MollifierSpec rationalize_witness(const std::vector<double>& a, int degree_bound,
                                  std::uint64_t max_den) {
    std::map<int, Rational> coeffs;
    for (std::size_t i = 0; i < a.size(); ++i)
        coeffs[static_cast<int>(i) + 2] = rationalize(a[i], max_den);
    return MollifierSpec(degree_bound, std::move(coeffs));
}

CertifyResult certify_lambda(QuadFormBasis& basis, double c, const ThetaParam& theta) {
    if (!(c > 0)) throw std::invalid_argument("certify_lambda requires c > 0");
    CertifyResult out;
    const QuadForms forms = basis.at(c);
    const EigenResult eig = min_rayleigh(forms);
    out.mu = eig.mu;
    if (!(eig.mu < 1.0)) return out;

    // Soundness does not rest on the eigensolver: round the witness to exact
    // rationals and push it through the exact series pipeline.
    MollifierSpec witness = rationalize_witness(eig.a, basis.degree_bound());
    const RatioReport rep = h_ratio(witness, c, theta);
    out.h_at_witness = rep.h;
    if (rep.h < 1.0) {
        out.certified = true;
        out.witness = std::move(witness);
    }
    return out;
}

CertifyResult certify_lambda(int degree_bound, double c, const ThetaParam& theta) {
    QuadFormBasis basis(degree_bound, theta);
    return certify_lambda(basis, c, theta);
}

LambdaCertificate max_lambda(int degree_bound, const ThetaParam& theta, double tol_c) {
    if (!(tol_c > 0)) throw std::invalid_argument("tol_c must be positive");
    QuadFormBasis basis(degree_bound, theta);
    const double pi = std::numbers::pi;
    const double c_ceiling = 10.0 * pi;

    double lo = pi;
    CertifyResult lo_result = certify_lambda(basis, lo, theta);
    // h -> 0 as c -> 0, so shrink until some c certifies
    while (!lo_result.certified) {
        lo /= 2.0;
        if (lo < 1e-6)
            throw BracketFailure("no certifiable c found above 1e-6");
        lo_result = certify_lambda(basis, lo, theta);
    }

    double hi = 0.0;
    for (double c = lo * 2.0;; c *= 2.0) {
        c = std::min(c, c_ceiling);
        const CertifyResult r = certify_lambda(basis, c, theta);
        if (!r.certified) {
            hi = c;
            break;
        }
        lo = c;
        lo_result = r;
        if (c >= c_ceiling)
            throw BracketFailure("h stayed below 1 up to c = 10*pi; bracket not found");
    }

    while (hi - lo > tol_c) {
        const double mid = 0.5 * (lo + hi);
        const CertifyResult r = certify_lambda(basis, mid, theta);
        if (r.certified) {
            lo = mid;
            lo_result = r;
        } else {
            hi = mid;
        }
    }

    LambdaCertificate cert{.degree_bound = degree_bound,
                           .c_star = lo,
                           .lambda = lo / pi,
                           .witness = *lo_result.witness,
                           .h_at_witness = lo_result.h_at_witness,
                           .tolerance_c = tol_c};
    return cert;
}

}  // namespace zetagap
