#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "zetagap/errors.hpp"
#include "zetagap/optimizer.hpp"

using namespace zetagap;

TEST_CASE("diagonal generalized eigenproblem") {
    const QuadForms forms = QuadForms::from_dense(
        4, 1.0, {3, 0, 0, 0, 1, 0, 0, 0, 2}, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    const EigenResult res = min_rayleigh(forms);
    CHECK(res.mu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.a[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(res.a[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.a[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(res.residual < 1e-8);
}

TEST_CASE("2x2 hand-solved case") {
    // det(N - mu D) = (2 - mu)(1 - 2 mu) = 0, minimum mu = 1/2
    const QuadForms forms = QuadForms::from_dense(3, 1.0, {2, 0, 0, 1}, {1, 0, 0, 2});
    const EigenResult res = min_rayleigh(forms);
    CHECK(res.mu == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.residual < 1e-8);
}

TEST_CASE("indefinite D is rejected") {
    const QuadForms bad = QuadForms::from_dense(3, 1.0, {1, 0, 0, 1}, {1, 0, 0, -1});
    CHECK_THROWS_AS(min_rayleigh(bad), NotPositiveDefinite);
}

TEST_CASE("headline polynomial is feasible, so the minimum cannot exceed it") {
    const double c = 2.9 * std::numbers::pi;
    const QuadForms forms = quad_forms(6, c, ThetaParam::half());
    const EigenResult res = min_rayleigh(forms);
    CHECK(res.mu <= 0.99725 + 5e-5);
    CHECK(res.residual < 1e-8);
}

TEST_CASE("Rayleigh minimality against random probes") {
    const double c = 2.9 * std::numbers::pi;
    for (int m : {4, 6, 8}) {
        const QuadForms forms = quad_forms(m, c, ThetaParam::half());
        const EigenResult res = min_rayleigh(forms);
        CHECK(res.residual < 1e-8);
        std::mt19937 rng(53);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int probe = 0; probe < 32; ++probe) {
            std::vector<double> a(static_cast<std::size_t>(forms.dim()));
            double norm = 0.0;
            for (auto& v : a) {
                v = dist(rng);
                norm += v * v;
            }
            if (norm < 1e-12) continue;
            CHECK(res.mu <= forms.ratio(a) + 1e-12);
        }
    }
}

TEST_CASE("Cholesky succeeds through M = 12") {
    // D is c-independent; its positive definiteness is what matters
    for (int m = 2; m <= 12; ++m) {
        const QuadForms forms = quad_forms(m, 2.9 * std::numbers::pi, ThetaParam::half());
        CHECK_NOTHROW(min_rayleigh(forms));
    }
}

TEST_CASE("certification at the headline point") {
    const double c = 2.9 * std::numbers::pi;
    const CertifyResult res = certify_lambda(6, c, ThetaParam::half());
    CHECK(res.certified);
    REQUIRE(res.witness.has_value());
    CHECK(res.h_at_witness <= 0.99725 + 5e-5);
    // the certificate survives the exact pipeline, independent of the solver
    const RatioReport rep = h_ratio(*res.witness, c, ThetaParam::half());
    CHECK(rep.h < 1.0);
    CHECK(rep.h == doctest::Approx(res.h_at_witness));
}

TEST_CASE("small c always certifies") {
    const CertifyResult res = certify_lambda(2, 0.1, ThetaParam::half());
    CHECK(res.certified);
    CHECK(res.h_at_witness < 1e-3);
}

TEST_CASE("certification flips at the M = 2 crossing") {
    // dense-scan oracle on the single ray P = x^2: bracket where h crosses 1
    const ThetaParam theta = ThetaParam::half();
    const MollifierSpec x2 = MollifierSpec::from_dense({Rational(1)});
    double lo = std::numbers::pi, hi = 0.0;
    for (double c = lo; c < 10.0 * std::numbers::pi; c += 0.05) {
        if (h_ratio(x2, c, theta).h >= 1.0) {
            hi = c;
            break;
        }
        lo = c;
    }
    REQUIRE(hi > 0.0);
    CHECK(certify_lambda(2, lo, theta).certified);
    CHECK_FALSE(certify_lambda(2, hi, theta).certified);
}

TEST_CASE("max_lambda at M = 2 agrees with the dense-scan oracle") {
    const ThetaParam theta = ThetaParam::half();
    const LambdaCertificate cert = max_lambda(2, theta, 1e-6);

    // oracle: bisect h(c) = 1 on the ray P = x^2 directly through h_ratio
    const MollifierSpec x2 = MollifierSpec::from_dense({Rational(1)});
    double lo = std::numbers::pi, hi = 10.0 * std::numbers::pi;
    REQUIRE(h_ratio(x2, lo, theta).h < 1.0);
    REQUIRE(h_ratio(x2, hi, theta).h >= 1.0);
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (h_ratio(x2, mid, theta).h < 1.0 ? lo : hi) = mid;
    }
    CHECK(std::fabs(cert.c_star - lo) <= 2e-6);
    CHECK(cert.lambda == doctest::Approx(lo / std::numbers::pi).epsilon(1e-6));
}

TEST_CASE("max_lambda(6) reproduces the theorem") {
    const ThetaParam theta = ThetaParam::half();
    const LambdaCertificate cert = max_lambda(6, theta, 1e-6);
    CHECK(cert.lambda >= 2.9);
    CHECK(cert.h_at_witness < 1.0);
    CHECK(cert.c_star == doctest::Approx(cert.lambda * std::numbers::pi));

    // bisection postcondition
    CHECK(certify_lambda(6, cert.c_star - cert.tolerance_c, theta).certified);
    CHECK_FALSE(certify_lambda(6, cert.c_star + cert.tolerance_c, theta).certified);

    // the witness re-verifies through the exact pipeline, at c_star and just below
    CHECK(h_ratio(cert.witness, cert.c_star, theta).h < 1.0);
    CHECK(h_ratio(cert.witness, cert.c_star - cert.tolerance_c, theta).h < 1.0);
}

TEST_CASE("nested feasible sets: lambda(3) >= lambda(2)") {
    const ThetaParam theta = ThetaParam::half();
    const double l2 = max_lambda(2, theta, 1e-6).lambda;
    const double l3 = max_lambda(3, theta, 1e-6).lambda;
    CHECK(l3 >= l2 - 2e-6);
}

TEST_CASE("witness rationalization caps denominators") {
    const std::vector<double> a{0.123456789, -0.987654321, 1.0};
    const MollifierSpec w = rationalize_witness(a, 4);
    for (const auto& [k, v] : w.coeffs()) {
        CHECK(v.get_den() <= 1000000);
        // last convergent under cap Q: |x - p/q| < 1/(q Q)
        const double back = to_double(v);
        const double bound = 1.0 / (to_double(Rational(v.get_den())) * 1e6) + 1e-15;
        CHECK(std::fabs(back - a[static_cast<std::size_t>(k) - 2]) < bound);
    }
}
