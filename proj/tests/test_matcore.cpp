// Matrix kernel tests.  Derived expectations are computed by independent
// oracles (power iteration, reconstruction, Horner) rather than by the code
// under test.

#include <catch2/catch_amalgamated.hpp>

#include "ozkit/matcore.hpp"
#include "ozkit/rng.hpp"

using namespace ozkit;

namespace {

// independent largest-singular-value oracle: power iteration on m*·m
double power_iteration_norm(const CMat& m, int iters = 3000) {
    const CMat g = m.adjoint() * m;
    Rand rng(42);
    CVec v = CVec::Zero(m.cols());
    for (int i = 0; i < v.size(); ++i) v(i) = rng.cnormal();
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        CVec w = g * v;
        lambda = w.norm();
        if (lambda == 0.0) return 0.0;
        v = w / lambda;
    }
    return std::sqrt(lambda);
}

} // namespace

TEST_CASE("op_norm basics") {
    CHECK(op_norm(CMat::Identity(2, 2)) == Catch::Approx(1.0).margin(1e-14));

    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = cd(0.0, -4.0);
    CHECK(op_norm(d) == Catch::Approx(4.0).margin(1e-12));

    CHECK(op_norm(CMat::Zero(3, 3)) == 0.0);

    Rand rng(7);
    const CMat m = gaussian_matrix(rng, 5, 5);
    CHECK(std::abs(op_norm(m) - power_iteration_norm(m)) <= 1e-10);
}

TEST_CASE("herm_eig") {
    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 1.0;
    const HermEig e = herm_eig(d);
    CHECK(e.eigenvalues(0) == Catch::Approx(1.0).margin(1e-13));
    CHECK(e.eigenvalues(1) == Catch::Approx(2.0).margin(1e-13));

    CMat flip(2, 2);
    flip << 0, 1, 1, 0;
    const HermEig f = herm_eig(flip);
    CHECK(f.eigenvalues(0) == Catch::Approx(-1.0).margin(1e-13));
    CHECK(f.eigenvalues(1) == Catch::Approx(1.0).margin(1e-13));

    Rand rng(11);
    const CMat h = hermitian_gaussian(rng, 6);
    const HermEig he = herm_eig(h);
    const CMat rec = he.basis * he.eigenvalues.asDiagonal() * he.basis.adjoint();
    CHECK(op_norm(CMat(rec - h)) <= 1e-11);
    CHECK(op_norm(CMat(he.basis.adjoint() * he.basis - CMat::Identity(6, 6))) <= 1e-12);

    const CMat notherm = gaussian_matrix(rng, 3, 3);
    CHECK_THROWS_AS(herm_eig(notherm), NotHermitianError);
}

TEST_CASE("func_calc") {
    Rand rng(13);
    const CMat h = hermitian_gaussian(rng, 5);
    CHECK(op_norm(CMat(func_calc(h, [](double t) { return t; }) - h)) <= 1e-12);

    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    const CMat sq = func_calc(d, [](double t) { return t * t; });
    CHECK(std::abs(sq(0, 0) - cd(1, 0)) <= 1e-13);
    CHECK(std::abs(sq(1, 1) - cd(4, 0)) <= 1e-13);

    // fifth root recovers A from A^5 for PSD A (A constructed first)
    const CMat a = random_psd(rng, 4, 0.1, 2.0);
    const CMat a5 = a * a * a * a * a;
    CHECK(op_norm(CMat(func_calc(a5, [](double t) { return std::pow(std::max(t, 0.0), 0.2); }) - a)) <= 1e-9);

    // polynomial functional calculus equals Horner matrix evaluation
    const CMat m = hermitian_gaussian(rng, 5);
    const double c0 = 0.7, c1 = -1.3, c2 = 0.4, c3 = 2.0;
    const CMat horner =
        ((c3 * m + c2 * CMat::Identity(5, 5)) * m + c1 * CMat::Identity(5, 5)) * m + c0 * CMat::Identity(5, 5);
    const CMat fc = func_calc(m, [&](double t) { return ((c3 * t + c2) * t + c1) * t + c0; });
    CHECK(op_norm(CMat(fc - horner)) <= 1e-9);
}

TEST_CASE("spectral_projection") {
    Rand rng(17);
    const CMat h = hermitian_gaussian(rng, 6);
    const CMat all = spectral_projection(h, [](double) { return true; });
    CHECK(op_norm(CMat(all - CMat::Identity(6, 6))) <= 1e-12);

    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 0.1;
    d(1, 1) = 0.5;
    const CMat p = spectral_projection(d, [](double t) { return std::abs(t) <= 0.2; });
    CHECK(std::abs(p(0, 0) - cd(1, 0)) <= 1e-13);
    CHECK(std::abs(p(1, 1) - cd(0, 0)) <= 1e-13);

    // rank equals the number of accepted eigenvalues (median threshold)
    const HermEig e = herm_eig(h);
    const double median = e.eigenvalues(2);
    int accepted = 0;
    for (int i = 0; i < 6; ++i)
        if (std::abs(e.eigenvalues(i)) <= std::abs(median)) ++accepted;
    const double med_abs = std::abs(median);
    const CMat pm = spectral_projection(h, [med_abs](double t) { return std::abs(t) <= med_abs; });
    CHECK(static_cast<int>(std::round(pm.trace().real())) == accepted);

    // projection identities and commutation
    CHECK(op_norm(CMat(pm * pm - pm)) <= 1e-9);
    CHECK(op_norm(CMat(pm - pm.adjoint())) <= 1e-9);
    CHECK(op_norm(CMat(pm * h - h * pm)) <= 1e-9);
}

TEST_CASE("jordan_parts") {
    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -2.0;
    const auto [p, m] = jordan_parts(d);
    CHECK(std::abs(p(0, 0) - cd(1, 0)) <= 1e-13);
    CHECK(std::abs(m(1, 1) - cd(2, 0)) <= 1e-13);

    Rand rng(19);
    const CMat psd = random_psd(rng, 4, 0.0, 1.0);
    const auto [pp, pm] = jordan_parts(psd);
    CHECK(op_norm(CMat(pp - psd)) <= 1e-10);
    CHECK(op_norm(pm) <= 1e-10);

    const CMat h = hermitian_gaussian(rng, 6);
    const auto [hp, hm] = jordan_parts(h);
    CHECK(op_norm(CMat(hp - hm - h)) <= 1e-10);
    CHECK(op_norm(CMat(hp * hm)) <= 1e-10);
    CHECK(herm_eig(hp).eigenvalues.minCoeff() >= -1e-12);
    CHECK(herm_eig(hm).eigenvalues.minCoeff() >= -1e-12);
    CHECK(std::abs(op_norm(h) - std::max(op_norm(hp), op_norm(hm))) <= 1e-10);
}

TEST_CASE("real_imag") {
    Rand rng(23);
    const CMat h = hermitian_gaussian(rng, 4);
    const auto [re, im] = real_imag(h);
    CHECK(op_norm(CMat(re - h)) <= 1e-12);
    CHECK(op_norm(im) <= 1e-12);

    const CMat ii = cd(0, 1) * CMat::Identity(3, 3);
    const auto [r2, i2] = real_imag(ii);
    CHECK(op_norm(r2) <= 1e-13);
    CHECK(op_norm(CMat(i2 - CMat::Identity(3, 3))) <= 1e-13);

    const CMat x = gaussian_matrix(rng, 5, 5);
    const auto [xr, xi] = real_imag(x);
    CHECK(op_norm(CMat(xr + cd(0, 1) * xi - x)) <= 1e-12);
    CHECK(op_norm(xr) <= op_norm(x) + 1e-12);
    CHECK(op_norm(xi) <= op_norm(x) + 1e-12);
}

TEST_CASE("frac_power") {
    CHECK(op_norm(frac_power(CMat::Zero(3, 3), 0.3)) == 0.0);

    Rand rng(29);
    const CMat a = random_psd(rng, 4, 0.0, 2.0);
    CHECK(op_norm(CMat(frac_power(a, 1.0) - a)) <= 1e-10);

    // pseudo-inverse powers recover the support projection
    const CMat h = hermitian_gaussian(rng, 5);
    const CMat h2 = h * h;
    const CMat prod = frac_power(h2, 0.1) * frac_power(h2, -0.1);
    CHECK(op_norm(CMat(prod - support_projection(h))) <= 1e-9);

    CMat neg = CMat::Zero(2, 2);
    neg(0, 0) = -1.0;
    CHECK_THROWS_AS(frac_power(neg, 0.5), NotPsdError);

    // operator monotonicity of t^alpha on PSD pairs A <= B
    for (int trial = 0; trial < 20; ++trial) {
        Rand sub = rng.fork(static_cast<std::uint64_t>(trial));
        const CMat A = random_psd(sub, 4, 0.0, 1.5);
        const CMat B = A + random_psd(sub, 4, 0.0, 1.0);
        for (double alpha : {0.25, 0.5, 0.9, 1.0}) {
            const CMat diff = frac_power(B, alpha) - frac_power(A, alpha);
            CHECK(herm_eig(CMat(0.5 * (diff + diff.adjoint()))).eigenvalues.minCoeff() >= -1e-9);
        }
    }
}

TEST_CASE("support_projection") {
    CMat d = CMat::Zero(2, 2);
    d(1, 1) = 3.0;
    const CMat p = support_projection(d);
    CHECK(std::abs(p(0, 0)) <= 1e-13);
    CHECK(std::abs(p(1, 1) - cd(1, 0)) <= 1e-13);

    Rand rng(31);
    const CMat inv = random_psd(rng, 4, 0.5, 1.5);
    CHECK(op_norm(CMat(support_projection(inv) - CMat::Identity(4, 4))) <= 1e-10);

    // forced kernel: h = u diag(0, 0, *, *) u*
    const CMat u = random_unitary(rng, 4);
    RVec ev(4);
    ev << 0.0, 0.0, 0.7, -1.2;
    const CMat h = u * ev.asDiagonal() * u.adjoint();
    const CMat ph = support_projection(h);
    CHECK(op_norm(CMat(ph * h - h)) <= 1e-10);
    CHECK(op_norm(CMat(h * ph - h)) <= 1e-10);
    CHECK(support_rank(h) == 2);
}
