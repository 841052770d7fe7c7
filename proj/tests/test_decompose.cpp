// Decomposition tests: spectral substitution, corner-exponent search, the
// branch structure, clause verification, pipelines.

#include <catch2/catch_amalgamated.hpp>

#include "ozkit/decompose.hpp"

using namespace ozkit;

namespace {

LinMap exact_oz_invertible_h(std::uint64_t seed) {
    // no padding (2·2 = 4 = codomain), so h has no kernel
    OrderZeroOptions opt;
    opt.spec_lo = 0.5;
    opt.spec_hi = 1.0;
    return gen_order_zero(AlgebraShape({2}), 4, {2}, seed, opt);
}

} // namespace

TEST_CASE("subs_check") {
    // closed form: h = diag(0.1, 0.9), δ = 1, cut 0.5 — both sides diag(1, 0)
    CMat h = CMat::Zero(2, 2);
    h(0, 0) = 0.1;
    h(1, 1) = 0.9;
    CHECK(subs_check(h, 1.0, 0.5).pass);
    const CMat p0 = spectral_projection(h, [](double t) { return std::abs(t) <= 0.5; });
    CHECK(std::abs(p0(0, 0) - cd(1, 0)) <= 1e-14);
    CHECK(std::abs(p0(1, 1)) <= 1e-14);

    // eigenvalue exactly at the cut is included on both sides
    CMat hb = CMat::Zero(2, 2);
    hb(0, 0) = 0.5;
    hb(1, 1) = 0.9;
    const CheckReport border = subs_check(hb, 0.7, 0.5);
    CHECK(border.pass);
    const CMat pb = spectral_projection(hb, [](double t) { return std::abs(t) <= 0.5; });
    CHECK(std::abs(pb(0, 0) - cd(1, 0)) <= 1e-14);

    // random triples
    Rand rng(71);
    for (int i = 0; i < 40; ++i) {
        Rand sub = rng.fork(static_cast<std::uint64_t>(i));
        const int n = sub.uniform_int(2, 7);
        const CMat hh = hermitian_gaussian(sub, n);
        const double delta = sub.uniform(0.05, 2.0);
        const double cut = sub.uniform(0.05, 0.95) * op_norm(hh);
        CHECK(subs_check(hh, delta, cut).pass);
    }
}

TEST_CASE("choose_beta") {
    // h = unit: the first candidate works and the conjugation is trivial
    const AlgebraShape s({2});
    const LinMap id = identity_map(s);
    const AlgElement u = unit(s);
    CHECK(choose_beta(id, u, 1e-6, 1.0, 1e-3) == Catch::Approx(1.0 / 40.0));

    // invertible h: accepted β must satisfy the κ_β constraint
    const LinMap psi = exact_oz_invertible_h(73);
    const AlgElement h = apply(psi, unit(psi.dom));
    const double eps = 1e-6, theta = 1e-2;
    const double beta = choose_beta(psi, h, eps, 1.0, theta);
    double kappa = 0.0;
    const double cut = std::pow(eps, 5.0 / 16.0);
    for (const CMat& b : h.blocks) {
        const HermEig e = herm_eig(b);
        for (int i = 0; i < e.eigenvalues.size(); ++i)
            if (std::abs(e.eigenvalues(i)) > cut)
                kappa = std::max(kappa, std::abs(1.0 - std::pow(std::abs(e.eigenvalues(i)), 4.0 * beta)));
    }
    CHECK(kappa <= theta);

    // a map ranging into the kernel corner of the supplied h never satisfies
    // the conjugation bound: exhaustion is reported
    const AlgebraShape cod({2});
    const LinMap into_kernel = map_from_function(s, cod, [&](const AlgElement& x) {
        AlgElement r(cod);
        r.blocks[0](1, 1) = x.blocks[0].trace();
        return r;
    });
    AlgElement e11(cod);
    e11.blocks[0](0, 0) = 1.0;
    CHECK_THROWS_AS(choose_beta(into_kernel, e11, 1e-12, 0.0, 1e-6), BetaExhaustedError);
}

TEST_CASE("decompose exact order-zero map") {
    const LinMap psi = exact_oz_invertible_h(79);
    const double eps = 1e-12;
    const DecompositionResult res = decompose(psi, eps, 1.0, true);
    CHECK(res.branch == Branch::regular);
    // invertible h and a tiny defect: nothing is cut
    CHECK(norm(res.p_gamma) <= 1e-12);
    REQUIRE(res.Xi.has_value());
    CHECK(res.bounds.measured_Xi_jordan_defect <= 1e-6);
    CHECK(res.bounds.measured_Xi_sa_defect <= 1e-6);
    // Ξ is unital on the corner
    const AlgElement corner_unit = unit(psi.cod) - res.p_gamma;
    CHECK(norm(apply(*res.Xi, unit(psi.dom)) - corner_unit) <= 1e-9);

    for (const CheckReport& r : verify_decomposition(res, psi, eps)) {
        INFO(r.inequality_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
}

TEST_CASE("decompose zero map") {
    const AlgebraShape s({2});
    const DecompositionResult res = decompose(zero_map(s, s), 1e-4, 1.0, false);
    CHECK(res.branch == Branch::h_zero);
    CHECK(res.psi_s.action.cwiseAbs().maxCoeff() == 0.0);
    CHECK(res.psi_r.action.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("decompose cuts small spectrum") {
    // h with spectrum {ε^{0.4}, 1}: the small eigenvalue sits below ε^{5/16};
    // ε is small enough that the 166√ε dichotomy guard stays clear of ‖ψ‖₊ = 1
    const double eps = 1e-6;
    const double small = std::pow(eps, 0.4);
    const AlgebraShape dom({1, 1});
    const AlgebraShape cod({2});
    const LinMap psi = map_from_function(dom, cod, [&](const AlgElement& x) {
        AlgElement r(cod);
        r.blocks[0](0, 0) = small * x.blocks[0](0, 0);
        r.blocks[0](1, 1) = x.blocks[1](0, 0);
        return r;
    });
    REQUIRE(small < std::pow(eps, 5.0 / 16.0));
    const DecompositionResult res = decompose(psi, eps, 1.0, true);
    CHECK(res.branch == Branch::regular);
    // the cut projection has rank 1 (the small eigenvalue)
    CHECK(std::abs(res.p_gamma.blocks[0].trace().real() - 1.0) <= 1e-12);
    // the surviving corner spectrum is {1^{1+4β}} = {1}
    CHECK(norm(res.h_gamma) == Catch::Approx(1.0).margin(1e-12));

    for (const CheckReport& r : verify_decomposition(res, psi, eps)) {
        INFO(r.inequality_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
}

TEST_CASE("decompose small branches") {
    const AlgebraShape s({2});
    // tiny self-adjoint map with nonzero h: enters a small branch with ψ_r = 0
    Rand rng(83);
    const LinMap tiny = map_scale(1e-9, selfadjointify(LinMap(s, s, gaussian_matrix(rng, 4, 4))));
    const DecompositionResult res = decompose(tiny, 1e-4, 1.0, false);
    CHECK(res.branch != Branch::regular);
    CHECK(res.psi_r.action.cwiseAbs().maxCoeff() == 0.0);
    CHECK((res.psi_s.action - tiny.action).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(decompose(tiny, 2.0, 1.0, false), DomainError);
    const LinMap nonsa(s, s, gaussian_matrix(rng, 4, 4));
    CHECK_THROWS_AS(decompose(nonsa, 1e-4, 1.0, false), NotSelfAdjointError);
}

TEST_CASE("cut rank is monotone in gamma") {
    const double eps = 1e-4;
    const AlgebraShape dom({1, 1, 1});
    const AlgebraShape cod({3});
    // spectrum {ε^{0.5}, ε^{0.35}, 1}
    const LinMap psi = map_from_function(dom, cod, [&](const AlgElement& x) {
        AlgElement r(cod);
        r.blocks[0](0, 0) = std::pow(eps, 0.5) * x.blocks[0](0, 0);
        r.blocks[0](1, 1) = std::pow(eps, 0.35) * x.blocks[1](0, 0);
        r.blocks[0](2, 2) = x.blocks[2](0, 0);
        return r;
    });
    const AlgElement h = apply(psi, unit(dom));
    int prev_rank = 3;
    for (double gamma : {0.2, 5.0 / 16.0, 0.45, 0.6}) {
        const double cut = std::pow(eps, gamma);
        const AlgElement p = spectral_projection_el(h, [cut](double t) { return std::abs(t) <= cut; });
        int rank = 0;
        for (const CMat& b : p.blocks) rank += static_cast<int>(std::round(b.trace().real()));
        // ε^γ shrinks as γ grows, so the cut can only lose eigenvalues
        CHECK(rank <= prev_rank);
        prev_rank = rank;
    }
}

TEST_CASE("regular output needs no further cut") {
    const LinMap psi = exact_oz_invertible_h(89);
    const double eps = 1e-6;
    const DecompositionResult res = decompose(psi, eps, 1.0, true);
    REQUIRE(res.branch == Branch::regular);

    // measure the defect of ψ_r and re-cut at the measured value
    const double eps2 = std::max(oz_defect(res.psi_r, SearchBudget{6, 30}).value, 1e-15);
    double sigma_min = std::numeric_limits<double>::infinity();
    for (const CMat& b : res.h_gamma.blocks) {
        const HermEig e = herm_eig(b);
        for (int i = 0; i < e.eigenvalues.size(); ++i)
            if (std::abs(e.eigenvalues(i)) > 1e-13) sigma_min = std::min(sigma_min, std::abs(e.eigenvalues(i)));
    }
    if (std::pow(eps2, res.gamma) < sigma_min) {
        const double cut2 = std::pow(eps2, res.gamma);
        const AlgElement p2 = spectral_projection_el(res.h_gamma, [cut2](double t) {
            return std::abs(t) > 1e-13 && std::abs(t) <= cut2;
        });
        CHECK(norm(p2) <= 1e-12);
    }
}

TEST_CASE("pipeline_finite_dim") {
    // positive exact order-zero map: Φ recovers the corner part
    const LinMap phi = exact_oz_invertible_h(97);
    const PipelineResult pr = pipeline_finite_dim(phi, 1e-8, 1.0);
    CHECK(map_norm(map_sub(phi, pr.Phi)).value <= 37.0 * std::pow(norm(apply(phi, unit(phi.dom))), 0.8) *
                                                      std::pow(1e-8, 1.0 / 16.0));
    for (const CheckReport& r : pr.reports) {
        INFO(r.inequality_id);
        CHECK(r.pass);
    }

    // the zero map passes through trivially
    const AlgebraShape s({2});
    const PipelineResult zr = pipeline_finite_dim(zero_map(s, s), 1e-4, 1.0);
    CHECK(zr.Phi.action.cwiseAbs().maxCoeff() == 0.0);

    // a non-self-adjoint perturbation is symmetrized first; the symmetrization
    // moves the map by exactly half its self-adjointness defect
    auto [pm, slack] = perturb(phi, 1e-4, PerturbMode::general, 98);
    (void)slack;
    const double sa_up = map_norm_upper(map_sub(pm, adjoint_map(pm)));
    const double moved = map_norm(map_sub(pm, selfadjointify(pm))).value;
    CHECK(moved <= 0.5 * sa_up + 1e-12);
    const PipelineResult pr2 = pipeline_finite_dim(pm, 1e-3, 1.0);
    for (const CheckReport& r : pr2.reports) {
        INFO(r.inequality_id);
        CHECK(r.pass);
    }
}
