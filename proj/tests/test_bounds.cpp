// Error-function and checker tests.  Derived expectations come from
// independent oracles: a long-double re-implementation of η, hand-unrolled
// recursions, dense-net minimization for the openness index, closed-form
// 2×2 computations.

#include <catch2/catch_amalgamated.hpp>

#include "ozkit/bounds.hpp"
#include "ozkit/genlab.hpp"

using namespace ozkit;

namespace {

// independent η path: long-double arithmetic, explicitly written formula
double eta_oracle(double eps, double phi_norm, const ZetaParams& zp) {
    const long double K = 16.0L * static_cast<long double>(phi_norm) * phi_norm;
    const long double z = static_cast<long double>(zeta(static_cast<double>(16.0L * eps / K), zp));
    const long double c = 289.0L / 3.0L + 1.0L;
    const long double value =
        4.0L * c * c * std::sqrt(K) * std::sqrt(static_cast<long double>(eps)) * (2.0L + z) + K * z;
    return static_cast<double>(value);
}

LinMap exact_oz(std::uint64_t seed, const AlgebraShape& dom = AlgebraShape({2}), int cod = 5,
                std::vector<int> mults = {2}) {
    OrderZeroOptions opt;
    opt.spec_lo = 0.5;
    opt.spec_hi = 1.0;
    return gen_order_zero(dom, cod, mults, seed, opt);
}

} // namespace

TEST_CASE("zeta basics") {
    ZetaParams zp;
    zp.tail_cutoff = 100'000;
    CHECK(zeta(0.0, zp) == 0.0);
    CHECK_THROWS_AS(zeta(-1.0, zp), DomainError);
    CHECK_THROWS_AS(zeta(1e40, zp), DomainError); // inner expression degenerates

    // bounded-ratio sweep for ζ(s) = O(s^{1/16})
    double sup_ratio = 0.0;
    for (int i = 0; i <= 18; ++i) {
        const double s = std::pow(10.0, -12.0 + 0.5 * i);
        const double r = zeta(s, zp) / std::pow(s, 1.0 / 16.0);
        CHECK(std::isfinite(r));
        sup_ratio = std::max(sup_ratio, r);
    }
    CHECK(sup_ratio < 1e3);

    // proof-derived bound B(s) ≤ (4/π + π/3)√s
    for (double s : {1e-4, 1e-6, 1e-8})
        CHECK(zeta_B(s, zp) <= (4.0 / kPi + kPi / 3.0) * std::sqrt(s));

    // upper-bound semantics: a larger cutoff never increases the value by
    // more than the stated tail bound
    ZetaParams big = zp;
    big.tail_cutoff = 10 * zp.tail_cutoff;
    for (double s : {1e-10, 1e-6, 1e-4}) {
        const double lo = zeta(s, big);
        const double hi = zeta(s, zp);
        CHECK(lo <= hi + 1e-15);
        CHECK(hi - lo <= 8.0 / (kPi * zp.tail_cutoff) + 1e-12);
    }
}

TEST_CASE("eta") {
    ZetaParams zp;
    zp.tail_cutoff = 100'000;
    CHECK_THROWS_AS(eta(1e-2, 0.05, zp), DomainError); // needs ‖φ‖ > √ε

    // vanishing limit in ε at fixed norm
    double prev = std::numeric_limits<double>::infinity();
    for (double e : {1e-4, 1e-8, 1e-12, 1e-16}) {
        const double v = eta(e, 1.0, zp);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(eta(1e-16, 1.0, zp) < 2.0);

    // dual evaluation
    for (double e : {1e-8, 1e-6, 1e-4}) {
        const double a = eta(e, 1.0, zp);
        const double b = eta_oracle(e, 1.0, zp);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, b));
    }

    // bounded-ratio sweep for η(ε) = ‖φ‖^{15/8} O(ε^{1/16}) at unit norm
    double sup_ratio = 0.0;
    for (int i = 0; i <= 18; ++i) {
        const double e = std::pow(10.0, -12.0 + 0.5 * i);
        sup_ratio = std::max(sup_ratio, eta(e, 1.0, zp) / std::pow(e, 1.0 / 16.0));
    }
    CHECK(std::isfinite(sup_ratio));
    CHECK(sup_ratio < 1e6);
}

TEST_CASE("theta recursion") {
    const AlgebraShape s({2});
    AlgElement h(s);
    h.blocks[0](0, 0) = 0.8;
    h.blocks[0](1, 1) = -0.3; // ‖h‖ = 0.8
    const double eps = 1e-3, m = 1.7;

    // degree one: Θ₁(az + b) = 8|a|ε
    CHECK(theta(Poly{cd(5, 0), cd(0, 2)}, h, m, eps) == Catch::Approx(8.0 * 2.0 * eps).epsilon(1e-12));
    CHECK_THROWS_AS(theta(Poly{cd(1, 0)}, h, m, eps), DegreeZeroError);

    // hand-unrolled degree two: Θ₂(z²) = (64m + 8‖h‖)ε
    CHECK(theta(Poly::monomial(2), h, m, eps) ==
          Catch::Approx((64.0 * m + 8.0 * 0.8) * eps).epsilon(1e-12));

    // linearity in ε and monotonicity in ‖φ‖₊
    const Poly p{cd(0, 0), cd(1, 0), cd(-2, 0), cd(0, 3)};
    CHECK(theta(p, h, m, 2.0 * eps) == Catch::Approx(2.0 * theta(p, h, m, eps)).epsilon(1e-12));
    CHECK(theta(p, h, 2.0 * m, eps) >= theta(p, h, m, eps));
}

TEST_CASE("alg_const") {
    CHECK(alg_const(2, 5.0) == Catch::Approx(8.0));
    CHECK(alg_const(3, 1.0) == Catch::Approx(72.0));
    CHECK(alg_const(3, 2.0) == Catch::Approx(136.0));
    CHECK_THROWS_AS(alg_const(1, 1.0), BadDegreeError);
}

TEST_CASE("check_almost_jordan") {
    const LinMap phi = exact_oz(101);
    SampleSet xs = make_samples(phi.dom, 40, 17);
    const auto reports = check_almost_jordan(phi, 1e-10, xs);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        CHECK(r.pass);
        CHECK(r.lhs <= 1e-8);
    }

    // planted perturbation with certified slack
    auto [pm, slack] = perturb(phi, 1e-4, PerturbMode::self_adjoint, 102);
    const double eps_hat = slack + 1e-12;
    const auto pr = check_almost_jordan(pm, eps_hat, xs);
    for (const auto& r : pr) CHECK(r.pass);
    // constants ordering 8 ≤ 18 ≤ 108 on a shared defect scale
    CHECK(pr[0].rhs <= pr[1].rhs);
    CHECK(pr[1].rhs <= pr[2].rhs);
}

TEST_CASE("check_oz_extensions") {
    const LinMap phi = exact_oz(103);
    PairSet pairs = make_pairs(phi.dom, 24, 19);
    const auto reports = check_oz_extensions(phi, 1e-10, pairs);
    for (const auto& r : reports) {
        CHECK(r.pass);
        CHECK(r.lhs <= 1e-8);
    }

    // a contractive exact order-zero map is cpc, so the √ε branch appears
    const LinMap scaled = map_scale(1.0 / std::max(1.0, norm(apply(phi, unit(phi.dom)))), phi);
    const auto r2 = check_oz_extensions(scaled, 1e-10, pairs);
    bool found_cpc = false;
    for (const auto& r : r2) found_cpc = found_cpc || r.inequality_id == "oz-ext.cpc.sqrt-eps";
    CHECK(found_cpc);

    // the sampled pairs really are orthogonal
    for (const auto& [x, y] : pairs.general) CHECK(is_orthogonal_pair(x, y, 1e-9));
    for (const auto& [x, y] : pairs.selfadjoint) {
        CHECK(is_orthogonal_pair(x, y, 1e-9));
        CHECK(norm(x - adj(x)) <= 1e-9);
    }
    for (const auto& [x, y] : pairs.positive) {
        CHECK(is_positive(x, 1e-9));
        CHECK(is_positive(y, 1e-9));
    }
}

TEST_CASE("check_comm_theta") {
    const LinMap phi = exact_oz(105);
    SampleSet xs = make_samples(phi.dom, 30, 23);
    const CheckReport base = check_comm_theta(phi, Poly::monomial(1), 1e-10, xs.positive);
    CHECK(base.pass);
    CHECK(base.lhs <= 1e-9);

    auto [pm, slack] = perturb(phi, 1e-4, PerturbMode::self_adjoint, 106);
    const double eps_hat = slack + 1e-12;
    CHECK(check_comm_theta(pm, Poly::monomial(1), eps_hat, xs.positive).pass);
    CHECK(check_comm_theta(pm, Poly::monomial(2), eps_hat, xs.positive).pass);
}

TEST_CASE("check_alg_comm") {
    // diagonal h with two distinct eigenvalues: C = 8 and sup|P| = ‖h‖ cancel,
    // leaving exactly the 8ε base bound
    const AlgebraShape dom({1, 1});
    const LinMap phi = gen_order_zero(dom, 2, {1, 1}, 107);
    SampleSet xs = make_samples(dom, 30, 29);
    const double eps = 1e-6;
    const CheckReport r = check_alg_comm(phi, Poly::monomial(1), eps, xs.positive);
    CHECK(r.pass);
    CHECK(r.context.at("N") == 2.0);
    CHECK(r.rhs == Catch::Approx(8.0 * eps).epsilon(2e-3)); // circle-sup padding only
    CHECK(r.lhs <= 1e-9);

    // homogeneity: doubling P doubles both sides
    const CheckReport r2 = check_alg_comm(phi, Poly::monomial(1).scaled(2.0), eps, xs.positive);
    CHECK(r2.rhs == Catch::Approx(2.0 * r.rhs).epsilon(1e-12));

    CHECK_THROWS_AS(check_alg_comm(phi, Poly{cd(1, 0), cd(1, 0)}, eps, xs.positive), DomainError);
}

TEST_CASE("openness_index") {
    // identity on the center: index 1
    const AlgebraShape dom({1, 1});
    const LinMap id2 = gen_order_zero(dom, 2, {1, 1}, 109, OrderZeroOptions{1.0, 1.0, false});
    const AlgElement h1 = apply(id2, unit(dom));
    CHECK(openness_index(id2, h1) == Catch::Approx(1.0).margin(1e-6));

    // scaling the center by 1/2 doubles the index
    const LinMap half = map_scale(0.5, id2);
    CHECK(openness_index(half, apply(half, unit(dom))) == Catch::Approx(2.0).margin(1e-6));

    // random surjective center action vs a dense-net oracle (k = 2)
    Rand rng(35);
    for (int trial = 0; trial < 3; ++trial) {
        Rand sub = rng.fork(static_cast<std::uint64_t>(trial));
        const double w1 = sub.uniform(0.4, 1.2), w2 = sub.uniform(0.4, 1.2);
        const AlgebraShape cod({2});
        const LinMap phi = map_from_function(dom, cod, [&](const AlgElement& x) {
            AlgElement r(cod);
            r.blocks[0](0, 0) = w1 * x.blocks[0](0, 0);
            r.blocks[0](1, 1) = w2 * x.blocks[1](0, 0);
            return r;
        });
        const AlgElement h = apply(phi, unit(dom));
        const double est = openness_index(phi, h);
        // oracle: dense torus net over the two phases; preimage is exact
        double oracle = 0.0;
        for (int a = 0; a < 64; ++a)
            for (int b = 0; b < 64; ++b) {
                const cd g1 = std::polar(1.0, 2.0 * kPi * a / 64.0);
                const cd g2 = std::polar(1.0, 2.0 * kPi * b / 64.0);
                oracle = std::max(oracle, std::max(std::abs(g1) / w1, std::abs(g2) / w2));
            }
        CHECK(std::abs(est - oracle) <= 0.05 * oracle);
    }

    // maps whose center range misses C*(h) fail the hypothesis
    const AlgebraShape m2({2});
    Rand r2(36);
    const LinMap generic(m2, m2, gaussian_matrix(r2, 4, 4));
    const LinMap sym = selfadjointify(generic);
    const AlgElement hh = apply(sym, unit(m2));
    if (distinct_eigenvalue_count(hh) > 1)
        CHECK_THROWS_AS(openness_index(sym, hh), HypothesisFailedError);
}

TEST_CASE("check_phi_P_phi and check_hZ_comm") {
    // commutative domain onto a diagonal algebra with known central preimages
    const AlgebraShape dom({1, 1});
    const LinMap phi = gen_order_zero(dom, 2, {1, 1}, 111);
    PairSet pairs = make_pairs(dom, 20, 37);
    SampleSet xs = make_samples(dom, 20, 38);
    const double eps = 1e-8;
    ZetaParams zp;
    zp.tail_cutoff = 100'000;

    const CheckReport a = check_phi_P_phi(phi, Poly::monomial(1), eps, pairs.positive, zp);
    CHECK(a.pass);
    CHECK(a.lhs <= 1e-8);

    // P = 0 gives a vanishing left side
    const CheckReport z = check_phi_P_phi(phi, Poly{}, eps, pairs.positive, zp);
    CHECK(z.lhs <= 1e-12);

    const CheckReport b = check_hZ_comm(phi, Poly::monomial(1), eps, xs.positive, zp);
    CHECK(b.pass);
    CHECK(b.lhs <= 1e-9);
}

TEST_CASE("check_sp_proj") {
    // commuting pair: all commutators vanish
    Rand rng(41);
    const CMat s = hermitian_gaussian(rng, 4);
    const CMat t = func_calc(s, [](double x) { return std::cos(x); });
    const CheckReport commuting = check_sp_proj(s, t, 1e-8, std::max(op_norm(s), 1.0), 10);
    CHECK(commuting.pass);
    CHECK(commuting.lhs <= 1e-10);

    // closed-form 2×2: S = diag(1, −1), T = E₁₂; the degree-one Chebyshev
    // gives δ̂ ≈ ‖[S,T]‖ = 2, the projection commutator is 1
    CMat S = CMat::Zero(2, 2);
    S(0, 0) = 1.0;
    S(1, 1) = -1.0;
    CMat T = CMat::Zero(2, 2);
    T(0, 1) = 1.0;
    const CheckReport r = check_sp_proj(S, T, 1e-6, 1.0, 6);
    CHECK(r.lhs == Catch::Approx(1.0).margin(1e-10));
    CHECK(r.context.at("delta_hat") == Catch::Approx(2.0).epsilon(2e-3));
    CHECK(r.pass);

    // scaling T scales both the measured δ̂ and the commutators
    const CheckReport r3 = check_sp_proj(S, CMat(3.0 * T), 1e-6, 1.0, 6);
    CHECK(r3.lhs == Catch::Approx(3.0).margin(1e-9));
    CHECK(r3.context.at("delta_hat") == Catch::Approx(6.0).epsilon(2e-3));
}

TEST_CASE("check_hereditary_distance") {
    // exact order-zero map with invertible h: distances vanish
    const LinMap psi = exact_oz(113);
    SampleSet xs = make_samples(psi.dom, 24, 43);
    const auto reports = check_hereditary_distance(psi, 1e-10, 1.0, xs);
    for (const auto& r : reports) {
        INFO(r.inequality_id);
        CHECK(r.pass);
    }
    for (const auto& r : reports)
        if (r.inequality_id == "hereditary.distance.K") CHECK(r.lhs <= 1e-8);

    // perturbed map with certified defect
    auto [pm, slack] = perturb(psi, 1e-5, PerturbMode::self_adjoint, 114);
    const double eps_hat = slack + 1e-12;
    HereditaryOptions opt;
    opt.positive_variant = false;
    for (const auto& r : check_hereditary_distance(pm, eps_hat, 1.0, xs, opt)) {
        INFO(r.inequality_id);
        CHECK(r.pass);
    }

    // positive variant on a positive map
    HereditaryOptions popt;
    popt.positive_variant = true;
    auto [pp, pslack] = perturb(psi, 1e-6, PerturbMode::positive_preserving, 115);
    for (const auto& r : check_hereditary_distance(pp, pslack + 1e-12, 1.0, xs, popt)) {
        INFO(r.inequality_id);
        CHECK(r.pass);
    }
}

TEST_CASE("check_dichotomy") {
    // h = 0: the small-norm branch carries a zero map
    const AlgebraShape s({2});
    const LinMap zero = zero_map(s, s);
    CHECK(check_dichotomy(zero, 1e-6, 1.0).pass);

    // exact unital-ish order-zero map lands in the ‖ψ‖ ≤ (K+2)⁵‖h‖ branch
    const LinMap psi = exact_oz(117);
    const CheckReport r = check_dichotomy(psi, 1e-8, 0.5);
    CHECK(r.pass);
    CHECK(map_norm(psi).value <= r.context.at("branch_h") + 1e-9);

    // positive variant
    const CheckReport rp = check_dichotomy(psi, 1e-8, 0.5, true);
    CHECK(rp.pass);
}

TEST_CASE("check_bks") {
    const AlgebraShape s({3});
    Rand rng(47);
    const CMat A = random_psd(rng, 3, 0.0, 2.0);
    CHECK(check_bks(A, A, 0.5).lhs == 0.0);

    // commuting diagonals reduce to scalar Hölder
    CMat D1 = CMat::Zero(2, 2), D2 = CMat::Zero(2, 2);
    D1(0, 0) = 1.0;
    D1(1, 1) = 0.25;
    D2(0, 0) = 0.49;
    D2(1, 1) = 0.04;
    const CheckReport cd_rep = check_bks(D1, D2, 0.5);
    CHECK(cd_rep.lhs == Catch::Approx(std::max(1.0 - 0.7, 0.5 - 0.2)).margin(1e-12));
    CHECK(cd_rep.pass);

    for (int trial = 0; trial < 40; ++trial) {
        Rand sub = rng.fork(static_cast<std::uint64_t>(trial));
        const CMat X = random_psd(sub, 4, 0.0, 2.0);
        const CMat Y = random_psd(sub, 4, 0.0, 2.0);
        for (double alpha : {0.2, 1.0 / 3.0, 0.5}) CHECK(check_bks(X, Y, alpha).pass);
    }
    CHECK_THROWS_AS(check_bks(CMat(-CMat::Identity(2, 2)), CMat::Identity(2, 2), 0.5), NotPsdError);
}

TEST_CASE("estimate_K") {
    CorpusSpec spec;
    spec.n_exact = 6;
    spec.n_jordan = 0;
    spec.n_perturbed = 6;
    spec.n_positive_perturbed = 0;
    const Corpus corpus = gen_random_corpus(spec, 999);
    const double k0 = estimate_K(corpus.entries, 12);
    CHECK(k0 >= 0.0);
    CHECK(k0 < 64.0);

    // a planted off-support range forces the estimate up:
    // ψ(x) = (x₁ − x₂)·E₁₁ + c·x₂·E₂₂ has h = ψ(1) = c·E₂₂, so ψ(e₁) = E₁₁
    // sits at distance 1 from the support corner of h
    const double c = 0.3, eps0 = 1e-5;
    const AlgebraShape dom({1, 1});
    const AlgebraShape cod({2});
    const LinMap off = map_from_function(dom, cod, [&](const AlgElement& x) {
        AlgElement r(cod);
        r.blocks[0](0, 0) = x.blocks[0](0, 0) - x.blocks[1](0, 0);
        r.blocks[0](1, 1) = c * x.blocks[1](0, 0);
        return r;
    });
    std::vector<CorpusEntry> with_planted = corpus.entries;
    with_planted.push_back(CorpusEntry{off, eps0, {"sa", "perturbed"}});
    const double k1 = estimate_K(with_planted, 12);
    // the sampled ratio max |x₁−x₂|/‖x‖ stays well above 0.2, so K must reach
    // at least 0.2/(‖ψ‖_upper^{3/5} eps0^{1/5})
    const double up = map_norm_upper(off);
    CHECK(k1 >= 0.2 / (std::pow(up, 0.6) * std::pow(eps0, 0.2)));
    // monotone under corpus union
    CHECK(k1 >= k0 - 1e-12);

    CHECK_THROWS_AS(estimate_K(std::vector<CorpusEntry>{}, 4), EmptyCorpusError);
}

TEST_CASE("check_gaur_kovarik") {
    const CommutativeModel model(3, {0, 1});
    RVec zero = RVec::Zero(2);
    CHECK(check_gaur_kovarik(model, zero, cd(1.5, -0.5)).pass); // x = 0

    RVec x(2);
    x << 1.0, -2.0;
    CHECK(check_gaur_kovarik(model, x, cd(0, 0)).pass); // α = 0

    Rand rng(53);
    for (int i = 0; i < 200; ++i) {
        Rand sub = rng.fork(static_cast<std::uint64_t>(i));
        RVec xx(2);
        xx << sub.uniform(-2, 2), sub.uniform(-2, 2);
        CHECK(check_gaur_kovarik(model, xx, cd(sub.uniform(-2, 2), sub.uniform(-2, 2))).pass);
    }

    CHECK(gk_sharpness_search() >= 2.9);
    CHECK_THROWS_AS(CommutativeModel(2, {0, 1}), DomainError); // unital model rejected
}
