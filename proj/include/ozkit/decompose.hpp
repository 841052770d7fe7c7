// decompose.hpp — splitting a self-adjoint almost-order-zero map ψ into a
// small part ψ_s and a corner-valued regular part ψ_r whose normalization
// Ξ = ψ_r(1)⁻¹ψ_r(·) is a unital almost-Jordan *-homomorphism.
//
// The construction: conjugate by (h²)^β (β found along a halving sequence),
// cut the spectrum of h = ψ(1) at ε^γ (γ = 5/16 by default), compress to the
// complementary corner and invert ψ_r(1) there.  Degenerate inputs exit early
// through the small branches; every branch yields ψ = ψ_s + ψ_r with ψ_s
// defined as the exact action-matrix difference ψ − ψ_r.

#pragma once

#include <optional>
#include <string>

#include "bounds.hpp"

namespace ozkit {

// spectral-substitution identity: the low-spectrum projection of h at cut c
// equals the low-spectrum projection of g = h|h|^δ at c^{1+δ}
inline CheckReport subs_check(const CMat& h, double delta, double eps_cut) {
    if (!(delta > 0.0)) throw DomainError("subs_check: delta must be positive");
    const CMat g = func_calc(h, [delta](double t) { return t * std::pow(std::abs(t), delta); });
    const CMat p0 = spectral_projection(h, [eps_cut](double t) { return std::abs(t) <= eps_cut; });
    const double cut1 = std::pow(eps_cut, 1.0 + delta) * (1.0 + 1e-12); // closed cut, ulp guard
    const CMat p1 = spectral_projection(g, [cut1](double t) { return std::abs(t) <= cut1; });
    return make_report("subs.projection-equality", op_norm(CMat(p0 - p1)), 1e-10,
                       {{"delta", delta}, {"cut", eps_cut}});
}

enum class Branch { h_zero, dichotomy_small, h_small, norm_small, regular };

inline std::string branch_name(Branch b) {
    switch (b) {
        case Branch::h_zero: return "h_zero";
        case Branch::dichotomy_small: return "dichotomy_small";
        case Branch::h_small: return "h_small";
        case Branch::norm_small: return "norm_small";
        case Branch::regular: return "regular";
    }
    return "?";
}

struct DecompositionBounds {
    double A1_rhs = 0.0;        // stated one-term small-part bound
    double A1_sharp_rhs = 0.0;  // sharper two-term form
    double delta_rhs = 0.0;     // almost-Jordan bound for Ξ
    double measured_psi_s_norm = 0.0;
    double measured_Xi_jordan_defect = 0.0;
    double measured_Xi_sa_defect = 0.0;
    double kappa_beta = 0.0;
    double corner_condition = 0.0; // max/min |eigenvalue| of ψ_r(1) on the corner
    double C = 0.0;                // algebraic commutator constant used in delta_rhs
    int N = 0;                     // distinct-eigenvalue count of h
};

struct DecompositionResult {
    LinMap psi_s, psi_r;
    AlgElement p_gamma;
    double beta = 0.0, gamma = 0.0, theta_slack = 0.0;
    AlgElement h_gamma;
    std::optional<LinMap> Xi;
    Branch branch = Branch::regular;
    DecompositionBounds bounds;
};

// largest β in {1/40, 1/80, …, 2⁻⁴⁰} such that on a sampled verification
// corpus ‖ψ(x) − (h²)^β ψ(x) (h²)^β‖ ≤ (3K‖ψ‖^{3/5}ε^{1/5} + θ)‖x‖, the
// corner mismatch κ_β = ‖(1−p_γ)(1−(h²)^{2β})‖ is at most θ, and ‖ψ‖^{4β} < 2
inline double choose_beta(const LinMap& psi, const AlgElement& h, double eps, double K, double theta,
                          double gamma = 5.0 / 16.0, int corpus_each = 200,
                          std::uint64_t seed = 0x6f7a6265746100aaULL) {
    if (norm(h) <= 0.0) throw ZeroHError("choose_beta: h vanishes");
    const double up = map_norm_upper(psi);
    const double step1_rhs = 3.0 * K * std::pow(up, 0.6) * std::pow(eps, 0.2) + theta;
    const double cut = std::pow(eps, gamma);

    // eigenvalues of h above the cut drive κ_β
    std::vector<double> live;
    for (const CMat& b : h.blocks) {
        const HermEig e = herm_eig(b);
        for (int i = 0; i < e.eigenvalues.size(); ++i)
            if (std::abs(e.eigenvalues(i)) > cut) live.push_back(std::abs(e.eigenvalues(i)));
    }

    SampleSet xs = make_samples(psi.dom, corpus_each, seed);
    const AlgElement h2 = h * h;

    for (double beta = 1.0 / 40.0; beta >= std::pow(2.0, -40.0); beta *= 0.5) {
        if (!(std::pow(up, 4.0 * beta) < 2.0)) continue;
        double kappa = 0.0;
        for (double t : live) kappa = std::max(kappa, std::abs(1.0 - std::pow(t, 4.0 * beta)));
        if (kappa > theta) continue;
        const AlgElement L = frac_power_el(h2, beta);
        bool ok = true;
        auto scan = [&](const std::vector<AlgElement>& elems) {
            for (const AlgElement& x : elems) {
                const double nx = norm(x);
                if (nx <= 0) continue;
                const AlgElement fx = apply(psi, x);
                if (norm(fx - L * fx * L) > step1_rhs * nx + 1e-12) return false;
            }
            return true;
        };
        ok = scan(xs.selfadjoint) && scan(xs.general);
        if (ok) return beta;
    }
    throw BetaExhaustedError("choose_beta: no admissible beta above 2^-40");
}

namespace detail {
// inverse on the far-from-zero spectrum of a self-adjoint element
inline AlgElement sa_pseudo_inverse(const AlgElement& a, double cutoff) {
    return func_calc_el(a, [cutoff](double t) { return std::abs(t) > cutoff ? 1.0 / t : 0.0; });
}
} // namespace detail

inline DecompositionResult decompose(const LinMap& psi, double eps, double K, bool positive_flag,
                                     double theta = -1.0, double gamma = 5.0 / 16.0) {
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("decompose: eps must lie in (0, 1]");
    const double up = map_norm_upper(psi);
    if (map_norm_upper(map_sub(psi, adjoint_map(psi))) > 1e-9 * std::max(1.0, up))
        throw NotSelfAdjointError("decompose: psi must be self-adjoint");

    const AlgElement h = apply(psi, unit(psi.dom));
    const double hn = norm(h);
    const NormEstimate mn = map_norm(psi);

    DecompositionResult res;
    res.gamma = gamma;
    res.bounds.N = hn > 0 ? distinct_eigenvalue_count(h) : 0;

    const double M_alg = positive_flag ? 2.0 : std::pow(K + 2.0, 5.0);
    res.bounds.C = (res.bounds.N >= 2) ? alg_const(res.bounds.N, M_alg) : 0.0;

    // norm scale entering the bound right-hand sides: for positive maps the
    // norm is attained at the unit, so ‖ψ‖ = ‖h‖ exactly
    const double up_for_bounds = positive_flag ? hn : up;
    auto fill_rhs = [&]() {
        const double e_g5 = std::pow(eps, gamma / 5.0);
        if (positive_flag) {
            res.bounds.A1_rhs = 37.0 * std::pow(up_for_bounds, 0.8) * e_g5;
            res.bounds.A1_sharp_rhs = 24.0 * std::pow(up_for_bounds, 0.6) * std::pow(eps, 0.2) +
                                      13.0 * std::pow(up_for_bounds, 0.8) * e_g5;
        } else {
            res.bounds.A1_rhs = (6.0 * K + 7.0) * std::pow(up_for_bounds, 0.8) * e_g5;
            res.bounds.A1_sharp_rhs = 6.0 * K * std::pow(up_for_bounds, 0.6) * std::pow(eps, 0.2) +
                                      7.0 * std::pow(up_for_bounds, 0.8) * e_g5;
        }
        res.bounds.delta_rhs = 24.0 *
                               (res.bounds.C * res.bounds.C * M_alg + 10.0 * res.bounds.C + 17.0) *
                               up_for_bounds * std::pow(eps, 1.0 - 3.0 * gamma);
    };
    fill_rhs();

    auto trivial_exit = [&](Branch b) {
        res.branch = b;
        res.psi_s = psi;
        res.psi_r = zero_map(psi.dom, psi.cod);
        res.p_gamma = unit(psi.cod);
        res.h_gamma = AlgElement::zero(psi.cod);
        res.beta = 0.0;
        res.theta_slack = 0.0;
        res.bounds.measured_psi_s_norm = mn.value;
        return res;
    };

    if (hn <= 1e-12 * std::max(1.0, up)) return trivial_exit(Branch::h_zero);
    const double small_norm_guard =
        positive_flag ? 166.0 * std::sqrt(eps) : std::sqrt(std::pow(K + 2.0, 5.0) * eps);
    if (up_for_bounds <= small_norm_guard) return trivial_exit(Branch::dichotomy_small);
    if (hn <= std::sqrt(eps)) return trivial_exit(Branch::h_small);
    if (std::pow(eps, gamma) >= hn) return trivial_exit(Branch::norm_small);

    // regular branch
    if (theta <= 0.0) theta = 0.5 * std::pow(std::max(mn.value, 1e-6), 0.8) * std::pow(eps, gamma / 5.0);
    res.theta_slack = theta;
    const double step1_K = positive_flag ? std::min(K, 4.0) : K;
    res.beta = choose_beta(psi, h, eps, step1_K, theta, gamma);

    const AlgElement h2 = h * h;
    const AlgElement L = frac_power_el(h2, res.beta);
    const double cut = std::pow(eps, gamma);
    res.p_gamma = spectral_projection_el(h, [cut](double t) { return std::abs(t) <= cut; });
    const AlgElement q = unit(psi.cod) - res.p_gamma;
    {
        double kappa = 0.0;
        for (const CMat& b : h.blocks) {
            const HermEig e = herm_eig(b);
            for (int i = 0; i < e.eigenvalues.size(); ++i)
                if (std::abs(e.eigenvalues(i)) > cut)
                    kappa = std::max(kappa, std::abs(1.0 - std::pow(std::abs(e.eigenvalues(i)), 4.0 * res.beta)));
        }
        res.bounds.kappa_beta = kappa;
    }

    res.psi_r = map_from_function(psi.dom, psi.cod,
                                  [&](const AlgElement& x) { return q * (L * apply(psi, x) * L) * q; });
    res.psi_s = LinMap(psi.dom, psi.cod, CMat(psi.action - res.psi_r.action));
    res.branch = Branch::regular;

    res.h_gamma = apply(res.psi_r, unit(psi.dom));
    const double corner_floor = std::pow(eps, gamma * (1.0 + 4.0 * res.beta));
    double min_live = std::numeric_limits<double>::infinity(), max_live = 0.0;
    for (const CMat& b : res.h_gamma.blocks) {
        const HermEig e = herm_eig(b);
        for (int i = 0; i < e.eigenvalues.size(); ++i) {
            const double a = std::abs(e.eigenvalues(i));
            if (a > 0.5 * corner_floor) {
                min_live = std::min(min_live, a);
                max_live = std::max(max_live, a);
            }
        }
    }
    res.bounds.corner_condition = (min_live > 0 && std::isfinite(min_live)) ? max_live / min_live : 0.0;

    const AlgElement hg_inv = detail::sa_pseudo_inverse(res.h_gamma, 0.5 * corner_floor);
    const LinMap xi = map_from_function(psi.dom, psi.cod,
                                        [&](const AlgElement& x) { return hg_inv * apply(res.psi_r, x); });
    res.Xi = xi;

    res.bounds.measured_psi_s_norm = map_norm(res.psi_s).value;
    res.bounds.measured_Xi_jordan_defect = jordan_defect(xi, SearchBudget{8, 40}).value;
    res.bounds.measured_Xi_sa_defect = sa_defect(xi, SearchBudget{6, 40}).value;
    return res;
}

// clause-by-clause verification of a decomposition against its inputs
inline std::vector<CheckReport> verify_decomposition(const DecompositionResult& res, const LinMap& psi,
                                                     double eps, int samples = 60,
                                                     std::uint64_t seed = 0x6f7a766572640001ULL) {
    std::vector<CheckReport> out;
    const double scale = std::max(1.0, map_norm_upper(psi));

    // exact splitting: ψ_s is bitwise the matrix difference ψ − ψ_r
    {
        const CMat diff = psi.action - res.psi_r.action;
        bool exact = diff.rows() == res.psi_s.action.rows() && diff.cols() == res.psi_s.action.cols();
        if (exact)
            for (int i = 0; i < diff.rows() && exact; ++i)
                for (int j = 0; j < diff.cols() && exact; ++j) exact = diff(i, j) == res.psi_s.action(i, j);
        out.push_back(make_report("decomp.split-exact", exact ? 0.0 : 1.0, 0.0, {},
                                  "psi_s must equal the exact action-matrix difference"));
    }

    SampleSet xs = make_samples(psi.dom, samples, seed);
    const AlgElement corner = unit(psi.cod) - res.p_gamma;

    double range_lhs = 0.0, sum_lhs = 0.0;
    auto scan = [&](const std::vector<AlgElement>& elems) {
        for (const AlgElement& x : elems) {
            const AlgElement rx = apply(res.psi_r, x);
            range_lhs = std::max(range_lhs, norm(rx - corner * rx * corner));
            sum_lhs = std::max(sum_lhs,
                               norm(apply(res.psi_s, x) + rx - apply(psi, x)));
        }
    };
    scan(xs.selfadjoint);
    scan(xs.general);
    out.push_back(make_report("decomp.range-in-corner", range_lhs, 1e-10 * scale));
    out.push_back(make_report("decomp.sum-residual", sum_lhs, 1e-12 * scale));

    out.push_back(make_report("decomp.psi-r-norm",
                              map_norm(res.psi_r).value,
                              std::pow(map_norm_upper(psi), 1.0 + 4.0 * res.beta)));
    out.push_back(make_report("decomp.psi-r-selfadjoint",
                              map_norm_upper(map_sub(res.psi_r, adjoint_map(res.psi_r))), 1e-9 * scale));

    if (res.branch == Branch::regular) {
        const AlgElement hg_inv = detail::sa_pseudo_inverse(
            res.h_gamma, 0.5 * std::pow(eps, res.gamma * (1.0 + 4.0 * res.beta)));
        out.push_back(make_report("decomp.corner-inverse-bound", norm(hg_inv),
                                  std::pow(eps, -res.gamma * (1.0 + 4.0 * res.beta))));
        if (res.Xi) {
            out.push_back(make_report("decomp.Xi-unital",
                                      norm(apply(*res.Xi, unit(psi.dom)) - corner), 1e-9 * scale));
            out.push_back(make_report("decomp.A3-jordan", res.bounds.measured_Xi_jordan_defect,
                                      res.bounds.delta_rhs, {{"C", res.bounds.C}}));
            out.push_back(make_report("decomp.A3-selfadjoint", res.bounds.measured_Xi_sa_defect,
                                      res.bounds.delta_rhs));
        }
    }
    out.push_back(make_report("decomp.A1-stated", res.bounds.measured_psi_s_norm, res.bounds.A1_rhs));
    out.push_back(make_report("decomp.A1-sharp", res.bounds.measured_psi_s_norm, res.bounds.A1_sharp_rhs));
    return out;
}

struct PipelineResult {
    LinMap Phi;
    DecompositionResult decomposition;
    std::vector<CheckReport> reports;
};

// sampled positivity probe (PSD inputs must map to PSD outputs)
inline bool looks_positive(const LinMap& map, int samples = 64, std::uint64_t seed = 0x6f7a706f73000001ULL,
                           double tol = 1e-9) {
    Rand rng(seed);
    const double scale = std::max(1.0, map_norm_upper(map));
    for (int i = 0; i < samples; ++i) {
        Rand sub = rng.fork(static_cast<std::uint64_t>(i));
        const AlgElement x = sample_positive(map.dom, sub);
        if (!is_positive(apply(map, x), tol * scale)) return false;
    }
    return true;
}

// end-to-end run for maps into ⊕M_{nᵢ}: symmetrize unless the map is already
// positive, decompose with the inflated defect ε' = ε(1 + ‖φ‖/2), return the
// corner part Φ = ψ_r together with the distance and almost-Jordan reports.
inline PipelineResult pipeline_finite_dim(const LinMap& phi, double eps, double K) {
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("pipeline_finite_dim: eps must lie in (0, 1]");
    const bool positive = looks_positive(phi);
    const double up = map_norm_upper(phi);

    const LinMap psi = positive ? phi : selfadjointify(phi);
    double eps_eff = positive ? eps : eps * (1.0 + 0.5 * up);
    std::string note;
    if (eps_eff > 1.0) {
        eps_eff = 1.0;
        note = "inflated defect clamped to 1";
    }

    PipelineResult out{zero_map(phi.dom, phi.cod), decompose(psi, eps_eff, K, positive), {}};
    out.Phi = out.decomposition.psi_r;

    const double dist = map_norm(map_sub(phi, out.Phi)).value;
    const double rhs = positive
                           ? 37.0 * std::pow(norm(apply(phi, unit(phi.dom))), 0.8) * std::pow(eps, 1.0 / 16.0)
                           : (6.0 * K + 7.0) * (std::pow(up, 0.8) + std::pow(up, 1.8) / 32.0) *
                                     std::pow(eps, 1.0 / 16.0) +
                                 0.5 * eps;
    out.reports.push_back(make_report(positive ? "pipeline.distance.positive-37" : "pipeline.distance.general",
                                      dist, rhs, {{"eps", eps}, {"K", K}}, note));
    if (out.decomposition.Xi) {
        out.reports.push_back(make_report("pipeline.Xi-jordan",
                                          out.decomposition.bounds.measured_Xi_jordan_defect,
                                          out.decomposition.bounds.delta_rhs));
    }
    return out;
}

} // namespace ozkit
