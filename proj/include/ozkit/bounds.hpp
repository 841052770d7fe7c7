// bounds.hpp — closed-form error functions and one checker per quantitative
// inequality.
//
// Conventions shared by every checker:
//   * left sides are measured values (exact per-sample evaluations or
//     witnessed lower bounds),
//   * right sides use certified upper bounds for any map norm that appears
//     (action-matrix Frobenius certificates), so a failing report implies a
//     genuine violation,
//   * pass ⇔ margin ≥ −1e−9·max(1, rhs).

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "defect.hpp"
#include "genlab.hpp"
#include "poly.hpp"

namespace ozkit {

inline constexpr double kPi = 3.14159265358979323846;
// explicit slack wherever a bound is stated only up to vanishing corrections
inline constexpr double kApproxSlack = 1e-6;

struct CheckReport {
    std::string inequality_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = true;
    std::map<std::string, double> context;
    std::string note;
};

inline CheckReport make_report(std::string id, double lhs, double rhs,
                               std::map<std::string, double> context = {}, std::string note = {}) {
    CheckReport r;
    r.inequality_id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.pass = r.margin >= -1e-9 * std::max(1.0, rhs);
    r.context = std::move(context);
    r.note = std::move(note);
    return r;
}

// ---- the ζ error function ----------------------------------------------------

struct ZetaParams {
    long tail_cutoff = 1'000'000; // series truncation index
    double domain_floor = 0.0;    // smallest admissible positive argument
};

// A(t) = (1/2π)|2 sin t + t(1−cos t)| + (1/π)|t + 2((1−cos t)/t) cos t|
inline double zeta_A(double t) {
    if (t == 0.0) return 0.0;
    const double c = std::cos(t), s = std::sin(t);
    return std::abs(2.0 * s + t * (1.0 - c)) / (2.0 * kPi) +
           std::abs(t + 2.0 * ((1.0 - c) / t) * c) / kPi;
}

namespace detail {
// fused series Σ_{k≠0,1} for B and Γ, truncated at |k| ≤ K; returns the raw
// sums (no prefactors).  Tail bounds: ΣB ≤ 4/K, ΣΓ ≤ 2/K.
inline void zeta_series(double t, long K, double& sum_b, double& sum_g) {
    sum_b = 0.0;
    sum_g = 0.0;
    for (long k = 2; k <= K; ++k) {
        const double kd = static_cast<double>(k);
        sum_b += 2.0 * std::abs(std::sin(0.5 * kd * t)) / (kd * kd);
        sum_g += std::abs(std::sin((1.0 - kd) * t)) / (kd * (kd - 1.0));
    }
    for (long k = 1; k <= K; ++k) { // negative indices −k
        const double kd = static_cast<double>(k);
        sum_b += 2.0 * std::abs(std::sin(0.5 * kd * t)) / (kd * kd);
        sum_g += std::abs(std::sin((1.0 + kd) * t)) / (kd * (kd + 1.0));
    }
}
} // namespace detail

// B(t) with the truncation tail added (upper-bound semantics)
inline double zeta_B(double t, const ZetaParams& zp = {}) {
    if (t == 0.0) return 0.0;
    double sb, sg;
    detail::zeta_series(t, zp.tail_cutoff, sb, sg);
    const double pre = std::abs(1.0 - std::polar(1.0, t)) / t;
    return pre * (sb + 4.0 / static_cast<double>(zp.tail_cutoff)) / kPi;
}

// Γ(t) with the truncation tail added
inline double zeta_Gamma(double t, const ZetaParams& zp = {}) {
    if (t == 0.0) return 0.0;
    double sb, sg;
    detail::zeta_series(t, zp.tail_cutoff, sb, sg);
    return (sg + 2.0 / static_cast<double>(zp.tail_cutoff)) / kPi;
}

// ξ(t) = A(t) + B(t) + Γ(t), evaluating the shared series once
inline double zeta_xi(double t, const ZetaParams& zp = {}) {
    if (t == 0.0) return 0.0;
    double sb, sg;
    detail::zeta_series(t, zp.tail_cutoff, sb, sg);
    const double K = static_cast<double>(zp.tail_cutoff);
    const double pre = std::abs(1.0 - std::polar(1.0, t)) / t;
    return zeta_A(t) + pre * (sb + 4.0 / K) / kPi + (sg + 2.0 / K) / kPi;
}

// inner transformation: ζ(s) = ξ(α(s))
inline double zeta_inner_arg(double s) {
    const double base = (289.0 / 3.0 + 1.0) * std::pow(s, -0.25) - 1.0;
    if (!(base > 0.0)) throw DomainError("zeta: inner expression not positive");
    const double root = std::sqrt(3.0 * base);
    if (!(root > 1.0)) throw DomainError("zeta: sqrt term must exceed 1");
    return 8.0 * kPi / (root - 1.0);
}

inline double zeta(double s, const ZetaParams& zp = {}) {
    if (s < 0.0) throw DomainError("zeta: negative argument");
    if (s == 0.0) return 0.0;
    if (s < zp.domain_floor) throw DomainError("zeta: argument below domain floor");
    return zeta_xi(zeta_inner_arg(s), zp);
}

// ---- η and the polynomial commutator weights ----------------------------------

// η(ε) = 4(17²/3+1)²·K^{1/2}·ε^{1/2}·(2 + ζ(16ε/K)) + K·ζ(16ε/K), K = 16‖φ‖²
inline double eta(double eps, double phi_norm, const ZetaParams& zp = {}) {
    if (eps < 0.0) throw DomainError("eta: negative eps");
    if (!(phi_norm > std::sqrt(eps))) throw DomainError("eta: requires ‖φ‖ > ε^{1/2}");
    const double K = 16.0 * phi_norm * phi_norm;
    const double z = zeta(16.0 * eps / K, zp);
    const double c = 289.0 / 3.0 + 1.0;
    return 4.0 * c * c * std::sqrt(K) * std::sqrt(eps) * (2.0 + z) + K * z;
}

// Θ_N(P): Θ₁(az+b) = 8|a|ε; Θ_N(P) = 8‖φ‖₊·Θ_{N−1}(τP) + 8‖τP(h)‖ε
inline double theta(const Poly& P, const AlgElement& h, double phi_norm_pos, double eps) {
    const int N = P.degree();
    if (N < 1) throw DegreeZeroError("theta: polynomial degree must be at least 1");
    if (N == 1) return 8.0 * std::abs(P.coeffs[1]) * eps;
    const Poly tp = P.tau();
    return 8.0 * phi_norm_pos * theta(tp, h, phi_norm_pos, eps) + 8.0 * norm(poly_at(tp, h)) * eps;
}

// C(N, M) = Σ_{i=0}^{N−2} 8^{i+1} M^i
inline double alg_const(int N, double M) {
    if (N < 2) throw BadDegreeError("alg_const: N must be at least 2");
    if (!(M > 0.0)) throw DomainError("alg_const: M must be positive");
    double sum = 0.0, p8 = 8.0, pM = 1.0;
    for (int i = 0; i <= N - 2; ++i) {
        sum += p8 * pM;
        p8 *= 8.0;
        pM *= M;
    }
    return sum;
}

// ---- sample containers ----------------------------------------------------------

struct SampleSet {
    std::vector<AlgElement> positive, selfadjoint, general;
};

inline SampleSet make_samples(const AlgebraShape& shape, int count_each, std::uint64_t seed) {
    SampleSet s;
    Rand rng(seed);
    for (int i = 0; i < count_each; ++i) {
        Rand a = rng.fork(3 * static_cast<std::uint64_t>(i));
        Rand b = rng.fork(3 * static_cast<std::uint64_t>(i) + 1);
        Rand c = rng.fork(3 * static_cast<std::uint64_t>(i) + 2);
        s.positive.push_back(sample_positive(shape, a));
        s.selfadjoint.push_back(sample_selfadjoint(shape, b));
        s.general.push_back(sample_general(shape, c));
    }
    return s;
}

struct PairSet {
    std::vector<std::pair<AlgElement, AlgElement>> positive, selfadjoint, general;
};

inline PairSet make_pairs(const AlgebraShape& shape, int count_each, std::uint64_t seed) {
    PairSet p;
    Rand rng(seed);
    for (int i = 0; i < count_each; ++i) {
        Rand a = rng.fork(3 * static_cast<std::uint64_t>(i));
        Rand b = rng.fork(3 * static_cast<std::uint64_t>(i) + 1);
        Rand c = rng.fork(3 * static_cast<std::uint64_t>(i) + 2);
        p.positive.push_back(sample_orthogonal_pair(shape, a, PairKind::positive));
        p.selfadjoint.push_back(sample_orthogonal_pair(shape, b, PairKind::selfadjoint));
        p.general.push_back(sample_orthogonal_pair(shape, c, PairKind::general));
    }
    return p;
}

// ---- checkers -------------------------------------------------------------------

// ‖φ(x)² − hφ(x²)‖ against 8ε (positive x), 18ε (self-adjoint), 108ε (general)
inline std::vector<CheckReport> check_almost_jordan(const LinMap& map, double eps, const SampleSet& xs) {
    const AlgElement h = apply(map, unit(map.dom));
    auto worst = [&](const std::vector<AlgElement>& elems) {
        double mx = 0.0;
        for (const AlgElement& x : elems) {
            const double nx = norm(x);
            if (nx <= 0) continue;
            const AlgElement fx = apply(map, x);
            mx = std::max(mx, norm(fx * fx - h * apply(map, x * x)) / (nx * nx));
        }
        return mx;
    };
    std::vector<CheckReport> out;
    out.push_back(make_report("almost-jordan.positive.8eps", worst(xs.positive), 8.0 * eps, {{"eps", eps}}));
    out.push_back(make_report("almost-jordan.selfadjoint.18eps", worst(xs.selfadjoint), 18.0 * eps, {{"eps", eps}}));
    out.push_back(make_report("almost-jordan.general.108eps", worst(xs.general), 108.0 * eps, {{"eps", eps}}));
    return out;
}

// orthogonality extensions: raw ε (positive pairs), 4ε (self-adjoint pairs),
// 16ε (general pairs), √ε (completely positive contractions)
inline std::vector<CheckReport> check_oz_extensions(const LinMap& map, double eps, const PairSet& pairs,
                                                    double cp_tol = 1e-9) {
    auto worst = [&](const std::vector<std::pair<AlgElement, AlgElement>>& ps) {
        double mx = 0.0;
        for (const auto& [x, y] : ps) mx = std::max(mx, oz_eval(map, x, y));
        return mx;
    };
    std::vector<CheckReport> out;
    out.push_back(make_report("oz-ext.positive.raw-eps", worst(pairs.positive), eps, {{"eps", eps}}));
    out.push_back(make_report("oz-ext.selfadjoint.4eps", worst(pairs.selfadjoint), 4.0 * eps, {{"eps", eps}}));
    out.push_back(make_report("oz-ext.general.16eps", worst(pairs.general), 16.0 * eps, {{"eps", eps}}));
    if (is_cpc(map, cp_tol)) {
        out.push_back(make_report("oz-ext.cpc.sqrt-eps", worst(pairs.general), std::sqrt(eps), {{"eps", eps}},
                                  "completely positive contraction branch"));
    }
    return out;
}

// ‖[P(h), φ(x)]‖ ≤ Θ_N(P)·‖x‖ for positive x
inline CheckReport check_comm_theta(const LinMap& map, const Poly& P, double eps,
                                    const std::vector<AlgElement>& positive_xs) {
    const AlgElement h = apply(map, unit(map.dom));
    const AlgElement ph = poly_at(P, h);
    const double m_up = map_norm_upper(map); // ≥ ‖φ‖ ≥ ‖φ‖₊
    const double rhs = theta(P, h, m_up, eps);
    double lhs = 0.0;
    for (const AlgElement& x : positive_xs) {
        const double nx = norm(x);
        if (nx <= 0) continue;
        const AlgElement fx = apply(map, x);
        lhs = std::max(lhs, norm(ph * fx - fx * ph) / nx);
    }
    return make_report("comm.theta.deg" + std::to_string(P.degree()), lhs, rhs,
                       {{"eps", eps}, {"phi_pos_upper", m_up}, {"deg", static_cast<double>(P.degree())}});
}

// number of distinct eigenvalue clusters across all blocks of a Hermitian
// element (relative gap tolerance)
inline int distinct_eigenvalue_count(const AlgElement& h, double rel_tol = 1e-8) {
    std::vector<double> evs;
    for (const CMat& b : h.blocks) {
        const HermEig e = herm_eig(b);
        for (int i = 0; i < e.eigenvalues.size(); ++i) evs.push_back(e.eigenvalues(i));
    }
    std::sort(evs.begin(), evs.end());
    const double scale = std::max({1e-300, std::abs(evs.front()), std::abs(evs.back())});
    int clusters = 1;
    for (size_t i = 1; i < evs.size(); ++i)
        if (evs[i] - evs[i - 1] > rel_tol * scale) ++clusters;
    return clusters;
}

// algebraic-order commutator bound: ‖[P(h), φ(x)]‖ ≤ (Cε/‖h‖)·sup_{|z|=‖h‖}|P|·‖x‖
inline CheckReport check_alg_comm(const LinMap& map, const Poly& P, double eps,
                                  const std::vector<AlgElement>& positive_xs) {
    if (std::abs(P.constant_term()) != 0.0) throw DomainError("check_alg_comm: requires P(0) = 0");
    const AlgElement h = apply(map, unit(map.dom));
    const double hn = norm(h);
    if (hn <= 0.0) throw ZeroHError("check_alg_comm: h = φ(1) vanishes");
    const int N = distinct_eigenvalue_count(h);
    const double M = map_norm_upper(map) / hn;
    const double C = (N >= 2) ? alg_const(N, M) : 0.0;
    const double rhs = (C * eps / hn) * sup_on_circle(P, hn);
    const AlgElement ph = poly_at(P, h);
    double lhs = 0.0;
    for (const AlgElement& x : positive_xs) {
        const double nx = norm(x);
        if (nx <= 0) continue;
        const AlgElement fx = apply(map, x);
        lhs = std::max(lhs, norm(ph * fx - fx * ph) / nx);
    }
    return make_report("comm.algebraic.deg" + std::to_string(P.degree()), lhs, rhs,
                       {{"eps", eps}, {"N", static_cast<double>(N)}, {"M", M}, {"C", C}, {"h_norm", hn}},
                       N < 2 ? "h has a single eigenvalue cluster; commutators vanish" : "");
}

// ---- center-range machinery -----------------------------------------------------

// spectral-projection basis of C*(h): one projection per nonzero eigenvalue
// cluster, assembled across blocks
inline std::vector<AlgElement> cstar_h_basis(const AlgElement& h, double rel_tol = 1e-8) {
    std::vector<double> evs;
    for (const CMat& b : h.blocks) {
        const HermEig e = herm_eig(b);
        for (int i = 0; i < e.eigenvalues.size(); ++i) evs.push_back(e.eigenvalues(i));
    }
    std::sort(evs.begin(), evs.end());
    const double scale = std::max(1e-300, norm(h));
    const double zero_cut = kRankCutoffRel * scale;
    std::vector<std::pair<double, double>> clusters; // [lo, hi]
    for (double t : evs) {
        if (std::abs(t) <= zero_cut) continue;
        if (!clusters.empty() && t - clusters.back().second <= rel_tol * scale)
            clusters.back().second = t;
        else
            clusters.emplace_back(t, t);
    }
    std::vector<AlgElement> basis;
    for (const auto& [lo, hi] : clusters) {
        const double a = lo - rel_tol * scale, b = hi + rel_tol * scale;
        basis.push_back(spectral_projection_el(h, [a, b](double t) { return t >= a && t <= b; }));
    }
    return basis;
}

// least-squares central preimage: minimizes ‖φ(Σ cᵢ zᵢ) − w‖_F over c ∈ ℂ^k;
// returns (coefficients, Frobenius residual)
inline std::pair<CVec, double> central_preimage(const LinMap& map, const AlgElement& w) {
    const std::vector<AlgElement> zs = center_basis(map.dom);
    const int k = static_cast<int>(zs.size());
    CMat zmat(map.cod.coord_dim(), k);
    for (int i = 0; i < k; ++i) zmat.col(i) = vec_of(apply(map, zs[i]));
    const CVec target = vec_of(w);
    const CVec c = zmat.completeOrthogonalDecomposition().solve(target);
    const double resid = (zmat * c - target).norm();
    return {c, resid};
}

// require C*(h) ⊆ φ(Z(A)); throws HypothesisFailed otherwise
inline void require_center_range(const LinMap& map, const AlgElement& h, double tol = 1e-8) {
    for (const AlgElement& w : cstar_h_basis(h)) {
        const auto [c, resid] = central_preimage(map, w);
        if (resid > tol * std::max(1.0, frobenius_norm(w)))
            throw HypothesisFailedError("center-range hypothesis C*(h) ⊆ φ(Z(A)) fails");
    }
}

// op_h(φ|Z(A)): sup over unit-sphere w ∈ C*(h) of the minimum-norm central
// preimage.  Preimages are exact when φ|Z is injective (the usual case);
// otherwise the ∞-norm is reduced over the solution affine space by smoothed
// descent.  The per-w minimum is evaluated from a feasible point, and the
// supremum is taken over extreme points (torus phases) refined by hill
// climbing.
inline double openness_index(const LinMap& map, const AlgElement& h, int net_samples = 64,
                             std::uint64_t seed = 0x6f7a6f70656e0001ULL) {
    const std::vector<AlgElement> proj = cstar_h_basis(h);
    const int d = static_cast<int>(proj.size());
    if (d == 0) throw HypothesisFailedError("openness_index: C*(h) is trivial");
    require_center_range(map, h);

    const std::vector<AlgElement> zs = center_basis(map.dom);
    const int k = static_cast<int>(zs.size());
    CMat zmat(map.cod.coord_dim(), k);
    for (int i = 0; i < k; ++i) zmat.col(i) = vec_of(apply(map, zs[i]));
    const auto cod_solver = zmat.completeOrthogonalDecomposition();
    const bool unique = cod_solver.rank() == k;

    // kernel basis of φ|Z for the non-injective case
    CMat kernel;
    if (!unique) {
        Eigen::JacobiSVD<CMat> svd(zmat, Eigen::ComputeFullV);
        const int r = static_cast<int>(svd.rank());
        kernel = svd.matrixV().rightCols(k - r);
    }

    auto min_norm_preimage = [&](const CVec& target) {
        CVec c = cod_solver.solve(target);
        if (!unique && kernel.cols() > 0) {
            // reduce max_i |c_i| over c + kernel·z with a smoothed p-norm descent
            CVec z = CVec::Zero(kernel.cols());
            for (double p : {8.0, 32.0, 128.0}) {
                for (int it = 0; it < 200; ++it) {
                    const CVec cur = c + kernel * z;
                    double mx = cur.cwiseAbs().maxCoeff();
                    if (mx <= 0) break;
                    // gradient of (Σ |c_i|^p)^{1/p} pulled back to z
                    CVec g = CVec::Zero(kernel.cols());
                    for (int i = 0; i < cur.size(); ++i) {
                        const double a = std::abs(cur(i));
                        if (a <= 0) continue;
                        const cd dir = cur(i) / a;
                        const double w = std::pow(a / mx, p - 1.0);
                        g += w * (kernel.row(i).adjoint() * dir);
                    }
                    const double gn = g.norm();
                    if (gn < 1e-14) break;
                    const CVec z2 = z - (0.1 * mx / gn) * g;
                    const double m2 = (c + kernel * z2).cwiseAbs().maxCoeff();
                    if (m2 >= mx) break;
                    z = z2;
                }
            }
            c = c + kernel * z;
        }
        return c.cwiseAbs().maxCoeff(); // ‖Σ cᵢ zᵢ‖ = max |cᵢ|
    };

    auto eval_phases = [&](const std::vector<double>& th) {
        AlgElement w = AlgElement::zero(map.cod);
        for (int j = 0; j < d; ++j) w = w + std::polar(1.0, th[j]) * proj[j];
        return min_norm_preimage(vec_of(w));
    };

    double best = 0.0;
    std::vector<double> best_th(d, 0.0);
    // corners e_j and all-ones direction
    for (int j = 0; j < d; ++j) best = std::max(best, min_norm_preimage(vec_of(proj[j])));
    Rand rng(seed);
    for (int s = 0; s < net_samples; ++s) {
        Rand sub = rng.fork(static_cast<std::uint64_t>(s));
        std::vector<double> th(d);
        for (int j = 0; j < d; ++j) th[j] = (s == 0) ? 0.0 : sub.uniform(0.0, 2.0 * kPi);
        double val = eval_phases(th);
        // coordinate hill climb on the torus
        double step = 0.7;
        for (int round = 0; round < 16; ++round) {
            bool improved = false;
            for (int j = 0; j < d; ++j) {
                for (double dir : {+1.0, -1.0}) {
                    std::vector<double> cand = th;
                    cand[j] += dir * step;
                    const double v = eval_phases(cand);
                    if (v > val + 1e-12) {
                        th = cand;
                        val = v;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
            if (step < 1e-3) break;
        }
        if (val > best) {
            best = val;
            best_th = th;
        }
    }
    (void)best_th;
    return best;
}

// ‖φ(x)P(h)φ(y)‖ ≤ M‖φ‖(η(ε) + 24ε)‖P(h)‖‖x‖‖y‖ on positive orthogonal pairs
inline CheckReport check_phi_P_phi(const LinMap& map, const Poly& P, double eps,
                                   const std::vector<std::pair<AlgElement, AlgElement>>& positive_pairs,
                                   const ZetaParams& zp = {}) {
    const AlgElement h = apply(map, unit(map.dom));
    require_center_range(map, h);
    const NormEstimate lower = map_norm(map);
    if (!(lower.value > std::sqrt(eps)))
        throw HypothesisFailedError("check_phi_P_phi: hypothesis ‖φ‖ > ε^{1/2} not certified");
    const double up = map_norm_upper(map);
    const double M = openness_index(map, h);
    const double e = eta(eps, up, zp);
    const AlgElement ph = poly_at(P, h);
    const double rhs = M * up * (e + 24.0 * eps) * norm(ph);
    double lhs = 0.0;
    for (const auto& [x, y] : positive_pairs) {
        const double nx = norm(x), ny = norm(y);
        if (nx <= 0 || ny <= 0) continue;
        lhs = std::max(lhs, norm(apply(map, x) * ph * apply(map, y)) / (nx * ny));
    }
    return make_report("center-range.phi-P-phi.deg" + std::to_string(P.degree()), lhs, rhs,
                       {{"eps", eps}, {"M", M}, {"eta", e}, {"phi_upper", up}, {"P_h_norm", norm(ph)}});
}

// ‖[P(h), φ(x)]‖ ≤ max{2√ε·sup|P|, 8M‖φ‖(η(ε)+24ε)‖τP(h)‖}·‖x‖, P(0) = 0
inline CheckReport check_hZ_comm(const LinMap& map, const Poly& P, double eps,
                                 const std::vector<AlgElement>& positive_xs, const ZetaParams& zp = {}) {
    if (std::abs(P.constant_term()) != 0.0) throw DomainError("check_hZ_comm: requires P(0) = 0");
    const AlgElement h = apply(map, unit(map.dom));
    if (norm(h) <= 0.0) throw ZeroHError("check_hZ_comm: h = φ(1) vanishes");
    require_center_range(map, h);
    const double up = map_norm_upper(map);
    const double M = openness_index(map, h);
    const double trivial_branch = 2.0 * std::sqrt(eps) * sup_on_circle(P, norm(h));
    double center_branch = std::numeric_limits<double>::infinity();
    if (up > std::sqrt(eps))
        center_branch = 8.0 * M * up * (eta(eps, up, zp) + 24.0 * eps) * norm(poly_at(P.tau(), h));
    const double rhs = std::max(trivial_branch, std::isfinite(center_branch) ? center_branch : 0.0);
    const AlgElement ph = poly_at(P, h);
    double lhs = 0.0;
    for (const AlgElement& x : positive_xs) {
        const double nx = norm(x);
        if (nx <= 0) continue;
        const AlgElement fx = apply(map, x);
        lhs = std::max(lhs, norm(ph * fx - fx * ph) / nx);
    }
    return make_report("center-range.hZ-comm.deg" + std::to_string(P.degree()), lhs, rhs,
                       {{"eps", eps}, {"M", M}, {"phi_upper", up}});
}

// ---- spectral projections vs polynomial commutators --------------------------------

namespace detail {
// T_j(z/R) as coefficient vectors via the Chebyshev recurrence
inline std::vector<Poly> chebyshev_sample(double R, int n_polys, std::uint64_t seed) {
    std::vector<std::vector<cd>> cheb;
    cheb.push_back({cd(1, 0)});
    cheb.push_back({cd(0, 0), cd(1.0 / R, 0)});
    const int max_deg = 8;
    for (int j = 2; j <= max_deg; ++j) {
        std::vector<cd> next(j + 1, cd(0, 0));
        for (size_t i = 0; i < cheb[j - 1].size(); ++i) next[i + 1] += 2.0 / R * cheb[j - 1][i];
        for (size_t i = 0; i < cheb[j - 2].size(); ++i) next[i] -= cheb[j - 2][i];
        cheb.push_back(std::move(next));
    }
    std::vector<Poly> out;
    for (int j = 1; j <= max_deg && static_cast<int>(out.size()) < n_polys; ++j) {
        Poly p{std::vector<cd>(cheb[j])};
        p.coeffs[0] -= p.at(cd(0, 0)); // enforce P(0) = 0
        out.push_back(std::move(p));
    }
    Rand rng(seed);
    while (static_cast<int>(out.size()) < n_polys) {
        Rand sub = rng.fork(out.size());
        std::vector<cd> coeffs(max_deg + 1, cd(0, 0));
        for (int j = 1; j <= max_deg; ++j) {
            const cd c = sub.cnormal();
            for (size_t i = 0; i < cheb[j].size(); ++i) coeffs[i] += c * cheb[j][i];
        }
        Poly p{std::move(coeffs)};
        p.coeffs[0] -= p.at(cd(0, 0));
        out.push_back(std::move(p));
    }
    return out;
}
} // namespace detail

// measure δ̂ = max ‖[P(S),T]‖ / sup_{|z|=R}|P| over a Chebyshev polynomial
// sample with P(0)=0, then require ‖[V,T]‖ ≤ δ̂ + slack for every spectral
// projection V of S
inline CheckReport check_sp_proj(const CMat& S, const CMat& T, double slack, double R, int n_polys,
                                 std::uint64_t seed = 0x6f7a737070726f6aULL) {
    const HermEig eig = herm_eig(S);
    // eigenvalue clusters
    std::vector<std::pair<int, int>> clusters; // [begin, end)
    const int n = static_cast<int>(eig.eigenvalues.size());
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(eig.eigenvalues(i)));
    scale = std::max(scale, 1e-300);
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || eig.eigenvalues(i) - eig.eigenvalues(i - 1) > 1e-8 * scale) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }
    const int m = static_cast<int>(clusters.size());
    if (m > 14) throw TooManyEigenvaluesError("check_sp_proj: too many distinct eigenvalues to enumerate");

    double delta_hat = 0.0;
    for (const Poly& p : detail::chebyshev_sample(R, n_polys, seed)) {
        const double sup = sup_on_circle(p, R);
        if (sup <= 0) continue;
        const CMat ps = poly_at(p, S);
        delta_hat = std::max(delta_hat, op_norm(CMat(ps * T - T * ps)) / sup);
    }

    // cluster projections
    std::vector<CMat> cps;
    for (const auto& [b, e] : clusters) {
        CMat p = CMat::Zero(n, n);
        for (int i = b; i < e; ++i) p += eig.basis.col(i) * eig.basis.col(i).adjoint();
        cps.push_back(std::move(p));
    }
    double lhs = 0.0;
    for (long mask = 0; mask < (1L << m); ++mask) {
        CMat v = CMat::Zero(n, n);
        for (int j = 0; j < m; ++j)
            if (mask & (1L << j)) v += cps[static_cast<size_t>(j)];
        lhs = std::max(lhs, op_norm(CMat(v * T - T * v)));
    }
    return make_report("sp-proj.commutators", lhs, delta_hat + slack,
                       {{"delta_hat", delta_hat}, {"R", R}, {"clusters", static_cast<double>(m)},
                        {"n_polys", static_cast<double>(n_polys)}});
}

// ---- hereditary range, dichotomies, BKS -------------------------------------------

// odd real fifth root applied through the eigenbasis
inline AlgElement odd_fifth_root(const AlgElement& a) {
    return func_calc_el(a, [](double t) { return std::copysign(std::pow(std::abs(t), 0.2), t); });
}

inline AlgElement omega_of(const LinMap& psi, const AlgElement& x) {
    const AlgElement h = apply(psi, unit(psi.dom));
    const AlgElement fx = apply(psi, x);
    const AlgElement fx2 = apply(psi, x * x);
    return h * fx2 * fx * fx2 * h;
}

struct HereditaryOptions {
    double alpha = 0.025;        // pseudo-power exponent, inside (0, 1/20)
    bool positive_variant = false; // constant-1 recheck for positive ψ on positive x
};

// range-vs-hereditary-corner checks:
//   ‖ψ(x)⁵ − ω(x)‖ ≤ 216‖ψ‖³ε‖x‖⁵ (self-adjoint x),
//   dist(ψ(x), supp(h)·B·supp(h)) ≤ K‖ψ‖^{3/5}ε^{1/5}‖x‖,
//   pseudo-power factorizations with their norm budgets.
inline std::vector<CheckReport> check_hereditary_distance(const LinMap& psi, double eps, double K,
                                                          const SampleSet& xs, const HereditaryOptions& opt = {}) {
    if (map_norm_upper(map_sub(psi, adjoint_map(psi))) > 1e-9 * std::max(1.0, map_norm_upper(psi)))
        throw NotSelfAdjointError("check_hereditary_distance: ψ must be self-adjoint");
    const AlgElement h = apply(psi, unit(psi.dom));
    const double up = map_norm_upper(psi);
    const double alpha = opt.alpha;
    const AlgElement h2 = h * h;
    const AlgElement h2a = frac_power_el(h2, alpha);
    const AlgElement h2a_inv = frac_power_el(h2, -alpha);

    double omega5 = 0.0, dist_lhs = 0.0, fact_a = 0.0, fact_b = 0.0, fact_c = 0.0;
    double budget_u = 0.0, budget_v = 0.0, budget_d = 0.0;

    auto corner_root = [&](const AlgElement& x) {
        // ω^{1/5} for self-adjoint x, extended to general x through real and
        // imaginary parts; always an element of the support corner of h
        const auto [x1, x2] = real_imag_el(x);
        return odd_fifth_root(omega_of(psi, x1)) + cd(0, 1) * odd_fifth_root(omega_of(psi, x2));
    };

    for (const AlgElement& x : xs.selfadjoint) {
        const double nx = norm(x);
        if (nx <= 0) continue;
        const AlgElement fx = apply(psi, x);
        const AlgElement w = omega_of(psi, x);
        const AlgElement fx5 = fx * fx * fx * fx * fx;
        omega5 = std::max(omega5, norm(fx5 - w) / std::pow(nx, 5));

        const AlgElement w15 = odd_fifth_root(w);
        const AlgElement u = w15 * h2a_inv;
        const AlgElement v = h2a_inv * w15;
        const AlgElement dd = h2a_inv * w15 * h2a_inv;
        fact_a = std::max(fact_a, norm(fx - u * h2a) / nx);
        fact_b = std::max(fact_b, norm(fx - h2a * v) / nx);
        fact_c = std::max(fact_c, norm(fx - h2a * dd * h2a) / nx);
        budget_u = std::max(budget_u, norm(u) / (2.0 * std::pow(up, 1.0 - 2.0 * alpha) * nx));
        budget_v = std::max(budget_v, norm(v) / (2.0 * std::pow(up, 1.0 - 2.0 * alpha) * nx));
        budget_d = std::max(budget_d,
                            norm(dd) / (2.0 * std::pow(up, 0.5 + 6.0 * alpha) * std::pow(nx, 0.5 + 10.0 * alpha)));
    }
    auto dist_scan = [&](const std::vector<AlgElement>& elems) {
        for (const AlgElement& x : elems) {
            const double nx = norm(x);
            if (nx <= 0) continue;
            const AlgElement fx = apply(psi, x);
            const double via_compress = dist_to_hereditary(fx, h).first;
            const double via_omega = norm(fx - corner_root(x));
            dist_lhs = std::max(dist_lhs, std::min(via_compress, via_omega) / nx);
        }
    };
    dist_scan(xs.selfadjoint);
    dist_scan(xs.general);

    const double kdist_rhs = K * std::pow(up, 0.6) * std::pow(eps, 0.2);
    std::vector<CheckReport> out;
    out.push_back(make_report("hereditary.omega5.216", omega5, 216.0 * std::pow(up, 3.0) * eps,
                              {{"eps", eps}, {"psi_upper", up}}));
    out.push_back(make_report("hereditary.distance.K", dist_lhs, kdist_rhs, {{"eps", eps}, {"K", K}}));
    out.push_back(make_report("hereditary.fact-a.residual", fact_a, kdist_rhs + kApproxSlack, {{"alpha", alpha}}));
    out.push_back(make_report("hereditary.fact-b.residual", fact_b, kdist_rhs + kApproxSlack, {{"alpha", alpha}}));
    out.push_back(make_report("hereditary.fact-c.residual", fact_c, kdist_rhs + kApproxSlack, {{"alpha", alpha}}));
    out.push_back(make_report("hereditary.fact-a.budget", budget_u, 1.0, {{"alpha", alpha}}));
    out.push_back(make_report("hereditary.fact-b.budget", budget_v, 1.0, {{"alpha", alpha}}));
    out.push_back(make_report("hereditary.fact-c.budget", budget_d, 1.0, {{"alpha", alpha}}));

    if (opt.positive_variant) {
        // for positive ψ and positive x the distance constant improves to 1
        const double up_pos = norm(h); // positive maps attain their norm at the unit
        double lhs = 0.0;
        for (const AlgElement& x : xs.positive) {
            const double nx = norm(x);
            if (nx <= 0) continue;
            const AlgElement fx = apply(psi, x);
            const AlgElement w15 = frac_power_el(omega_of(psi, x), 0.2);
            lhs = std::max(lhs, std::min(norm(fx - w15), dist_to_hereditary(fx, h).first) / nx);
        }
        out.push_back(make_report("hereditary.distance.positive-const1", lhs,
                                  std::pow(up_pos, 0.6) * std::pow(eps, 0.2) + kApproxSlack,
                                  {{"eps", eps}, {"psi_pos_upper", up_pos}}));
    }
    return out;
}

// norm dichotomy: ‖ψ‖ ≤ √((K+2)⁵ε) or ‖ψ‖ ≤ (K+2)⁵‖h‖
// positive variant: ‖ψ‖₊ ≤ 166√ε or ‖ψ‖₊ ≤ 2‖h‖
inline CheckReport check_dichotomy(const LinMap& psi, double eps, double K, bool positive_variant = false) {
    const AlgElement h = apply(psi, unit(psi.dom));
    const double hn = norm(h);
    if (positive_variant) {
        const double lhs = map_norm_pos(psi).value;
        const double rhs_a = 166.0 * std::sqrt(eps);
        const double rhs_b = 2.0 * hn;
        return make_report("dichotomy.positive", lhs, std::max(rhs_a, rhs_b),
                           {{"eps", eps}, {"branch_small", rhs_a}, {"branch_h", rhs_b}});
    }
    const double lhs = map_norm(psi).value;
    const double k2 = std::pow(K + 2.0, 5.0);
    const double rhs_a = std::sqrt(k2 * eps);
    const double rhs_b = k2 * hn;
    return make_report("dichotomy.selfadjoint", lhs, std::max(rhs_a, rhs_b),
                       {{"eps", eps}, {"K", K}, {"branch_small", rhs_a}, {"branch_h", rhs_b}});
}

// operator-Hölder inequality for fractional powers of PSD pairs
inline CheckReport check_bks(const CMat& A, const CMat& B, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("check_bks: alpha must lie in (0,1)");
    const CMat Aa = frac_power(A, alpha); // frac_power gates PSD
    const CMat Ba = frac_power(B, alpha);
    const double lhs = op_norm(CMat(Aa - Ba));
    const double rhs = std::pow(op_norm(CMat(A - B)), alpha);
    return make_report("bks.holder", lhs, rhs, {{"alpha", alpha}});
}

// smallest K making the hereditary distance check pass corpus-wide (bisection)
inline double estimate_K(const std::vector<CorpusEntry>& corpus, int samples_per_map = 24,
                         std::uint64_t seed = 0x6f7a6573744b0001ULL) {
    struct Item {
        const LinMap* map;
        double eps;
    };
    std::vector<Item> items;
    for (const CorpusEntry& e : corpus)
        if (e.has_tag("sa") && e.planted_eps) items.push_back({&e.map, *e.planted_eps});
    if (items.empty()) throw EmptyCorpusError("estimate_K: no self-adjoint entries with certified defect");

    auto passes = [&](double K) {
        int idx = 0;
        for (const Item& it : items) {
            const AlgElement h = apply(*it.map, unit(it.map->dom));
            const double up = map_norm_upper(*it.map);
            const double rhs = K * std::pow(up, 0.6) * std::pow(it.eps, 0.2);
            SampleSet xs = make_samples(it.map->dom, samples_per_map, seed ^ static_cast<std::uint64_t>(idx++));
            auto scan = [&](const std::vector<AlgElement>& elems) {
                for (const AlgElement& x : elems) {
                    const double nx = norm(x);
                    if (nx <= 0) continue;
                    if (dist_to_hereditary(apply(*it.map, x), h).first / nx > rhs + 1e-12) return false;
                }
                return true;
            };
            if (!scan(xs.selfadjoint) || !scan(xs.general)) return false;
        }
        return true;
    };

    double hi = 1.0;
    int guard = 0;
    while (!passes(hi) && guard++ < 60) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (passes(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// ---- unitization norm comparison ---------------------------------------------------

// Nonunital commutative model: functions on `points` sites supported on a
// proper subset, acting by multiplication on the full model.
struct CommutativeModel {
    int points;
    std::vector<int> support; // strict subset of {0, …, points−1}

    CommutativeModel(int pts, std::vector<int> supp) : points(pts), support(std::move(supp)) {
        if (static_cast<int>(support.size()) >= points || support.empty())
            throw DomainError("CommutativeModel: support must be a nonempty proper subset");
        for (int s : support)
            if (s < 0 || s >= points) throw DomainError("CommutativeModel: support index out of range");
    }
};

// ‖(x, α)‖_op = sup{‖xy + αy‖ : ‖y‖ ≤ 1} over the full model
inline double unitization_op_norm(const CommutativeModel& model, const RVec& x_on_support, cd alpha) {
    double mx = std::abs(alpha); // attained at sites outside the support
    for (size_t i = 0; i < model.support.size(); ++i)
        mx = std::max(mx, std::abs(cd(x_on_support(static_cast<int>(i)), 0.0) + alpha));
    return mx;
}

// ‖x‖ + |α| ≤ 3‖(x, α)‖_op
inline CheckReport check_gaur_kovarik(const CommutativeModel& model, const RVec& x_on_support, cd alpha) {
    if (x_on_support.size() != static_cast<int>(model.support.size()))
        throw ShapeMismatchError("check_gaur_kovarik: x must live on the support");
    const double lhs = x_on_support.cwiseAbs().maxCoeff() + std::abs(alpha);
    const double rhs = 3.0 * unitization_op_norm(model, x_on_support, alpha);
    return make_report("unitization.ell1-vs-op.3x", lhs, rhs, {{"alpha_abs", std::abs(alpha)}});
}

// grid search for a near-sharp ratio (‖x‖+|α|)/‖(x,α)‖_op on 2-point models
inline double gk_sharpness_search(int grid = 200) {
    const CommutativeModel model(2, {0});
    double best = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double t = -3.0 + 6.0 * i / grid;
        RVec x(1);
        x(0) = t;
        const cd alpha(1.0, 0.0);
        const double opn = unitization_op_norm(model, x, alpha);
        if (opn <= 0) continue;
        best = std::max(best, (std::abs(t) + std::abs(alpha)) / opn);
    }
    return best;
}

} // namespace ozkit
