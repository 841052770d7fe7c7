// matcore.hpp — dense complex-matrix kernels.
//
// Operator norm, Hermitian eigendecomposition, functional calculus, spectral
// projections, Jordan decomposition x = x₊ − x₋, real/imaginary splitting,
// fractional pseudo-powers a^α (α < 0 taken on the support of a), support
// projections.  Everything is a pure function on value types; Eigen does the
// dense numerics underneath.

#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "errors.hpp"

namespace ozkit {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Hermiticity input gate: ‖m − m*‖ ≤ kHermTolRel·‖m‖, then symmetrize.
inline constexpr double kHermTolRel = 1e-8;
// Eigenvalues with |λ| ≤ kRankCutoffRel·‖m‖ count as kernel for supports and
// negative pseudo-powers.
inline constexpr double kRankCutoffRel = 1e-10;

// largest singular value; zero iff m = 0
inline double op_norm(const CMat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

inline double herm_norm(const CMat& m) {
    // for Hermitian m the operator norm is the largest |eigenvalue|
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    const RVec& ev = es.eigenvalues();
    double mx = 0.0;
    for (int i = 0; i < ev.size(); ++i) mx = std::max(mx, std::abs(ev(i)));
    return mx;
}

struct HermEig {
    RVec eigenvalues; // ascending
    CMat basis;       // unitary; basis · diag(eigenvalues) · basis* reconstructs
};

namespace detail {
inline void require_square(const CMat& m, const char* who) {
    if (m.rows() != m.cols()) throw ShapeMismatchError(std::string(who) + ": matrix is not square");
}
} // namespace detail

inline bool is_hermitian(const CMat& m, double rel_tol = kHermTolRel) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1e-300, op_norm(m));
    return op_norm(CMat(m - m.adjoint())) <= rel_tol * scale;
}

inline HermEig herm_eig(const CMat& m) {
    detail::require_square(m, "herm_eig");
    if (!is_hermitian(m)) throw NotHermitianError("herm_eig: input exceeds Hermiticity tolerance");
    const CMat sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(sym);
    if (es.info() != Eigen::Success) throw Error("herm_eig: eigensolver failed");
    return HermEig{es.eigenvalues(), es.eigenvectors()};
}

// f applied to the spectrum in the eigenbasis; commutes with m
template <class F>
CMat func_calc(const CMat& m, F&& f) {
    const HermEig eig = herm_eig(m);
    const int n = static_cast<int>(eig.eigenvalues.size());
    RVec mapped(n);
    for (int i = 0; i < n; ++i) mapped(i) = f(eig.eigenvalues(i));
    return eig.basis * mapped.asDiagonal() * eig.basis.adjoint();
}

// sum of eigenprojections over eigenvalues satisfying pred (exact computed
// eigenvalues; predicate boundaries are the caller's closed conditions)
template <class Pred>
CMat spectral_projection(const CMat& m, Pred&& pred) {
    const HermEig eig = herm_eig(m);
    const int n = static_cast<int>(eig.eigenvalues.size());
    CMat p = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (pred(eig.eigenvalues(i))) p += eig.basis.col(i) * eig.basis.col(i).adjoint();
    return p;
}

// x = x₊ − x₋ with x₊x₋ = 0, both PSD
inline std::pair<CMat, CMat> jordan_parts(const CMat& x) {
    const HermEig eig = herm_eig(x);
    const int n = static_cast<int>(eig.eigenvalues.size());
    RVec plus(n), minus(n);
    for (int i = 0; i < n; ++i) {
        plus(i) = std::max(eig.eigenvalues(i), 0.0);
        minus(i) = -std::min(eig.eigenvalues(i), 0.0);
    }
    return {CMat(eig.basis * plus.asDiagonal() * eig.basis.adjoint()),
            CMat(eig.basis * minus.asDiagonal() * eig.basis.adjoint())};
}

// x = x₁ + i·x₂ with both Hermitian
inline std::pair<CMat, CMat> real_imag(const CMat& x) {
    detail::require_square(x, "real_imag");
    const CMat re = 0.5 * (x + x.adjoint());
    const CMat im = (x - x.adjoint()) * cd(0.0, -0.5);
    return {re, im};
}

// a^α for PSD a; eigenvalues below the rank cutoff map to 0, so that
// a^α · a^{−α} = support projection of a
inline CMat frac_power(const CMat& a, double alpha) {
    detail::require_square(a, "frac_power");
    if (!is_hermitian(a)) throw NotPsdError("frac_power: input is not Hermitian");
    const HermEig eig = herm_eig(a);
    const int n = static_cast<int>(eig.eigenvalues.size());
    double top = 0.0;
    for (int i = 0; i < n; ++i) top = std::max(top, std::abs(eig.eigenvalues(i)));
    const double psd_tol = kHermTolRel * std::max(1e-300, top);
    const double cutoff = kRankCutoffRel * top;
    RVec mapped(n);
    for (int i = 0; i < n; ++i) {
        const double t = eig.eigenvalues(i);
        if (t < -psd_tol) throw NotPsdError("frac_power: negative eigenvalue beyond tolerance");
        mapped(i) = (t <= cutoff) ? 0.0 : std::pow(t, alpha);
    }
    return eig.basis * mapped.asDiagonal() * eig.basis.adjoint();
}

// projection onto the non-kernel eigenspaces of Hermitian h
inline CMat support_projection(const CMat& h) {
    const HermEig eig = herm_eig(h);
    const int n = static_cast<int>(eig.eigenvalues.size());
    double top = 0.0;
    for (int i = 0; i < n; ++i) top = std::max(top, std::abs(eig.eigenvalues(i)));
    const double cutoff = kRankCutoffRel * top;
    CMat p = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (std::abs(eig.eigenvalues(i)) > cutoff) p += eig.basis.col(i) * eig.basis.col(i).adjoint();
    return p;
}

// numerical rank with the same cutoff convention as support_projection
inline int support_rank(const CMat& h) {
    const HermEig eig = herm_eig(h);
    double top = 0.0;
    for (int i = 0; i < eig.eigenvalues.size(); ++i) top = std::max(top, std::abs(eig.eigenvalues(i)));
    const double cutoff = kRankCutoffRel * top;
    int r = 0;
    for (int i = 0; i < eig.eigenvalues.size(); ++i)
        if (std::abs(eig.eigenvalues(i)) > cutoff) ++r;
    return r;
}

// top singular triple (σ, u, v) with m ≈ Σ σᵢ uᵢ vᵢ*
struct TopSingular {
    double sigma = 0.0;
    CVec u, v;
};

inline TopSingular top_singular(const CMat& m) {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    TopSingular t;
    t.sigma = (svd.singularValues().size() > 0) ? svd.singularValues()(0) : 0.0;
    if (svd.matrixU().cols() > 0) {
        t.u = svd.matrixU().col(0);
        t.v = svd.matrixV().col(0);
    } else {
        t.u = CVec::Zero(m.rows());
        t.v = CVec::Zero(m.cols());
    }
    return t;
}

} // namespace ozkit
