// poly.hpp — complex polynomials: evaluation at scalars and Hermitian
// elements, the coefficient left-shift τP(z) = z⁻¹(P(z) − P(0)), and certified
// suprema on circles |z| = R.

#pragma once

#include <complex>
#include <vector>

#include "algebra.hpp"

namespace ozkit {

struct Poly {
    std::vector<cd> coeffs; // ascending, coeffs[k] multiplies z^k

    Poly() = default;
    Poly(std::initializer_list<cd> cs) : coeffs(cs) {}
    explicit Poly(std::vector<cd> cs) : coeffs(std::move(cs)) {}

    static Poly monomial(int k, cd c = 1.0) {
        std::vector<cd> cs(k + 1, cd(0, 0));
        cs[k] = c;
        return Poly(std::move(cs));
    }

    int degree() const {
        for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
            if (coeffs[k] != cd(0, 0)) return k;
        return -1; // zero polynomial
    }

    cd at(cd z) const {
        cd acc(0, 0);
        for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) acc = acc * z + coeffs[k];
        return acc;
    }

    cd constant_term() const { return coeffs.empty() ? cd(0, 0) : coeffs[0]; }

    // τP(z) = z⁻¹(P(z) − P(0)) — left-shift of coefficients
    Poly tau() const {
        if (coeffs.size() <= 1) return Poly{};
        return Poly(std::vector<cd>(coeffs.begin() + 1, coeffs.end()));
    }

    Poly scaled(cd c) const {
        Poly r = *this;
        for (cd& a : r.coeffs) a *= c;
        return r;
    }
};

// Horner evaluation at a square matrix (no eigendecomposition)
inline CMat poly_at(const Poly& p, const CMat& m) {
    const int n = static_cast<int>(m.rows());
    CMat acc = CMat::Zero(n, n);
    for (int k = static_cast<int>(p.coeffs.size()) - 1; k >= 0; --k) {
        acc = acc * m;
        acc += p.coeffs[k] * CMat::Identity(n, n);
    }
    return acc;
}

inline AlgElement poly_at(const Poly& p, const AlgElement& h) {
    AlgElement r(h.shape);
    for (size_t b = 0; b < h.blocks.size(); ++b) r.blocks[b] = poly_at(p, h.blocks[b]);
    return r;
}

// certified upper bound for sup_{|z|=R} |P(z)|: dense circle samples plus an
// arc-length Lipschitz pad from Σ k|a_k| R^{k−1}
inline double sup_on_circle(const Poly& p, double R, int samples = 4096) {
    if (p.degree() < 0) return 0.0;
    double mx = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double th = 2.0 * 3.14159265358979323846 * s / samples;
        mx = std::max(mx, std::abs(p.at(cd(R * std::cos(th), R * std::sin(th)))));
    }
    double lip = 0.0;
    double rpow = 1.0; // R^{k-1}
    for (size_t k = 1; k < p.coeffs.size(); ++k) {
        lip += static_cast<double>(k) * std::abs(p.coeffs[k]) * rpow;
        rpow *= R;
    }
    const double arc = 3.14159265358979323846 * R / samples; // half the sample spacing
    return mx + lip * arc;
}

} // namespace ozkit
