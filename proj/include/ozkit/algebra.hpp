// algebra.hpp — finite-dimensional C*-algebras A ≅ M_{n₁} ⊕ … ⊕ M_{n_k}.
//
// Elements are lists of complex blocks; the norm is the max of block operator
// norms.  Provides the unit, positivity and orthogonality tests, corner
// compressions, hereditary-corner distances and the center basis.

#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "matcore.hpp"

namespace ozkit {

// total coordinate dimension Σnᵢ² is capped at desk scale
inline constexpr int kMaxCoordDim = 4096;

struct AlgebraShape {
    std::vector<int> blocks;

    AlgebraShape() = default;
    AlgebraShape(std::initializer_list<int> bs) : blocks(bs) { validate(); }
    explicit AlgebraShape(std::vector<int> bs) : blocks(std::move(bs)) { validate(); }

    void validate() const {
        if (blocks.empty()) throw ShapeMismatchError("AlgebraShape: no blocks");
        long long dim = 0;
        for (int n : blocks) {
            if (n < 1) throw ShapeMismatchError("AlgebraShape: block size must be positive");
            dim += static_cast<long long>(n) * n;
        }
        if (dim > kMaxCoordDim) throw DimensionOverflowError("AlgebraShape: coordinate dimension exceeds desk-scale cap");
    }

    int num_blocks() const { return static_cast<int>(blocks.size()); }

    // Σ nᵢ² — dimension of the element coordinate space
    int coord_dim() const {
        int d = 0;
        for (int n : blocks) d += n * n;
        return d;
    }

    // Σ nᵢ — size of the assembled block-diagonal matrix
    int total_matrix_dim() const {
        return std::accumulate(blocks.begin(), blocks.end(), 0);
    }

    bool operator==(const AlgebraShape& o) const { return blocks == o.blocks; }
    bool operator!=(const AlgebraShape& o) const { return !(*this == o); }
};

struct AlgElement {
    AlgebraShape shape;
    std::vector<CMat> blocks;

    AlgElement() = default;

    explicit AlgElement(const AlgebraShape& s) : shape(s) {
        blocks.reserve(s.blocks.size());
        for (int n : s.blocks) blocks.push_back(CMat::Zero(n, n));
    }

    AlgElement(const AlgebraShape& s, std::vector<CMat> bs) : shape(s), blocks(std::move(bs)) {
        if (static_cast<int>(blocks.size()) != shape.num_blocks())
            throw ShapeMismatchError("AlgElement: block count mismatch");
        for (int b = 0; b < shape.num_blocks(); ++b)
            if (blocks[b].rows() != shape.blocks[b] || blocks[b].cols() != shape.blocks[b])
                throw ShapeMismatchError("AlgElement: block dimension mismatch");
    }

    static AlgElement zero(const AlgebraShape& s) { return AlgElement(s); }
};

namespace detail {
inline void require_same_shape(const AlgElement& a, const AlgElement& b, const char* who) {
    if (a.shape != b.shape) throw ShapeMismatchError(std::string(who) + ": shape mismatch");
}
} // namespace detail

inline AlgElement operator+(const AlgElement& a, const AlgElement& b) {
    detail::require_same_shape(a, b, "operator+");
    AlgElement r(a.shape);
    for (size_t i = 0; i < a.blocks.size(); ++i) r.blocks[i] = a.blocks[i] + b.blocks[i];
    return r;
}

inline AlgElement operator-(const AlgElement& a, const AlgElement& b) {
    detail::require_same_shape(a, b, "operator-");
    AlgElement r(a.shape);
    for (size_t i = 0; i < a.blocks.size(); ++i) r.blocks[i] = a.blocks[i] - b.blocks[i];
    return r;
}

inline AlgElement operator*(cd c, const AlgElement& a) {
    AlgElement r(a.shape);
    for (size_t i = 0; i < a.blocks.size(); ++i) r.blocks[i] = c * a.blocks[i];
    return r;
}

inline AlgElement operator*(double c, const AlgElement& a) { return cd(c, 0.0) * a; }

// blockwise product
inline AlgElement operator*(const AlgElement& a, const AlgElement& b) {
    detail::require_same_shape(a, b, "operator*");
    AlgElement r(a.shape);
    for (size_t i = 0; i < a.blocks.size(); ++i) r.blocks[i] = a.blocks[i] * b.blocks[i];
    return r;
}

inline AlgElement adj(const AlgElement& a) {
    AlgElement r(a.shape);
    for (size_t i = 0; i < a.blocks.size(); ++i) r.blocks[i] = a.blocks[i].adjoint();
    return r;
}

// C*-norm: max of block operator norms
inline double norm(const AlgElement& a) {
    double mx = 0.0;
    for (const CMat& b : a.blocks) mx = std::max(mx, op_norm(b));
    return mx;
}

inline double frobenius_norm(const AlgElement& a) {
    double s = 0.0;
    for (const CMat& b : a.blocks) s += b.squaredNorm();
    return std::sqrt(s);
}

inline AlgElement unit(const AlgebraShape& shape) {
    AlgElement r(shape);
    for (int b = 0; b < shape.num_blocks(); ++b) r.blocks[b] = CMat::Identity(shape.blocks[b], shape.blocks[b]);
    return r;
}

// ---- coordinates -----------------------------------------------------------
// Elements are vectorized block by block, each block column-major.

inline CVec vec_of(const AlgElement& a) {
    CVec v(a.shape.coord_dim());
    int off = 0;
    for (const CMat& b : a.blocks) {
        const int sz = static_cast<int>(b.size());
        v.segment(off, sz) = Eigen::Map<const CVec>(b.data(), sz);
        off += sz;
    }
    return v;
}

inline AlgElement element_from_vec(const AlgebraShape& shape, const CVec& v) {
    if (v.size() != shape.coord_dim()) throw ShapeMismatchError("element_from_vec: coordinate size mismatch");
    AlgElement r(shape);
    int off = 0;
    for (int b = 0; b < shape.num_blocks(); ++b) {
        const int n = shape.blocks[b];
        r.blocks[b] = Eigen::Map<const CMat>(v.data() + off, n, n);
        off += n * n;
    }
    return r;
}

// block-diagonal assembly in M_{Σnᵢ}
inline CMat assemble(const AlgElement& a) {
    const int n = a.shape.total_matrix_dim();
    CMat m = CMat::Zero(n, n);
    int off = 0;
    for (const CMat& b : a.blocks) {
        m.block(off, off, b.rows(), b.cols()) = b;
        off += static_cast<int>(b.rows());
    }
    return m;
}

// coordinate index of the (i,j) entry of block b (column-major within block)
inline int coord_index(const AlgebraShape& shape, int block, int i, int j) {
    int off = 0;
    for (int b = 0; b < block; ++b) off += shape.blocks[b] * shape.blocks[b];
    return off + j * shape.blocks[block] + i;
}

// k-th coordinate basis element (a matrix unit in one block)
inline AlgElement basis_element(const AlgebraShape& shape, int k) {
    AlgElement r(shape);
    int off = 0;
    for (int b = 0; b < shape.num_blocks(); ++b) {
        const int n = shape.blocks[b];
        if (k < off + n * n) {
            const int local = k - off;
            r.blocks[b](local % n, local / n) = 1.0;
            return r;
        }
        off += n * n;
    }
    throw ShapeMismatchError("basis_element: index out of range");
}

// ---- blockwise functional calculus -----------------------------------------

template <class F>
AlgElement func_calc_el(const AlgElement& a, F&& f) {
    AlgElement r(a.shape);
    for (size_t i = 0; i < a.blocks.size(); ++i) r.blocks[i] = func_calc(a.blocks[i], f);
    return r;
}

template <class Pred>
AlgElement spectral_projection_el(const AlgElement& a, Pred&& pred) {
    AlgElement r(a.shape);
    for (size_t i = 0; i < a.blocks.size(); ++i) r.blocks[i] = spectral_projection(a.blocks[i], pred);
    return r;
}

inline AlgElement support_projection_el(const AlgElement& h) {
    // the kernel cutoff is relative to the global norm, so blocks share a scale
    const double top = norm(h);
    const double cutoff = kRankCutoffRel * top;
    AlgElement r(h.shape);
    for (size_t i = 0; i < h.blocks.size(); ++i)
        r.blocks[i] = spectral_projection(h.blocks[i], [cutoff](double t) { return std::abs(t) > cutoff; });
    return r;
}

inline AlgElement frac_power_el(const AlgElement& a, double alpha) {
    const double top = norm(a);
    const double cutoff = kRankCutoffRel * top;
    const double psd_tol = kHermTolRel * std::max(1e-300, top);
    AlgElement r(a.shape);
    for (size_t i = 0; i < a.blocks.size(); ++i) {
        const HermEig eig = herm_eig(a.blocks[i]);
        const int n = static_cast<int>(eig.eigenvalues.size());
        RVec mapped(n);
        for (int j = 0; j < n; ++j) {
            const double t = eig.eigenvalues(j);
            if (t < -psd_tol) throw NotPsdError("frac_power_el: negative eigenvalue beyond tolerance");
            mapped(j) = (t <= cutoff) ? 0.0 : std::pow(t, alpha);
        }
        r.blocks[i] = eig.basis * mapped.asDiagonal() * eig.basis.adjoint();
    }
    return r;
}

inline std::pair<AlgElement, AlgElement> jordan_parts_el(const AlgElement& x) {
    AlgElement p(x.shape), m(x.shape);
    for (size_t i = 0; i < x.blocks.size(); ++i) {
        auto [bp, bm] = jordan_parts(x.blocks[i]);
        p.blocks[i] = bp;
        m.blocks[i] = bm;
    }
    return {p, m};
}

inline std::pair<AlgElement, AlgElement> real_imag_el(const AlgElement& x) {
    AlgElement re(x.shape), im(x.shape);
    for (size_t i = 0; i < x.blocks.size(); ++i) {
        auto [br, bi] = real_imag(x.blocks[i]);
        re.blocks[i] = br;
        im.blocks[i] = bi;
    }
    return {re, im};
}

inline bool is_hermitian_el(const AlgElement& a, double rel_tol = kHermTolRel) {
    const double scale = std::max(1e-300, norm(a));
    return norm(a - adj(a)) <= rel_tol * scale;
}

// ---- spec operations --------------------------------------------------------

// true iff each block is Hermitian within tol and min eigenvalue ≥ −tol
inline bool is_positive(const AlgElement& x, double tol) {
    for (const CMat& b : x.blocks) {
        if (op_norm(CMat(b - b.adjoint())) > tol) return false;
        Eigen::SelfAdjointEigenSolver<CMat> es(CMat(0.5 * (b + b.adjoint())), Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol) return false;
    }
    return true;
}

// x ⊥ y: xy = yx = x*y = xy* = 0 within tol·‖x‖‖y‖
inline bool is_orthogonal_pair(const AlgElement& x, const AlgElement& y, double tol) {
    detail::require_same_shape(x, y, "is_orthogonal_pair");
    const double scale = norm(x) * norm(y);
    const double bound = tol * scale;
    if (norm(x * y) > bound) return false;
    if (norm(y * x) > bound) return false;
    if (norm(adj(x) * y) > bound) return false;
    if (norm(x * adj(y)) > bound) return false;
    return true;
}

inline bool is_projection_el(const AlgElement& p, double tol = 1e-8) {
    const double scale = std::max(1.0, norm(p));
    return norm(p * p - p) <= tol * scale && norm(p - adj(p)) <= tol * scale;
}

inline AlgElement corner_compress(const AlgElement& b, const AlgElement& p) {
    detail::require_same_shape(b, p, "corner_compress");
    if (!is_projection_el(p)) throw NotProjectionError("corner_compress: p is not a projection");
    return p * b * p;
}

// (upper, lower) bounds on dist(b, P𝔅P) with P = supp(h):
//   upper = ‖b − PbP‖ (compression; at most twice the true distance),
//   lower = max of the three off-corner compressions / 3.
inline std::pair<double, double> dist_to_hereditary(const AlgElement& b, const AlgElement& h) {
    detail::require_same_shape(b, h, "dist_to_hereditary");
    if (!is_hermitian_el(h)) throw NotHermitianError("dist_to_hereditary: h is not Hermitian");
    const AlgElement p = support_projection_el(h);
    const AlgElement q = unit(b.shape) - p;
    const double upper = norm(b - p * b * p);
    const double lower =
        std::max({norm(q * b * q), norm(q * b * p), norm(p * b * q)}) / 3.0;
    return {upper, lower};
}

// the k block identities; they span Z(A)
inline std::vector<AlgElement> center_basis(const AlgebraShape& shape) {
    std::vector<AlgElement> basis;
    basis.reserve(shape.blocks.size());
    for (int b = 0; b < shape.num_blocks(); ++b) {
        AlgElement e(shape);
        e.blocks[b] = CMat::Identity(shape.blocks[b], shape.blocks[b]);
        basis.push_back(std::move(e));
    }
    return basis;
}

} // namespace ozkit
