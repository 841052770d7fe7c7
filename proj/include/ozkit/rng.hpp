// rng.hpp — deterministic seeded sampling.
//
// All randomness in the toolkit flows through Rand so that a (seed, call
// sequence) pair reproduces results bit-identically.  Distribution code is
// written out explicitly (no std::*_distribution) to keep the stream stable
// across standard-library versions.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ozkit {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rand {
  public:
    explicit Rand(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // inclusive range
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(gen_() % span);
    }

    // Box–Muller, one value per call
    double normal() {
        const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // standard complex Gaussian, E|z|^2 = 1
    cd cnormal() {
        const double re = normal();
        const double im = normal();
        return cd(re * 0.7071067811865475244, im * 0.7071067811865475244);
    }

    // independent child stream; derivation depends only on (seed, salt)
    Rand fork(std::uint64_t salt) const {
        std::uint64_t s = seed_ ^ (0x9e3779b97f4a7c15ULL * (salt + 0x632be59bd9b4e019ULL));
        splitmix64(s);
        const std::uint64_t derived = splitmix64(s);
        return Rand(derived);
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

inline CMat gaussian_matrix(Rand& rng, int rows, int cols) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.cnormal();
    return m;
}

inline CMat hermitian_gaussian(Rand& rng, int n) {
    CMat g = gaussian_matrix(rng, n, n);
    return CMat(0.5 * (g + g.adjoint()));
}

// Haar-ish unitary: QR of a Gaussian with the phase convention R_ii > 0
inline CMat random_unitary(Rand& rng, int n) {
    CMat g = gaussian_matrix(rng, n, n);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        const cd rii = r(i, i);
        const double a = std::abs(rii);
        const cd phase = (a > 0.0) ? rii / a : cd(1.0, 0.0);
        q.col(i) *= phase;
    }
    return q;
}

// U diag(t) U* with t_i uniform in [lo, hi]
inline CMat random_psd(Rand& rng, int n, double lo, double hi) {
    CMat u = random_unitary(rng, n);
    RVec t(n);
    for (int i = 0; i < n; ++i) t(i) = rng.uniform(lo, hi);
    return u * t.asDiagonal() * u.adjoint();
}

} // namespace ozkit
