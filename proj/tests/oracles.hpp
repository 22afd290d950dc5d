#pragma once

// Reference computations for the tests.  Everything here goes through Eigen
// or explicit index loops and never calls back into the library's own
// algebra, so agreement is a real cross-check.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <array>
#include <complex>
#include <random>
#include <vector>

#include "braidgate/matrix.hpp"

namespace oracle {

using cd = std::complex<double>;
using MatX = Eigen::MatrixXcd;

inline MatX to_eigen(const braidgate::Matrix& m)
{
    const auto n = static_cast<Eigen::Index>(m.dim());
    MatX out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(i, j);
    return out;
}

inline braidgate::Matrix from_eigen(const MatX& m)
{
    braidgate::Matrix out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

inline MatX kron(const MatX& a, const MatX& b)
{
    MatX out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline MatX eye(Eigen::Index n) { return MatX::Identity(n, n); }

inline double maxabs(const MatX& m) { return m.cwiseAbs().maxCoeff(); }

inline double ybe_residual(const MatX& r)
{
    const MatX a = kron(r, eye(2)), b = kron(eye(2), r);
    return maxabs(a * b * a - b * a * b);
}

/// sigma_i on n strands.
inline MatX generator(const MatX& r, int i, int n)
{
    return kron(kron(eye(Eigen::Index(1) << (i - 1)), r), eye(Eigen::Index(1) << (n - i - 1)));
}

/// x^-w y^-n Tr[rho(word) mu^(x n)] with the word as (generator, exponent) pairs.
inline cd link_value(const MatX& r, const MatX& mu, cd x, cd y, int n, const std::vector<std::pair<int, int>>& word)
{
    const Eigen::Index dim = Eigen::Index(1) << n;
    MatX rho = eye(dim);
    const MatX rinv = r.inverse();
    int w = 0;
    for (auto [g, e] : word) {
        const MatX s = generator(e > 0 ? r : rinv, g, n);
        for (int k = 0; k < std::abs(e); ++k) rho = rho * s;
        w += e;
    }
    MatX m = mu;
    for (int k = 1; k < n; ++k) m = kron(m, mu);
    return std::pow(x, -w) * std::pow(y, -n) * (rho * m).trace();
}

/// Partial trace over the second qubit of a 4x4 operator.
inline MatX trace_second(const MatX& m)
{
    MatX out = MatX::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int k = 0; k < 2; ++k) out(a, b) += m(2 * a + k, 2 * b + k);
    return out;
}

/// Largest residual of the three enhancement conditions, unscaled.
inline double enhancement_residual(const MatX& r, const MatX& mu, cd x, cd y)
{
    const MatX mm = kron(mu, mu);
    double worst = maxabs(r * mm - mm * r);
    worst = std::max(worst, maxabs(trace_second(r * mm) - x * y * mu));
    worst = std::max(worst, maxabs(trace_second(r.inverse() * mm) - (y / x) * mu));
    return worst;
}

// -----------------------------------------------------------------------------
// Invariants by literal contraction, indices R[(i1 i2), (j1 j2)] with
// row = 2 i1 + i2 and column = 2 j1 + j2.

inline cd at(const MatX& r, int i1, int i2, int j1, int j2) { return r(2 * i1 + i2, 2 * j1 + j2); }

inline double eps(int a, int b) { return a == b ? 0.0 : (a == 0 ? 1.0 : -1.0); }
inline double del(int a, int b) { return a == b ? 1.0 : 0.0; }

/// I1 followed by I2_1 ... I2_10.
inline std::array<cd, 11> invariants(const MatX& r)
{
    std::array<cd, 11> out{};
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2) out[0] += at(r, i1, i2, i1, i2);

    // Pair contractions over R[a1 a2, b1 b2] R[c1 c2, d1 d2].
    for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
    for (int b1 = 0; b1 < 2; ++b1)
    for (int b2 = 0; b2 < 2; ++b2)
    for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2)
    for (int d1 = 0; d1 < 2; ++d1)
    for (int d2 = 0; d2 < 2; ++d2) {
        const cd rr = at(r, a1, a2, b1, b2) * at(r, c1, c2, d1, d2);
        if (rr == cd(0.0)) continue;
        out[1] += rr * del(a1, d1) * del(b1, c1) * del(a2, d2) * del(b2, c2);
        out[2] += rr * del(a1, d1) * del(b1, c1) * del(a2, b2) * del(c2, d2);
        out[3] += rr * del(a1, b1) * del(c1, d1) * del(a2, d2) * del(b2, c2);
        out[4] += rr * eps(a1, c1) * eps(b1, d1) * del(a2, d2) * del(b2, c2);
        out[5] += rr * del(a1, d1) * del(b1, c1) * eps(a2, c2) * eps(b2, d2);
        out[6] += rr * eps(a1, c1) * eps(b1, d1) * del(a2, b2) * del(c2, d2);
        out[7] += rr * del(a1, b1) * del(c1, d1) * eps(a2, c2) * eps(b2, d2);
        out[8] += rr * eps(a1, c1) * eps(b1, d1) * eps(a2, c2) * eps(b2, d2);
    }
    // R_12 and R_23 share qubit 2: R[i1 i2, k1 k2] R[j2 j3, l2 l3] with
    // i1 = k1 and j3 = l3 traced.
    for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
    for (int k2 = 0; k2 < 2; ++k2)
    for (int j2 = 0; j2 < 2; ++j2)
    for (int l2 = 0; l2 < 2; ++l2)
    for (int j3 = 0; j3 < 2; ++j3) {
        const cd rr = at(r, i1, i2, i1, k2) * at(r, j2, j3, l2, j3);
        out[9] += rr * del(i2, l2) * del(k2, j2);
        out[10] += rr * eps(i2, j2) * eps(k2, l2);
    }
    return out;
}

// -----------------------------------------------------------------------------
// Entangling power: exact Haar moments.  For a uniformly random qubit state
// E[a_p a_q conj(a_r) conj(a_s)] = (d_pr d_qs + d_ps d_qr) / 6.

inline double haar4(int p, int q, int r, int s) { return (del(p, r) * del(q, s) + del(p, s) * del(q, r)) / 6.0; }

/// Average of |det t|^2 over product inputs, t the 2x2 coefficient matrix
/// of R (a x b).
inline double entangling_power(const MatX& r)
{
    // det t = sum C[p q p' q'] a_p b_q a_p' b_q'.
    cd c[2][2][2][2];
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
            for (int pp = 0; pp < 2; ++pp)
                for (int qq = 0; qq < 2; ++qq)
                    c[p][q][pp][qq] = r(0, 2 * p + q) * r(3, 2 * pp + qq) - r(1, 2 * p + q) * r(2, 2 * pp + qq);
    cd sum = 0.0;
    for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
    for (int pp = 0; pp < 2; ++pp)
    for (int qq = 0; qq < 2; ++qq)
    for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
    for (int ss = 0; ss < 2; ++ss)
    for (int tt = 0; tt < 2; ++tt)
        sum += c[p][q][pp][qq] * std::conj(c[s][t][ss][tt]) * haar4(p, pp, s, ss) * haar4(q, qq, t, tt);
    return sum.real();
}

/// Plain Monte Carlo over Gaussian-normalized product states.
inline double entangling_power_mc(const MatX& r, int samples, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    auto state = [&] {
        Eigen::Vector2cd v(cd(g(rng), g(rng)), cd(g(rng), g(rng)));
        return Eigen::Vector2cd(v / v.norm());
    };
    double acc = 0.0;
    for (int n = 0; n < samples; ++n) {
        const Eigen::Vector2cd a = state(), b = state();
        Eigen::Vector4cd in;
        in << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
        const Eigen::Vector4cd out = r * in;
        acc += std::norm(out(0) * out(3) - out(1) * out(2));
    }
    return acc / samples;
}

inline std::vector<cd> eigenvalues(const MatX& r)
{
    Eigen::ComplexEigenSolver<MatX> es(r);
    std::vector<cd> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

inline MatX random_dense(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    MatX m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cd(g(rng), g(rng));
    return m;
}

/// Random 2x2 matrix rescaled to unit determinant.
inline MatX random_sl2(std::mt19937_64& rng)
{
    MatX q = random_dense(2, rng);
    return q / std::sqrt(q.determinant());
}

}  // namespace oracle
