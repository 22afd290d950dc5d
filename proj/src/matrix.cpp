#include "braidgate/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace braidgate {

cplx psqrt(cplx z)
{
    if (z.imag() == 0.0) z = cplx(z.real(), 0.0);
    cplx r = std::sqrt(z);
    if (r.imag() == 0.0) r = cplx(r.real(), 0.0);
    return r;
}

Matrix::Matrix(std::size_t dim) : n_(dim), a_(dim * dim, cplx(0.0, 0.0)) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) : n_(rows.size()), a_()
{
    a_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_) throw DimensionError("Matrix: ragged initializer");
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t dim)
{
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diag(const std::vector<cplx>& d)
{
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o)
{
    if (o.n_ != n_) throw DimensionError("Matrix +: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o)
{
    if (o.n_ != n_) throw DimensionError("Matrix -: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(cplx s)
{
    for (auto& v : a_) v *= s;
    return *this;
}

Matrix Matrix::transpose() const
{
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::adjoint() const
{
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

cplx Matrix::trace() const
{
    cplx s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
}

double Matrix::max_norm() const
{
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, cplx s) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b)
{
    const std::size_t n = a.dim();
    if (b.dim() != n) throw DimensionError("Matrix *: dimension mismatch");
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

double max_diff(const Matrix& a, const Matrix& b)
{
    if (a.dim() != b.dim()) throw DimensionError("max_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix tensor_product(const Matrix& a, const Matrix& b)
{
    const std::size_t na = a.dim(), nb = b.dim();
    Matrix c(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return c;
}

Matrix tensor_power(const Matrix& a, int n)
{
    if (n < 0) throw DimensionError("tensor_power: negative exponent");
    Matrix out = Matrix::identity(1);
    for (int i = 0; i < n; ++i) out = tensor_product(out, a);
    return out;
}

static void require_two_qubit(const Matrix& r, const char* who, int a)
{
    if (r.dim() != 4) throw DimensionError(std::string(who) + ": expected a 4x4 operator");
    if (a != 1 && a != 2) throw DimensionError(std::string(who) + ": qubit index must be 1 or 2");
}

Matrix partial_trace(const Matrix& r, int a)
{
    require_two_qubit(r, "partial_trace", a);
    Matrix out(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (a == 2)
                    out(i, j) += r(2 * i + k, 2 * j + k);
                else
                    out(i, j) += r(2 * k + i, 2 * k + j);
            }
    return out;
}

Matrix partial_transpose(const Matrix& r, int a)
{
    require_two_qubit(r, "partial_transpose", a);
    Matrix out(4);
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int j2 = 0; j2 < 2; ++j2) {
                    if (a == 1)
                        out(2 * i1 + i2, 2 * j1 + j2) = r(2 * j1 + i2, 2 * i1 + j2);
                    else
                        out(2 * i1 + i2, 2 * j1 + j2) = r(2 * i1 + j2, 2 * j1 + i2);
                }
    return out;
}

namespace {

struct LU {
    Matrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    cplx det = 1.0;
};

LU decompose(const Matrix& m)
{
    const std::size_t n = m.dim();
    LU f{m, std::vector<std::size_t>(n), 1, 1.0};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(f.lu(i, k)) > best) {
                best = std::abs(f.lu(i, k));
                p = i;
            }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        const cplx piv = f.lu(k, k);
        f.det *= piv;
        if (piv == cplx(0.0, 0.0)) continue;
        for (std::size_t i = k + 1; i < n; ++i) {
            f.lu(i, k) /= piv;
            const cplx l = f.lu(i, k);
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
        }
    }
    f.det *= static_cast<double>(f.sign);
    return f;
}

}  // namespace

cplx determinant(const Matrix& m) { return decompose(m).det; }

Matrix invert(const Matrix& m)
{
    const std::size_t n = m.dim();
    if (n == 0) throw DimensionError("invert: empty matrix");
    const LU f = decompose(m);
    const double scale = m.max_norm();
    if (scale == 0.0 || std::abs(f.det) < 1e-12 * std::pow(scale, static_cast<double>(n)))
        throw SingularMatrixError("invert: matrix is singular to working precision");
    Matrix inv(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<cplx> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = (f.perm[i] == col) ? 1.0 : 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
        for (std::size_t ii = n; ii-- > 0;) {
            for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
            x[ii] /= f.lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
    }
    return inv;
}

Matrix power(const Matrix& m, int k)
{
    Matrix base = k < 0 ? invert(m) : m;
    unsigned e = static_cast<unsigned>(k < 0 ? -static_cast<long>(k) : k);
    Matrix out = Matrix::identity(m.dim());
    while (e) {
        if (e & 1u) out = out * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return out;
}

std::vector<cplx> characteristic_polynomial(const Matrix& m)
{
    const std::size_t n = m.dim();
    std::vector<cplx> c(n + 1);
    c[0] = 1.0;
    Matrix mk(n);  // M_0 = 0
    const Matrix id = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk + c[k - 1] * id;
        c[k] = -(m * mk).trace() / static_cast<double>(k);
    }
    return c;
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& monic)
{
    const std::size_t deg = monic.size() - 1;
    if (deg == 0) return {};
    auto eval = [&](cplx z) {
        cplx v = monic[0];
        for (std::size_t i = 1; i <= deg; ++i) v = v * z + monic[i];
        return v;
    };
    double radius = 0.0;
    for (std::size_t i = 1; i <= deg; ++i) radius = std::max(radius, std::abs(monic[i]));
    radius = 1.0 + radius;
    std::vector<cplx> z(deg);
    const cplx seed(0.4, 0.9);
    for (std::size_t i = 0; i < deg; ++i) z[i] = radius * std::pow(seed, static_cast<double>(i));
    for (int it = 0; it < 2000; ++it) {
        double change = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            cplx den = 1.0;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (den == cplx(0.0, 0.0)) den = 1e-300;
            const cplx step = eval(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-16 * radius) break;
    }
    return z;
}

std::vector<cplx> eigenvalues(const Matrix& m)
{
    if (m.dim() > 4) throw DimensionError("eigenvalues: only dim <= 4 is supported");
    return polynomial_roots(characteristic_polynomial(m));
}

namespace pauli {
Matrix I() { return Matrix::identity(2); }
Matrix X() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix Y() { return Matrix{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
Matrix Z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace braidgate
