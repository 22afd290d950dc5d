#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace braidgate {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Principal square root with the sign of a zero imaginary part normalized,
// so that sqrt(-4 - 0i) gives +2i rather than -2i.
cplx psqrt(cplx z);

// Dense square complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim);
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static Matrix identity(std::size_t dim);
    static Matrix diag(const std::vector<cplx>& d);

    std::size_t dim() const { return n_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    const std::vector<cplx>& data() const { return a_; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);

    Matrix transpose() const;
    Matrix adjoint() const;
    cplx trace() const;
    double max_norm() const;

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
Matrix operator*(Matrix a, cplx s);

// max |a - b| over all entries
double max_diff(const Matrix& a, const Matrix& b);

Matrix commutator(const Matrix& a, const Matrix& b);

// Kronecker product: entry[(i*b.dim+k),(j*b.dim+l)] = a[i,j]*b[k,l].
Matrix tensor_product(const Matrix& a, const Matrix& b);
Matrix tensor_power(const Matrix& a, int n);

// Two-qubit partial trace over qubit `a` (1 or 2); result is 2x2.
Matrix partial_trace(const Matrix& r, int a);

// Two-qubit partial transpose on qubit `a` (1 or 2).
Matrix partial_transpose(const Matrix& r, int a);

// LU with partial pivoting. Throws SingularMatrixError when
// |det| < 1e-12 * (max-norm)^dim.
Matrix invert(const Matrix& m);
cplx determinant(const Matrix& m);

// m^k for any integer k; negative k goes through invert().
Matrix power(const Matrix& m, int k);

// Characteristic polynomial det(lambda I - m) by Faddeev-LeVerrier.
// Coefficients are returned highest degree first, leading coefficient 1.
std::vector<cplx> characteristic_polynomial(const Matrix& m);

// Roots of a monic polynomial (highest degree first) by Durand-Kerner.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& monic);

// Eigenvalues for dim <= 4 via the characteristic polynomial.
std::vector<cplx> eigenvalues(const Matrix& m);

namespace pauli {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
}  // namespace pauli

}  // namespace braidgate
