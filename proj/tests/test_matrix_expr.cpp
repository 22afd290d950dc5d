#include <doctest.h>

#include <algorithm>
#include <random>

#include "braidgate/expr.hpp"
#include "braidgate/matrix.hpp"
#include "oracles.hpp"

using namespace braidgate;

namespace {

Matrix random_matrix(int n, std::mt19937_64& rng) { return oracle::from_eigen(oracle::random_dense(n, rng)); }

// Greedy matching of two spectra; returns the largest pair distance.
double spectrum_distance(std::vector<cplx> a, std::vector<cplx> b)
{
    double worst = 0.0;
    for (const cplx& x : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [&](const cplx& p, const cplx& q) { return std::abs(p - x) < std::abs(q - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

}  // namespace

TEST_CASE("tensor product, inverse and determinant agree with Eigen")
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 50; ++t) {
        const Matrix a = random_matrix(2, rng), b = random_matrix(4, rng);
        CHECK(oracle::maxabs(oracle::to_eigen(tensor_product(a, b)) -
                             oracle::kron(oracle::to_eigen(a), oracle::to_eigen(b))) < 1e-13);
        const auto eb = oracle::to_eigen(b);
        CHECK(oracle::maxabs(oracle::to_eigen(invert(b)) - eb.inverse()) < 1e-10 * oracle::maxabs(eb.inverse()));
        CHECK(std::abs(determinant(b) - eb.determinant()) < 1e-11 * std::max(1.0, std::abs(eb.determinant())));
        CHECK(oracle::maxabs(oracle::to_eigen(b * b) - eb * eb) < 1e-12);
    }
}

TEST_CASE("partial trace and partial transpose by index")
{
    std::mt19937_64 rng(22);
    const Matrix r = random_matrix(4, rng);
    const Matrix t1 = partial_trace(r, 1), t2 = partial_trace(r, 2);
    const Matrix p1 = partial_transpose(r, 1), p2 = partial_transpose(r, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            CHECK(std::abs(t2(a, b) - (r(2 * a, 2 * b) + r(2 * a + 1, 2 * b + 1))) < 1e-14);
            CHECK(std::abs(t1(a, b) - (r(a, b) + r(2 + a, 2 + b))) < 1e-14);
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    CHECK(p1(2 * a + b, 2 * c + d) == r(2 * c + b, 2 * a + d));
                    CHECK(p2(2 * a + b, 2 * c + d) == r(2 * a + d, 2 * c + b));
                }
        }
}

TEST_CASE("eigenvalues match the Eigen solver")
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        const Matrix m = random_matrix(4, rng);
        CHECK(spectrum_distance(eigenvalues(m), oracle::eigenvalues(oracle::to_eigen(m))) < 1e-9);
    }
}

TEST_CASE("power with negative exponents")
{
    std::mt19937_64 rng(24);
    const Matrix m = random_matrix(4, rng);
    CHECK(max_diff(power(m, 3) * power(m, -3), Matrix::identity(4)) < 1e-10);
    CHECK(max_diff(power(m, 0), Matrix::identity(4)) == 0.0);
}

TEST_CASE("singular matrices are refused")
{
    const Matrix s{{1, 2, 0, 0}, {2, 4, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    CHECK_THROWS_AS(invert(s), SingularMatrixError);
}

TEST_CASE("principal square root normalizes the sign of zero")
{
    CHECK(psqrt(cplx(-4.0, -0.0)) == cplx(0.0, 2.0));
    CHECK(psqrt(cplx(-4.0, 0.0)) == cplx(0.0, 2.0));
    CHECK(std::abs(psqrt(cplx(0.0, 2.0)) - cplx(1.0, 1.0)) < 1e-15);
}

TEST_CASE("pauli matrices")
{
    using namespace pauli;
    const cplx i(0.0, 1.0);
    CHECK(max_diff(X() * Y(), i * Z()) == 0.0);
    CHECK(max_diff(Y() * Y(), I()) == 0.0);
}

TEST_CASE("expressions")
{
    const ParamMap s{{"h1", 2.0}, {"h4", cplx(0.0, 1.0)}};
    CHECK(eval_expr("1+2*3") == cplx(7.0));
    CHECK(eval_expr("-2^2") == cplx(-4.0));
    CHECK(eval_expr("2i*i") == cplx(-2.0));
    CHECK(eval_expr("(1+i)^2") == cplx(0.0, 2.0));
    CHECK(eval_expr("h1/h4", s) == cplx(0.0, -2.0));
    CHECK(eval_expr("sqrt(-4)") == cplx(0.0, 2.0));
    CHECK(eval_expr("abs(3+4i)") == cplx(5.0));
    CHECK(eval_expr("conj(h4)", s) == cplx(0.0, -1.0));
    CHECK(std::abs(eval_expr("exp(i*pi)") + 1.0) < 1e-15);
    CHECK(std::abs(eval_expr("cos(0)+sin(pi/2)") - 2.0) < 1e-15);
    CHECK(eval_expr("(-1)^63") == cplx(-1.0));
    CHECK(Expr("h1 + 1").text() == "h1 + 1");

    CHECK_THROWS_AS(eval_expr("1/(h1-2)", s), InadmissibleParams);
    CHECK_THROWS_AS(eval_expr("h9"), std::out_of_range);
    CHECK_THROWS_AS(Expr("1+"), ExprSyntaxError);
    CHECK_THROWS_AS(Expr("foo(1)"), ExprSyntaxError);
    CHECK_THROWS_AS(Expr("(1"), ExprSyntaxError);
}
