#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "braidgate/matrix.hpp"
#include "braidgate/xtype.hpp"

namespace braidgate {

struct YbeResult {
    double residual = 0.0;
    bool ok = false;
};

/// Max-norm of (R x I)(I x R)(R x I) - (I x R)(R x I)(I x R).
YbeResult check_ybe(const Matrix& r, double tol = kDefaultTol);

/// Image of the generator sigma_i in B_n: I^(i-1) x R x I^(n-i-1).
Matrix braid_rep(const Matrix& r, int i, int n);

struct BraidLetter {
    int generator = 1;
    int exponent = 1;
    bool operator==(const BraidLetter&) const = default;
};

struct BraidWord {
    int strands = 2;
    std::vector<BraidLetter> letters;

    /// Checks index ranges and nonzero exponents; throws std::invalid_argument.
    void validate() const;
    /// Merges adjacent letters on the same generator and drops zero exponents.
    BraidWord canonical() const;
    std::string to_string() const;
};

/// Parses "s1^3 s2^-1" (a bare "s2" means exponent 1). When `strands` is 0 the
/// strand count is one more than the largest generator index, minimum 2.
BraidWord parse_braid_word(const std::string& text, int strands = 0);

/// Ordered product rho(l1) rho(l2) ... ; the empty word gives the identity.
Matrix rep_of_word(const Matrix& r, const BraidWord& w);

struct OrbitGenerator {
    std::string name;            // "XI", "IX", "YI", "IY", "ZI", "IZ"
    Matrix commutator;           // [G, R]
    bool preserves_xtype = false;
};

struct OrbitReport {
    int rank = 0;
    std::vector<double> singular_values;
    std::vector<OrbitGenerator> generators;
};

/// Numerical rank of the six commutators [G, R], G in {X,Y,Z} x I and
/// I x {X,Y,Z}, each flattened to a 16-vector. Singular values below
/// rel_tol * (largest) count as zero.
OrbitReport lie_orbit_rank(const XTypeParams& h, double rel_tol = 1e-8);

/// Coefficients on XX, XY, YX, YY of a commutator that stays X-type.
std::array<cplx, 4> xx_block_coefficients(const Matrix& m);

}  // namespace braidgate
