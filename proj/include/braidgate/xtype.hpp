#pragma once

#include <array>
#include <optional>

#include "braidgate/matrix.hpp"

namespace braidgate {

/// The eight complex entries of an X-type two-qubit operator.
///
/// Layout in the 4x4 matrix (rows and columns ordered 00, 01, 10, 11):
///
///     | h1  0   0   h2 |
///     | 0   h3  h4  0  |
///     | 0   h5  h6  0  |
///     | h7  0   0   h8 |
///
/// `h(k)` is 1-based to match the conventional labels.
struct XTypeParams {
    std::array<cplx, 8> v{};

    cplx& h(int k) { return v.at(static_cast<std::size_t>(k - 1)); }
    const cplx& h(int k) const { return v.at(static_cast<std::size_t>(k - 1)); }

    static XTypeParams from_list(std::initializer_list<cplx> values);
};

Matrix assemble(const XTypeParams& h);

/// Reads h1..h8 back out of a matrix. Returns nothing if any structurally
/// zero entry exceeds `tol` in modulus.
std::optional<XTypeParams> extract_xtype(const Matrix& r, double tol = 0.0);

bool is_xtype(const Matrix& r, double tol = 0.0);

struct XTypeEigenvalues {
    cplx l1_plus, l1_minus, l2_plus, l2_minus;
};

/// Closed-form eigenvalues of the outer (h1,h2,h7,h8) and inner (h3,h4,h5,h6)
/// 2x2 blocks, principal square-root branch.
XTypeEigenvalues eigenvalues_xtype(const XTypeParams& h);

/// Block inverse of an X-type matrix; the result is again X-type.
XTypeParams invert_xtype(const XTypeParams& h);

/// R = l II + a3 ZI + a6 IZ + b9 ZZ + b1 XX + b2 XY + b4 YX + b5 YY
struct PauliExpansion {
    cplx l, a3, a6, b9, b1, b2, b4, b5;
};

PauliExpansion pauli_expand(const XTypeParams& h);
Matrix reassemble(const PauliExpansion& p);

}  // namespace braidgate
