#include "braidgate/xtype.hpp"

#include <algorithm>
#include <cmath>

namespace braidgate {

namespace {

constexpr int kRow[8] = {0, 0, 1, 1, 2, 2, 3, 3};
constexpr int kCol[8] = {0, 3, 1, 2, 1, 2, 0, 3};

bool on_x(int r, int c) { return r == c || r + c == 3; }

}  // namespace

XTypeParams XTypeParams::from_list(std::initializer_list<cplx> values)
{
    if (values.size() != 8) throw DimensionError("XTypeParams: expected eight values");
    XTypeParams p;
    std::size_t i = 0;
    for (const auto& v : values) p.v[i++] = v;
    return p;
}

Matrix assemble(const XTypeParams& h)
{
    Matrix r(4);
    for (int k = 0; k < 8; ++k) r(kRow[k], kCol[k]) = h.v[k];
    return r;
}

std::optional<XTypeParams> extract_xtype(const Matrix& r, double tol)
{
    if (r.dim() != 4) return std::nullopt;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!on_x(i, j) && std::abs(r(i, j)) > tol) return std::nullopt;
    XTypeParams p;
    for (int k = 0; k < 8; ++k) p.v[k] = r(kRow[k], kCol[k]);
    return p;
}

bool is_xtype(const Matrix& r, double tol) { return extract_xtype(r, tol).has_value(); }

XTypeEigenvalues eigenvalues_xtype(const XTypeParams& p)
{
    const cplx h1 = p.h(1), h2 = p.h(2), h3 = p.h(3), h4 = p.h(4);
    const cplx h5 = p.h(5), h6 = p.h(6), h7 = p.h(7), h8 = p.h(8);
    const cplx d1 = psqrt((h1 - h8) * (h1 - h8) + 4.0 * h2 * h7);
    const cplx d2 = psqrt((h3 - h6) * (h3 - h6) + 4.0 * h4 * h5);
    return {0.5 * (h1 + h8 + d1), 0.5 * (h1 + h8 - d1), 0.5 * (h3 + h6 + d2), 0.5 * (h3 + h6 - d2)};
}

XTypeParams invert_xtype(const XTypeParams& p)
{
    const cplx det_outer = p.h(1) * p.h(8) - p.h(2) * p.h(7);
    const cplx det_inner = p.h(3) * p.h(6) - p.h(4) * p.h(5);
    const double scale_outer = std::max({std::abs(p.h(1)), std::abs(p.h(2)), std::abs(p.h(7)), std::abs(p.h(8))});
    const double scale_inner = std::max({std::abs(p.h(3)), std::abs(p.h(4)), std::abs(p.h(5)), std::abs(p.h(6))});
    if (std::abs(det_outer) <= 1e-12 * scale_outer * scale_outer ||
        std::abs(det_inner) <= 1e-12 * scale_inner * scale_inner)
        throw SingularMatrixError("invert_xtype: singular 2x2 block");
    XTypeParams q;
    q.h(1) = p.h(8) / det_outer;
    q.h(2) = -p.h(2) / det_outer;
    q.h(7) = -p.h(7) / det_outer;
    q.h(8) = p.h(1) / det_outer;
    q.h(3) = p.h(6) / det_inner;
    q.h(4) = -p.h(4) / det_inner;
    q.h(5) = -p.h(5) / det_inner;
    q.h(6) = p.h(3) / det_inner;
    return q;
}

PauliExpansion pauli_expand(const XTypeParams& p)
{
    const cplx i(0.0, 1.0);
    const cplx h1 = p.h(1), h2 = p.h(2), h3 = p.h(3), h4 = p.h(4);
    const cplx h5 = p.h(5), h6 = p.h(6), h7 = p.h(7), h8 = p.h(8);
    PauliExpansion e;
    e.l = 0.25 * (h1 + h3 + h6 + h8);
    e.a3 = 0.25 * (h1 + h3 - h6 - h8);
    e.a6 = 0.25 * (h1 - h3 + h6 - h8);
    e.b9 = 0.25 * (h1 - h3 - h6 + h8);
    e.b1 = 0.25 * (h2 + h4 + h5 + h7);
    e.b2 = 0.25 * i * (h2 - h4 + h5 - h7);
    e.b4 = 0.25 * i * (h2 + h4 - h5 - h7);
    e.b5 = 0.25 * (-h2 + h4 + h5 - h7);
    return e;
}

Matrix reassemble(const PauliExpansion& e)
{
    using namespace pauli;
    return e.l * tensor_product(I(), I()) + e.a3 * tensor_product(Z(), I()) + e.a6 * tensor_product(I(), Z()) +
           e.b9 * tensor_product(Z(), Z()) + e.b1 * tensor_product(X(), X()) + e.b2 * tensor_product(X(), Y()) +
           e.b4 * tensor_product(Y(), X()) + e.b5 * tensor_product(Y(), Y());
}

}  // namespace braidgate
