#include "braidgate/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace braidgate {

namespace {

Matrix y1() { return tensor_product(pauli::Y(), pauli::I()); }
Matrix y2() { return tensor_product(pauli::I(), pauli::Y()); }

// Partial trace of an n-qubit operator over every qubit not in `keep`
// (qubits numbered 1..n, most significant first).
Matrix trace_out(const Matrix& m, int n, const std::vector<int>& keep)
{
    const std::size_t kept = keep.size();
    Matrix out(std::size_t{1} << kept);
    const std::size_t dim = m.dim();
    auto bit = [n](std::size_t idx, int q) { return (idx >> (n - q)) & 1U; };
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            bool traced_equal = true;
            for (int q = 1; q <= n && traced_equal; ++q)
                if (std::find(keep.begin(), keep.end(), q) == keep.end() && bit(r, q) != bit(c, q))
                    traced_equal = false;
            if (!traced_equal) continue;
            std::size_t rr = 0, cc = 0;
            for (int q : keep) {
                rr = (rr << 1) | bit(r, q);
                cc = (cc << 1) | bit(c, q);
            }
            out(rr, cc) += m(r, c);
        }
    }
    return out;
}

// Partial transpose of an n-qubit operator on qubit q.
Matrix transpose_qubit(const Matrix& m, int n, int q)
{
    Matrix out(m.dim());
    const std::size_t mask = std::size_t{1} << (n - q);
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) {
            const std::size_t rr = (r & ~mask) | (c & mask);
            const std::size_t cc = (c & ~mask) | (r & mask);
            out(rr, cc) = m(r, c);
        }
    return out;
}

enum class T { Delta, Eps };

struct Pairing {
    int a, b;
    T t;
};

double eps(int i, int j) { return i == j ? 0.0 : (i == 0 ? 1.0 : -1.0); }

// Indices 0..3 belong to the first copy R[a b, c d], 4..7 to the second
// copy R[e f, g h].
const std::map<std::string, std::array<Pairing, 4>>& contraction_table()
{
    enum { a, b, c, d, e, f, g, h };
    static const std::map<std::string, std::array<Pairing, 4>> table = {
        {"I2_1", {{{a, g, T::Delta}, {c, e, T::Delta}, {b, h, T::Delta}, {d, f, T::Delta}}}},
        {"I2_2", {{{a, g, T::Delta}, {c, e, T::Delta}, {b, d, T::Delta}, {f, h, T::Delta}}}},
        {"I2_3", {{{a, c, T::Delta}, {e, g, T::Delta}, {b, h, T::Delta}, {d, f, T::Delta}}}},
        {"I2_4", {{{a, e, T::Eps}, {c, g, T::Eps}, {b, h, T::Delta}, {d, f, T::Delta}}}},
        {"I2_5", {{{a, g, T::Delta}, {c, e, T::Delta}, {b, f, T::Eps}, {d, h, T::Eps}}}},
        {"I2_6", {{{a, e, T::Eps}, {c, g, T::Eps}, {b, d, T::Delta}, {f, h, T::Delta}}}},
        {"I2_7", {{{a, c, T::Delta}, {e, g, T::Delta}, {b, f, T::Eps}, {d, h, T::Eps}}}},
        {"I2_8", {{{a, e, T::Eps}, {c, g, T::Eps}, {b, f, T::Eps}, {d, h, T::Eps}}}},
        {"I2_9", {{{a, c, T::Delta}, {f, h, T::Delta}, {b, g, T::Delta}, {d, e, T::Delta}}}},
        {"I2_10", {{{a, c, T::Delta}, {f, h, T::Delta}, {b, e, T::Eps}, {d, g, T::Eps}}}},
    };
    return table;
}

cplx tensor_entry(const Matrix& r, int i1, int i2, int j1, int j2)
{
    return r(static_cast<std::size_t>(2 * i1 + i2), static_cast<std::size_t>(2 * j1 + j2));
}

double rel_err(cplx x, cplx y) { return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}); }

struct ClassFormulas {
    std::array<const char*, 5> values;  // I2_4, I2_5, I2_8, I2_9, I2_10
    std::vector<std::pair<const char*, const char*>> relations;
    int independent;
};

const char* kI29Pair = "2*(lp^2+lm^2+lp*lm)";
const char* kI210Pair = "2*(lp^2+lm^2+3*lp*lm)";

const ClassFormulas& class_formulas(int class_id)
{
    static const std::map<int, ClassFormulas> table = {
        {1,
         {{"-2*l2sq", "-2*l2sq", "2*(l1p*l1m+l2sq)", "l1p^2+l1m^2", "2*l1p*l1m"}, {{"I28", "I210-I24"}}, 3}},
        {2, {{"-2*l1sq", "-2*l1sq", "2*(l1sq+l2^2)", "2*l2^2", "2*l2^2"}, {{"I29", "I210"}, {"I24", "I25"}}, 2}},
        {3,
         {{"2*lp*(lp+2*lm)", "2*lm*(2*lp+lm)", "0", kI29Pair, kI210Pair},
          {{"lp*lm", "(I210-I29)/4"}, {"2*lp^2", "I24-I210+I29"}, {"2*lm^2", "I25-I210+I29"}},
          2}},
        {4,
         {{"2*l1*(l1+2*l2)", "2*l1*(l1+2*l2)", "2*l1*(l1-l2)", "2*l1*(2*l1+l2)", "5*l1^2+4*l1*l2+l2^2"},
          {{"l1^2", "(I28+I29)/6"}, {"l2^2", "(I29-2*I28)^2/(6*(I28+I29))"}},
          2}},
        {5,
         {{"2*lp*(lp+2*lm)", "2*lm*(2*lp+lm)", "0", kI29Pair, kI210Pair},
          {{"lp*lm", "(I210-I29)/4"}, {"2*lp^2", "I24-I210+I29"}, {"2*lm^2", "I25-I210+I29"}},
          2}},
        {6,
         {{"2*lp*lm", "2*lp*lm", "2*(lp+lm)^2", kI29Pair, kI210Pair},
          {{"lp*lm", "I24/2"}, {"lp^2+lm^2", "I28/2-I24"}},
          2}},
        {7, {{"-2*lm^2", "-2*lm^2", "2*(lp^2+lm^2)", "2*lp^2", "2*lp^2"}, {{"I28", "I29-I24"}}, 2}},
        {8,
         {{"2*(lp+lm)^2", "2*(lp+lm)^2", "0", "2*(lp+lm)^2", "2*(lp+lm)^2"},
          {{"I28", "0"}, {"I24", "I29"}, {"I29", "I210"}},
          1}},
        {9, {{"-2*l^2", "-2*l^2", "4*l^2", "2*l^2", "2*l^2"}, {{"I28", "2*I29"}, {"I24", "-I29"}}, 1}},
        {10, {{"-2*l^2", "-2*l^2", "0", "2*l^2", "-2*l^2"}, {{"I24", "-I29"}, {"I210", "I24"}, {"I28", "0"}}, 1}},
        {11, {{"6*l^2", "6*l^2", "0", "6*l^2", "10*l^2"}, {{"3*I210", "5*I29"}, {"I24", "I29"}}, 1}},
        {12,
         {{"2*l^2", "2*l^2", "8*l^2", "6*l^2", "10*l^2"},
          {{"I28", "4*I24"}, {"I29", "3*I24"}, {"I210", "5*I24"}},
          1}},
    };
    return table.at(class_id);
}

}  // namespace

cplx linear_invariant(const Matrix& r)
{
    if (r.dim() != 4) throw DimensionError("linear_invariant: expected a 4x4 operator");
    return r.trace();
}

InvariantSet quadratic_invariants(const Matrix& r)
{
    if (r.dim() != 4) throw DimensionError("quadratic_invariants: expected a 4x4 operator");
    const Matrix Y = pauli::Y();
    const Matrix Y1 = y1(), Y2 = y2();
    const Matrix A = partial_trace(r, 1);
    const Matrix B = partial_trace(r, 2);
    const Matrix t1 = partial_transpose(r, 1);
    const Matrix t2 = partial_transpose(r, 2);
    InvariantSet s;
    s.I1 = r.trace();
    s.i2(1) = (r * r).trace();
    s.i2(2) = (B * B).trace();
    s.i2(3) = (A * A).trace();
    s.i2(4) = (Y1 * t1 * Y1 * r).trace();
    s.i2(5) = (r * Y2 * t2 * Y2).trace();
    s.i2(6) = (Y * partial_trace(t1, 2) * Y * B).trace();
    s.i2(7) = (A * Y * partial_trace(t2, 1) * Y).trace();
    s.i2(8) = (r.transpose() * Y1 * Y2 * r * Y1 * Y2).trace();
    s.i2(9) = (A * B).trace();
    s.i2(10) = (Y * A.transpose() * Y * B).trace();
    return s;
}

std::array<cplx, 2> two_copy_invariants(const Matrix& r)
{
    if (r.dim() != 4) throw DimensionError("two_copy_invariants: expected a 4x4 operator");
    const Matrix id = pauli::I();
    const Matrix r12 = tensor_product(r, id);
    const Matrix r23 = tensor_product(id, r);
    // Tracing qubits 1 and 3 of R12 leaves 2 tr1(R); of R23 leaves 2 tr2(R).
    const Matrix a = trace_out(r12, 3, {2});
    const Matrix b = trace_out(r23, 3, {2});
    const Matrix at = trace_out(transpose_qubit(r12, 3, 2), 3, {2});
    const Matrix Y = pauli::Y();
    return {(a * b).trace() / 4.0, (Y * at * Y * b).trace() / 4.0};
}

cplx contraction_oracle(const Matrix& r, const std::string& which)
{
    if (r.dim() != 4) throw DimensionError("contraction_oracle: expected a 4x4 operator");
    if (which == "I1") {
        cplx sum = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    for (int d = 0; d < 2; ++d)
                        if (a == c && b == d) sum += tensor_entry(r, a, b, c, d);
        return sum;
    }
    const auto& table = contraction_table();
    const auto it = table.find(which);
    if (it == table.end()) throw std::invalid_argument("contraction_oracle: unknown invariant '" + which + "'");
    cplx sum = 0.0;
    for (int bits = 0; bits < 256; ++bits) {
        int idx[8];
        for (int k = 0; k < 8; ++k) idx[k] = (bits >> (7 - k)) & 1;
        double weight = 1.0;
        for (const Pairing& p : it->second) {
            weight *= p.t == T::Delta ? (idx[p.a] == idx[p.b] ? 1.0 : 0.0) : eps(idx[p.a], idx[p.b]);
            if (weight == 0.0) break;
        }
        if (weight == 0.0) continue;
        sum += weight * tensor_entry(r, idx[0], idx[1], idx[2], idx[3]) * tensor_entry(r, idx[4], idx[5], idx[6], idx[7]);
    }
    return sum;
}

std::array<cplx, 6> check_identities(const InvariantSet& v)
{
    auto I = [&](int k) { return v.i2(k); };
    return {
        v.I1 * v.I1 - I(9) - I(10),
        I(1) + I(6) + I(7) - I(8) - I(9) - I(10),
        I(2) + I(6) - I(9) - I(10),
        I(3) + I(7) - I(9) - I(10),
        I(4) - I(6) + I(8),
        I(5) - I(7) + I(8),
    };
}

InvariantSet xtype_closed_forms(const XTypeParams& p)
{
    const cplx h1 = p.h(1), h2 = p.h(2), h3 = p.h(3), h4 = p.h(4);
    const cplx h5 = p.h(5), h6 = p.h(6), h7 = p.h(7), h8 = p.h(8);
    InvariantSet s;
    s.I1 = h1 + h3 + h6 + h8;
    s.i2(4) = 2.0 * (h1 * h6 - h4 * h5 - h2 * h7 + h3 * h8);
    s.i2(5) = 2.0 * (h1 * h3 - h4 * h5 - h2 * h7 + h6 * h8);
    s.i2(8) = 2.0 * (h4 * h5 + h3 * h6 + h2 * h7 + h1 * h8);
    s.i2(9) = h1 * h1 + h8 * h8 + (h1 + h8) * (h3 + h6) + 2.0 * h3 * h6;
    s.i2(10) = h3 * h3 + h6 * h6 + (h1 + h8) * (h3 + h6) + 2.0 * h1 * h8;
    s.i2(6) = s.i2(4) + s.i2(8);
    s.i2(7) = s.i2(5) + s.i2(8);
    s.i2(2) = s.i2(9) + s.i2(10) - s.i2(6);
    s.i2(3) = s.i2(9) + s.i2(10) - s.i2(7);
    s.i2(1) = s.i2(8) + s.i2(9) + s.i2(10) - s.i2(6) - s.i2(7);
    return s;
}

Reconstruction reconstruct_params(const InvariantSet& inv, const XTypeEigenvalues& ev, double tol)
{
    const cplx half_sum = 0.5 * (inv.i2(4) + inv.i2(5));
    const cplx d18 = psqrt(inv.i2(9) - inv.i2(8) - half_sum);
    const cplx d36 = psqrt(inv.i2(10) - inv.i2(8) - half_sum);
    const cplx s18 = ev.l1_plus + ev.l1_minus;
    const cplx s36 = ev.l2_plus + ev.l2_minus;
    Reconstruction out;
    out.h1_h8 = {0.5 * (s18 + d18), 0.5 * (s18 - d18)};
    out.h3_h6 = {0.5 * (s36 + d36), 0.5 * (s36 - d36)};
    const cplx g1 = ev.l1_plus - ev.l1_minus;
    const cplx g2 = ev.l2_plus - ev.l2_minus;
    out.h2h7 = 0.25 * (g1 * g1 - inv.i2(9) + inv.i2(8) + half_sum);
    out.h4h5 = 0.25 * (g2 * g2 - inv.i2(10) + inv.i2(8) + half_sum);

    out.residual = std::numeric_limits<double>::infinity();
    for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 0; s2 < 2; ++s2) {
            const cplx h1 = out.h1_h8[s1], h8 = out.h1_h8[1 - s1];
            const cplx h3 = out.h3_h6[s2], h6 = out.h3_h6[1 - s2];
            const cplx i4 = 2.0 * (h1 * h6 - out.h4h5 - out.h2h7 + h3 * h8);
            const cplx i5 = 2.0 * (h1 * h3 - out.h4h5 - out.h2h7 + h6 * h8);
            const cplx i8 = 2.0 * (out.h4h5 + h3 * h6 + out.h2h7 + h1 * h8);
            const cplx i9 = h1 * h1 + h8 * h8 + (h1 + h8) * (h3 + h6) + 2.0 * h3 * h6;
            const cplx i10 = h3 * h3 + h6 * h6 + (h1 + h8) * (h3 + h6) + 2.0 * h1 * h8;
            const double res = std::max({rel_err(i4, inv.i2(4)), rel_err(i5, inv.i2(5)), rel_err(i8, inv.i2(8)),
                                         rel_err(i9, inv.i2(9)), rel_err(i10, inv.i2(10)),
                                         rel_err(h1 + h3 + h6 + h8, inv.I1)});
            if (res < out.residual) {
                out.residual = res;
                out.labelled = {h1, h8, h3, h6};
            }
        }
    }
    out.consistent = out.residual < tol;
    return out;
}

EigenReport class_eigen_report(const CatalogEntry& e, const ParamMap& params, double tol)
{
    const XTypeParams h = catalog_instantiate(e, params);
    const InvariantSet direct = quadratic_invariants(assemble(h));
    const ClassFormulas& f = class_formulas(e.class_id);

    EigenReport rep;
    rep.entry_id = e.id;
    rep.class_id = e.class_id;
    rep.labels = eigen_labels(e, h);
    rep.independent_count = f.independent;

    static const int kIdx[5] = {4, 5, 8, 9, 10};
    for (int k = 0; k < 5; ++k) {
        InvariantCheck c;
        c.name = "I2_" + std::to_string(kIdx[k]);
        c.formula = Expr(f.values[k]).eval(rep.labels);
        c.direct = direct.i2(kIdx[k]);
        c.error = std::abs(c.formula - c.direct) / std::max(1.0, std::abs(c.direct));
        rep.checks.push_back(c);
    }

    ParamMap scope = rep.labels;
    scope["I1"] = direct.I1;
    for (int k = 1; k <= 10; ++k) scope["I2" + std::to_string(k)] = direct.i2(k);
    for (const auto& [lhs, rhs] : f.relations) {
        InvariantCheck c;
        c.name = std::string(lhs) + " = " + rhs;
        c.formula = Expr(lhs).eval(scope);
        c.direct = Expr(rhs).eval(scope);
        c.error = rel_err(c.formula, c.direct);
        rep.relations.push_back(c);
    }

    for (const auto& c : rep.checks) rep.max_error = std::max(rep.max_error, c.error);
    for (const auto& c : rep.relations) rep.max_error = std::max(rep.max_error, c.error);
    rep.ok = rep.max_error < tol;
    return rep;
}

}  // namespace braidgate
