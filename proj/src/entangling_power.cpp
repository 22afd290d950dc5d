#include "braidgate/entangling_power.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace braidgate {

ProductState ProductState::from_angles(double theta1, double phi1, double theta2, double phi2)
{
    return {std::polar(std::cos(theta1), phi1), std::polar(std::sin(theta1), -phi1), std::polar(std::cos(theta2), phi2),
            std::polar(std::sin(theta2), -phi2)};
}

double ProductState::norm_defect() const
{
    return std::max(std::abs(std::norm(a1) + std::norm(b1) - 1.0), std::abs(std::norm(a2) + std::norm(b2) - 1.0));
}

StateCoeffs apply_to_product(const Matrix& r, const ProductState& p)
{
    if (r.dim() != 4) throw DimensionError("apply_to_product: expected a 4x4 operator");
    const cplx in[4] = {p.a1 * p.a2, p.a1 * p.b2, p.b1 * p.a2, p.b1 * p.b2};
    StateCoeffs s;
    for (std::size_t row = 0; row < 4; ++row) {
        cplx acc = 0.0;
        for (std::size_t col = 0; col < 4; ++col) acc += r(row, col) * in[col];
        s.t(row / 2, row % 2) = acc;
    }
    return s;
}

StateCoeffs act_local(const StateCoeffs& s, const Matrix& q1, const Matrix& q2)
{
    return {q1.transpose() * s.t * q2};
}

cplx j2_invariant(const StateCoeffs& s) { return 2.0 * determinant(s.t); }

double epsilon_reduction_check(const StateCoeffs& s)
{
    auto eps = [](std::size_t i, std::size_t j) { return i == j ? 0.0 : (i == 0 ? 1.0 : -1.0); };
    const cplx det = determinant(s.t);
    double worst = 0.0;
    for (std::size_t i2 = 0; i2 < 2; ++i2)
        for (std::size_t j2 = 0; j2 < 2; ++j2) {
            cplx lhs = 0.0;
            for (std::size_t i1 = 0; i1 < 2; ++i1)
                for (std::size_t j1 = 0; j1 < 2; ++j1) lhs += s.t(i1, i2) * s.t(j1, j2) * eps(i1, j1);
            worst = std::max(worst, std::abs(lhs - det * eps(i2, j2)));
        }
    return worst;
}

double linear_entropy(const StateCoeffs& s)
{
    const double norm = (s.t * s.t.adjoint()).trace().real();
    if (norm == 0.0) throw std::invalid_argument("linear_entropy: zero state");
    return 2.0 * std::norm(determinant(s.t)) / (norm * norm);
}

double entangling_power_closed(const XTypeParams& h)
{
    auto sq = [](cplx z) { return std::norm(z); };
    return (sq(h.h(1) * h.h(7)) + sq(h.h(2) * h.h(8)) + sq(h.h(3) * h.h(5)) + sq(h.h(4) * h.h(6))) / 9.0 +
           sq(h.h(1) * h.h(8) + h.h(2) * h.h(7) - h.h(3) * h.h(6) - h.h(4) * h.h(5)) / 6.0;
}

double entangling_power_average(const XTypeParams& h)
{
    auto sq = [](cplx z) { return std::norm(z); };
    return (sq(h.h(1) * h.h(7)) + sq(h.h(2) * h.h(8)) + sq(h.h(3) * h.h(5)) + sq(h.h(4) * h.h(6))) / 9.0 +
           sq(h.h(1) * h.h(8) + h.h(2) * h.h(7) - h.h(3) * h.h(6) - h.h(4) * h.h(5)) / 36.0;
}

double entangling_power_closed(const Matrix& r)
{
    const auto h = extract_xtype(r);
    if (!h) throw std::invalid_argument("entangling_power_closed: operator is not X-type");
    return entangling_power_closed(*h);
}

namespace {

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w)
{
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = 0.5 * (1.0 - z);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
}

double pairwise_sum(const double* v, std::size_t n)
{
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

double entangling_power_quadrature(const Matrix& r, int nodes, const std::array<double, 2>& phase_shift)
{
    if (r.dim() != 4) throw DimensionError("entangling_power_quadrature: expected a 4x4 operator");
    if (nodes < 8) throw std::invalid_argument("entangling_power_quadrature: at least 8 nodes required");
    std::vector<double> u, wu;
    gauss_legendre(nodes, u, wu);
    std::vector<double> phi(nodes);
    for (int k = 0; k < nodes; ++k) phi[k] = -std::numbers::pi + std::numbers::pi * k / nodes;

    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(nodes) * nodes * nodes * nodes);
    for (int i1 = 0; i1 < nodes; ++i1)
        for (int i2 = 0; i2 < nodes; ++i2)
            for (int j1 = 0; j1 < nodes; ++j1)
                for (int j2 = 0; j2 < nodes; ++j2) {
                    const double c1 = std::sqrt(1.0 - u[i1]), s1 = std::sqrt(u[i1]);
                    const double c2 = std::sqrt(1.0 - u[i2]), s2 = std::sqrt(u[i2]);
                    const double f1 = phi[j1] + phase_shift[0], f2 = phi[j2] + phase_shift[1];
                    const cplx a1 = std::polar(c1, f1), b1 = std::polar(s1, -f1);
                    const cplx a2 = std::polar(c2, f2), b2 = std::polar(s2, -f2);
                    const cplx in[4] = {a1 * a2, a1 * b2, b1 * a2, b1 * b2};
                    cplx t[4];
                    for (std::size_t row = 0; row < 4; ++row)
                        t[row] = r(row, 0) * in[0] + r(row, 1) * in[1] + r(row, 2) * in[2] + r(row, 3) * in[3];
                    terms.push_back(wu[i1] * wu[i2] * std::norm(t[0] * t[3] - t[1] * t[2]));
                }
    return pairwise_sum(terms.data(), terms.size()) / (static_cast<double>(nodes) * nodes);
}

double entangling_power_quadrature(const Matrix& r, int nodes)
{
    return entangling_power_quadrature(r, nodes, {0.0, 0.0});
}

XTypeParams unitary_xtype(double r1, double r3, double phi1, double phi2, double phi3, double phi4, double phi6,
                          double phi8)
{
    if (r1 < 0.0 || r1 > 1.0 || r3 < 0.0 || r3 > 1.0)
        throw std::invalid_argument("unitary_xtype: r1, r3 must lie in [0,1]");
    const double c1 = std::sqrt(1.0 - r1 * r1), c3 = std::sqrt(1.0 - r3 * r3);
    XTypeParams h;
    h.h(1) = std::polar(r1, phi1);
    h.h(2) = std::polar(c1, phi2);
    h.h(3) = std::polar(r3, phi3);
    h.h(4) = std::polar(c3, phi4);
    h.h(5) = -std::polar(c3, phi3 + phi6 - phi4);
    h.h(6) = std::polar(r3, phi6);
    h.h(7) = -std::polar(c1, phi1 + phi8 - phi2);
    h.h(8) = std::polar(r1, phi8);
    return h;
}

namespace {

struct ClassFormula {
    const char* id;
    const char* text;
    const char* eigen_text;  // over the catalog eigen labels, nullptr if not expressible
};

const ClassFormula& class_formula(int class_id)
{
    static const ClassFormula table[12] = {
        {"epR1", "1/6*abs(h1*h8-h4*h5)^2", "1/6*abs(l1p*l1m-l2sq)^2"},
        {"epR2", "1/6*abs(h2*h7-h3^2)^2", "1/6*abs(l1sq-l2^2)^2"},
        {"epR3", "1/9*(abs(h1*h7)^2+abs(h1*(h1+h8))^2)+2/3*abs(h1*h8)^2", nullptr},
        {"epR4", "1/9*abs(h4*h6)^2+1/6*abs(h1*h6)^2", nullptr},
        {"epR5", "1/9*abs(h4*h6)^2+2/3*abs(h1*(h1-h6))^2", nullptr},
        {"epR6",
         "1/9*(abs(h2*h8)^2+1/16*abs(h1/h2*(h1+h8)^2)^2+1/4*abs((h1+h8)*sqrt(h1^2+h8^2))^2)+1/24*abs(h1-h8)^4",
         nullptr},
        {"epR7", "1/9*(abs(h1*h2)^2+abs(h1*h3^2)^2/abs(h2)^2+2*abs(h1*h3)^2)", nullptr},
        {"epR8", "1/9*(abs(h1*h2)^2+abs(h1^3)^2/abs(h2)^2+2*abs(h1)^4)", nullptr},
        {"epR9", "1/9*abs(h1*h7)^2", nullptr},
        {"epR10", "1/9*abs(h1*h7)^2+2/3*abs(h1)^4", nullptr},
        {"epR11", "1/9*abs(h7*h8)^2+10/9*abs(h8)^4", nullptr},
        {"epR12", "1/9*(abs(h1*h2)^2+abs(h1)^6/(4*abs(h2)^2))+1/6*abs(h1)^4", nullptr},
    };
    return table[class_id - 1];
}

}  // namespace

ClassEpower class_epower(const CatalogEntry& e, const ParamMap& params, double tol)
{
    const XTypeParams h = catalog_instantiate(e, params);
    ClassEpower out;
    out.entry_id = e.id;
    out.closed = entangling_power_closed(h);
    if (!e.is_representative()) {
        out.formula_id = "ePx";
        out.formula = "1/9*(|h1h7|^2+|h2h8|^2+|h3h5|^2+|h4h6|^2)+1/6*|h1h8+h2h7-h3h6-h4h5|^2";
        out.value = out.closed;
        out.eigen_value = out.closed;
        out.ok = true;
        return out;
    }
    const ClassFormula& f = class_formula(e.class_id);
    const ParamMap scope = to_param_map(h);
    out.formula_id = f.id;
    out.formula = f.text;
    out.value = Expr(f.text).eval(scope).real();
    out.eigen_expressible = f.eigen_text != nullptr;
    out.eigen_value = f.eigen_text ? Expr(f.eigen_text).eval(eigen_labels(e, h)).real() : out.value;
    const double scale = std::max(1.0, out.closed);
    out.ok = std::abs(out.value - out.closed) < tol * scale && std::abs(out.eigen_value - out.closed) < tol * scale;
    return out;
}

int state_action_rank(const std::array<cplx, 4>& alpha, double rel_tol)
{
    using namespace pauli;
    const Matrix ops[6] = {tensor_product(X(), I()), tensor_product(Y(), I()), tensor_product(Z(), I()),
                           tensor_product(I(), X()), tensor_product(I(), Y()), tensor_product(I(), Z())};
    Eigen::MatrixXcd stack(6, 4);
    for (int g = 0; g < 6; ++g)
        for (std::size_t row = 0; row < 4; ++row) {
            cplx acc = 0.0;
            for (std::size_t col = 0; col < 4; ++col) acc += ops[g](row, col) * alpha[col];
            stack(g, static_cast<Eigen::Index>(row)) = acc;
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(0) > 0.0 && sv(i) > rel_tol * sv(0)) ++rank;
    return rank;
}

}  // namespace braidgate
