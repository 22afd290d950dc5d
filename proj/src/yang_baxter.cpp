#include "braidgate/yang_baxter.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace braidgate {

YbeResult check_ybe(const Matrix& r, double tol)
{
    if (r.dim() != 4) throw DimensionError("check_ybe: expected a 4x4 operator");
    const Matrix id = Matrix::identity(2);
    const Matrix a = tensor_product(r, id);
    const Matrix b = tensor_product(id, r);
    YbeResult out;
    out.residual = max_diff(a * b * a, b * a * b);
    out.ok = out.residual < tol;
    return out;
}

Matrix braid_rep(const Matrix& r, int i, int n)
{
    if (r.dim() != 4) throw DimensionError("braid_rep: expected a 4x4 operator");
    if (n < 2 || i < 1 || i > n - 1) throw std::out_of_range("braid_rep: generator index out of range");
    const Matrix id = Matrix::identity(2);
    return tensor_product(tensor_product(tensor_power(id, i - 1), r), tensor_power(id, n - i - 1));
}

void BraidWord::validate() const
{
    if (strands < 2) throw std::invalid_argument("braid word needs at least two strands");
    for (const auto& l : letters) {
        if (l.generator < 1 || l.generator > strands - 1)
            throw std::invalid_argument("braid generator s" + std::to_string(l.generator) + " out of range for " +
                                        std::to_string(strands) + " strands");
        if (l.exponent == 0) throw std::invalid_argument("braid exponent must be nonzero");
    }
}

BraidWord BraidWord::canonical() const
{
    BraidWord out{strands, {}};
    for (const auto& l : letters) {
        if (!out.letters.empty() && out.letters.back().generator == l.generator) {
            out.letters.back().exponent += l.exponent;
            if (out.letters.back().exponent == 0) out.letters.pop_back();
        } else if (l.exponent != 0) {
            out.letters.push_back(l);
        }
    }
    return out;
}

std::string BraidWord::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ' ';
        os << 's' << letters[i].generator << '^' << letters[i].exponent;
    }
    return os.str();
}

BraidWord parse_braid_word(const std::string& text, int strands)
{
    BraidWord w;
    std::istringstream is(text);
    std::string tok;
    int max_gen = 1;
    while (is >> tok) {
        if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'S'))
            throw std::invalid_argument("bad braid token '" + tok + "'");
        const auto caret = tok.find('^');
        const std::string gen = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        BraidLetter l;
        std::size_t used = 0;
        try {
            l.generator = std::stoi(gen, &used);
            if (used != gen.size()) throw std::invalid_argument("");
            if (caret != std::string::npos) {
                const std::string ex = tok.substr(caret + 1);
                l.exponent = std::stoi(ex, &used);
                if (used != ex.size()) throw std::invalid_argument("");
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("bad braid token '" + tok + "'");
        }
        max_gen = std::max(max_gen, l.generator);
        w.letters.push_back(l);
    }
    w.strands = strands > 0 ? strands : max_gen + 1;
    w.validate();
    return w;
}

Matrix rep_of_word(const Matrix& r, const BraidWord& w)
{
    w.validate();
    const std::size_t dim = std::size_t{1} << w.strands;
    Matrix out = Matrix::identity(dim);
    Matrix rinv;
    bool have_inv = false;
    for (const auto& l : w.letters) {
        const Matrix* base = &r;
        if (l.exponent < 0) {
            if (!have_inv) {
                rinv = invert(r);
                have_inv = true;
            }
            base = &rinv;
        }
        const Matrix g = braid_rep(*base, l.generator, w.strands);
        const int reps = l.exponent < 0 ? -l.exponent : l.exponent;
        for (int k = 0; k < reps; ++k) out = out * g;
    }
    return out;
}

std::array<cplx, 4> xx_block_coefficients(const Matrix& m)
{
    using namespace pauli;
    const Matrix basis[4] = {tensor_product(X(), X()), tensor_product(X(), Y()), tensor_product(Y(), X()),
                             tensor_product(Y(), Y())};
    std::array<cplx, 4> out{};
    for (int k = 0; k < 4; ++k) out[k] = (basis[k].adjoint() * m).trace() / 4.0;
    return out;
}

OrbitReport lie_orbit_rank(const XTypeParams& h, double rel_tol)
{
    using namespace pauli;
    const Matrix r = assemble(h);
    const std::pair<const char*, Matrix> gens[6] = {
        {"XI", tensor_product(X(), I())}, {"IX", tensor_product(I(), X())}, {"YI", tensor_product(Y(), I())},
        {"IY", tensor_product(I(), Y())}, {"ZI", tensor_product(Z(), I())}, {"IZ", tensor_product(I(), Z())},
    };
    OrbitReport rep;
    Eigen::MatrixXcd stack(6, 16);
    for (int g = 0; g < 6; ++g) {
        OrbitGenerator og{gens[g].first, commutator(gens[g].second, r), false};
        og.preserves_xtype = is_xtype(og.commutator, 1e-12 * (1.0 + r.max_norm()));
        for (int k = 0; k < 16; ++k) stack(g, k) = og.commutator.data()[k];
        rep.generators.push_back(std::move(og));
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack);
    const auto& sv = svd.singularValues();
    const double largest = sv.size() ? sv(0) : 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        rep.singular_values.push_back(sv(i));
        if (largest > 0.0 && sv(i) > rel_tol * largest) ++rep.rank;
    }
    return rep;
}

}  // namespace braidgate
