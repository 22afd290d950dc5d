#pragma once

#include <array>
#include <string>

#include "braidgate/catalog.hpp"
#include "braidgate/matrix.hpp"
#include "braidgate/xtype.hpp"

namespace braidgate {

/// (a1|0> + b1|1>) x (a2|0> + b2|1>)
struct ProductState {
    cplx a1{1.0, 0.0}, b1{}, a2{1.0, 0.0}, b2{};

    /// a = e^{i phi} cos(theta), b = e^{-i phi} sin(theta) on each factor.
    static ProductState from_angles(double theta1, double phi1, double theta2, double phi2);

    /// max over the two factors of | |a|^2 + |b|^2 - 1 |
    double norm_defect() const;
};

/// Amplitudes t(i1, i2) of a two-qubit state.
struct StateCoeffs {
    Matrix t{2};
};

StateCoeffs apply_to_product(const Matrix& r, const ProductState& p);

/// t -> Q1^T t Q2, the action of Q1 x Q2 on the amplitudes.
StateCoeffs act_local(const StateCoeffs& s, const Matrix& q1, const Matrix& q2);

/// 2 det t
cplx j2_invariant(const StateCoeffs& s);

/// max | t_{i1 i2} t_{j1 j2} eps_{i1 j1} - det(t) eps_{i2 j2} |
double epsilon_reduction_check(const StateCoeffs& s);

/// 2 |det t|^2 / [Tr(t t^dagger)]^2
double linear_entropy(const StateCoeffs& s);

/// (1/9)[|h1h7|^2 + |h2h8|^2 + |h3h5|^2 + |h4h6|^2] + (1/6)|h1h8 + h2h7 - h3h6 - h4h5|^2
double entangling_power_closed(const XTypeParams& h);

/// The uniform product-state average of |det t|^2 for an X-type operator in
/// closed form.  Same first bracket as entangling_power_closed, but the
/// invariant term carries 1/36: <|a1 b1|^2> = 1/6 on each qubit.
/// entangling_power_quadrature converges to this value.
double entangling_power_average(const XTypeParams& h);

/// Throws std::invalid_argument unless r is X-type (exact zero pattern).
double entangling_power_closed(const Matrix& r);

/// Average of |det t|^2 over uniformly distributed product states.
/// Gauss-Legendre with `nodes` points in u = sin^2(theta) per qubit and a
/// `nodes`-point trapezoid in each phase.  Any 4x4 operator is accepted.
double entangling_power_quadrature(const Matrix& r, int nodes = 16);

/// Same average with the product states rotated by fixed extra phases on
/// each factor; used to check that the result does not depend on them.
double entangling_power_quadrature(const Matrix& r, int nodes, const std::array<double, 2>& phase_shift);

/// Unitary X-type operator from two moduli and six phases.
XTypeParams unitary_xtype(double r1, double r3, double phi1, double phi2, double phi3, double phi4, double phi6,
                          double phi8);

struct ClassEpower {
    std::string entry_id;
    std::string formula_id;  // "epR3", or "ePx" for variants
    std::string formula;
    double value = 0.0;      // class formula
    double closed = 0.0;     // general X-type closed form
    double eigen_value = 0.0;  // eigenvalue form when one exists, else value
    bool eigen_expressible = false;
    bool ok = false;
};

ClassEpower class_epower(const CatalogEntry& e, const ParamMap& params, double tol = kDefaultTol);

/// Rank of the six vectors obtained by applying X, Y, Z to either qubit of
/// the state with amplitudes alpha (ordered 00, 01, 10, 11).
int state_action_rank(const std::array<cplx, 4>& alpha, double rel_tol = 1e-8);

}  // namespace braidgate
