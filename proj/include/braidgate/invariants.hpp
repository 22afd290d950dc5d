#pragma once

#include <array>
#include <string>
#include <vector>

#include "braidgate/catalog.hpp"
#include "braidgate/matrix.hpp"
#include "braidgate/xtype.hpp"

namespace braidgate {

/// Linear and quadratic local invariants of a two-qubit operator.
struct InvariantSet {
    cplx I1{};
    std::array<cplx, 10> I2{};

    /// 1-based access, I2_k for k in 1..10.
    cplx& i2(int k) { return I2.at(static_cast<std::size_t>(k - 1)); }
    const cplx& i2(int k) const { return I2.at(static_cast<std::size_t>(k - 1)); }
};

cplx linear_invariant(const Matrix& r);

/// All eleven values from closed matrix expressions.
InvariantSet quadratic_invariants(const Matrix& r);

/// I2_9 and I2_10 rebuilt from the three-qubit operators R x I and I x R.
std::array<cplx, 2> two_copy_invariants(const Matrix& r);

/// Literal index contraction with delta and epsilon tensors.
/// `which` is "I1" or "I2_1" ... "I2_10"; anything else throws
/// std::invalid_argument.
cplx contraction_oracle(const Matrix& r, const std::string& which);

/// Residuals of the six linear relations among the quadratic invariants,
/// in the order
///   I1^2 - I9 - I10
///   I1 + I6 + I7 - I8 - I9 - I10
///   I2 + I6 - I9 - I10
///   I3 + I7 - I9 - I10
///   I4 - I6 + I8
///   I5 - I7 + I8
/// (all I's here meaning I2_k).
std::array<cplx, 6> check_identities(const InvariantSet& inv);

/// Closed forms for an X-type operator. I1, I2_4, I2_5, I2_8, I2_9, I2_10
/// are the primary forms; the other four are filled from the relations.
InvariantSet xtype_closed_forms(const XTypeParams& h);

struct Reconstruction {
    std::array<cplx, 2> h1_h8;  // unordered pair {h1, h8}
    std::array<cplx, 2> h3_h6;  // unordered pair {h3, h6}
    cplx h2h7{};
    cplx h4h5{};
    /// A labelled choice (h1, h8, h3, h6) that reproduces I2_4 and I2_5, if any.
    std::array<cplx, 4> labelled{};
    bool consistent = false;
    double residual = 0.0;
};

Reconstruction reconstruct_params(const InvariantSet& inv, const XTypeEigenvalues& ev, double tol = kDefaultTol);

struct InvariantCheck {
    std::string name;
    cplx formula{};
    cplx direct{};
    double error = 0.0;  // |formula - direct| / max(1, |direct|)
};

struct EigenReport {
    std::string entry_id;
    int class_id = 0;
    ParamMap labels;
    std::vector<InvariantCheck> checks;     // I2_4, I2_5, I2_8, I2_9, I2_10
    std::vector<InvariantCheck> relations;  // class-specific dependence relations
    int independent_count = 0;
    double max_error = 0.0;
    bool ok = false;
};

EigenReport class_eigen_report(const CatalogEntry& e, const ParamMap& params, double tol = kDefaultTol);

}  // namespace braidgate
