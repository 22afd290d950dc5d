#pragma once

#include <random>
#include <string>
#include <vector>

#include "braidgate/expr.hpp"
#include "braidgate/xtype.hpp"

namespace braidgate {

struct Assignment {
    std::string target;  // "h1" ... "h8"
    Expr value;          // in terms of the free parameters
};

struct Label {
    std::string name;  // e.g. "lambda_plus"
    Expr value;        // in terms of the full h1..h8
};

struct CatalogEntry {
    std::string id;  // "C3.0"
    int class_id = 0;
    int variant_id = 0;
    std::vector<std::string> free_params;
    std::vector<Assignment> constraints;
    std::vector<Expr> nonzero;  // admissibility: each must be nonzero
    std::vector<Label> eigen_labels;
    std::vector<std::string> enhancement_refs;

    bool is_representative() const { return variant_id == 0; }
};

/// All 38 entries in class/variant order.
const std::vector<CatalogEntry>& catalog();

/// Accepts "C3.0" or "3.0"; throws std::out_of_range for unknown ids.
const CatalogEntry& catalog_entry(const std::string& id);

std::vector<const CatalogEntry*> catalog_class(int class_id);

/// Values for h1..h8 keyed "h1".."h8".
ParamMap to_param_map(const XTypeParams& h);

/// Fills the constrained h's. Throws InadmissibleParams when a free
/// parameter is missing, a denominator vanishes, or an admissibility
/// expression is zero. Extra keys that name free parameters are used; other
/// keys are rejected with std::invalid_argument.
XTypeParams catalog_instantiate(const CatalogEntry& e, const ParamMap& params);

/// One admissible draw: each free parameter has modulus uniform in
/// [0.5, 1.5] and a uniform phase.  Draws where an admissibility
/// expression or an eigenvalue of the operator has modulus below 0.2 are
/// rejected, which keeps the operator away from the singular locus.
ParamMap random_params(const CatalogEntry& e, std::mt19937_64& rng);

/// Eigen labels evaluated at an instantiated operator.
ParamMap eigen_labels(const CatalogEntry& e, const XTypeParams& h);

cplx random_scalar(std::mt19937_64& rng);

}  // namespace braidgate
