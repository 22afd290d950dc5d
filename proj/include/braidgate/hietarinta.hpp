#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "braidgate/catalog.hpp"
#include "braidgate/enhancement.hpp"
#include "braidgate/invariants.hpp"
#include "braidgate/matrix.hpp"

namespace braidgate {

// ---------------------------------------------------------------------------
// Standard forms

struct HietarintaForm {
    std::string name;                  // "H3,1", "H2,3'", "H0,2", ...
    std::vector<std::string> params;   // subset of k, p, q, s in display order
    std::vector<std::string> nonzero;  // expressions that must not vanish
};

/// The ten forms plus H2,3'.
const std::vector<HietarintaForm>& hietarinta_forms();
const HietarintaForm& hietarinta_form(const std::string& name);

/// Missing parameters default to 0; unknown names throw std::invalid_argument.
Matrix hietarinta_assemble(const std::string& name, const ParamMap& params);
ParamMap random_hietarinta_params(const HietarintaForm& f, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Moves

/// The swap P: P|ij> = |ji>.
Matrix swap_operator();

enum class ConvertDirection { AlgebraicToBraided, BraidedToAlgebraic };

/// P R in both directions (P is an involution).
Matrix permutation_convert(const Matrix& r, ConvertDirection dir);

enum class DiscreteMove { Transpose, NegateIndices, SwapFactors };  // 3a, 3b, 3c

/// 3a: R^T.  3b: (X x X) R (X x X).  3c: P R P.
Matrix discrete_transform(const Matrix& r, DiscreteMove which);
std::string move_label(DiscreteMove which);  // "3a", "3b", "3c"

/// kappa (Q x Q) R (Q x Q)^-1.  Throws SingularMatrixError for singular Q.
Matrix conjugate(const Matrix& r, cplx kappa, const Matrix& q);

/// (Q1 x Q2) R (Q1 x Q2)^-1
Matrix conjugate_split(const Matrix& r, const Matrix& q1, const Matrix& q2);

// ---------------------------------------------------------------------------
// Recipes

struct RecipeStep {
    enum class Kind { Discrete, Conjugate, ConjugateSplit } kind = Kind::Discrete;
    DiscreteMove move = DiscreteMove::Transpose;
    Expr kappa;               // Conjugate
    std::array<Expr, 4> q;    // Conjugate (row-major), or Q1 for ConjugateSplit
    std::array<Expr, 4> q2;   // ConjugateSplit

    std::string label() const;  // "3a", "conjugate", "conjugate-split"
};

/// A catalog entry ("C3.1") or a standard form ("H1,2") with parameter
/// expressions over the recipe scope (a relabel when it names a catalog
/// entry).
struct OperatorRef {
    std::string name;
    std::vector<Assignment> params;

    bool is_form() const { return !name.empty() && name[0] == 'H'; }
};

/// steps(lhs) == rhs.  One of the two sides is the source entry itself.
struct EquivalenceRecipe {
    std::string id;
    std::string source;  // catalog id being classified
    bool auxiliary = false;  // extra equivalence, not part of the classification chain
    std::vector<Assignment> definitions;  // evaluated in order over the source scope
    std::vector<std::string> branch_defs;  // square-root definitions the verifier may negate
    OperatorRef lhs;
    std::vector<RecipeStep> steps;
    OperatorRef rhs;

    /// The side that is not the source.
    const OperatorRef& other() const;
};

const std::vector<EquivalenceRecipe>& equivalence_recipes();
const EquivalenceRecipe& equivalence_recipe(const std::string& id);

/// Primary (non-auxiliary) recipe for a catalog entry.
const EquivalenceRecipe& recipe_for_entry(const std::string& entry_id);

struct RecipeResult {
    std::string recipe_id;
    double residual = 0.0;
    std::vector<std::string> negated_branches;  // which branch_defs had their sign flipped
    ParamMap other_params;                      // evaluated parameters of the other side
    bool ok = false;
};

/// Runs the steps at the given free parameters of the source entry.  When
/// the principal branches fail, every sign combination of the recipe's
/// branch definitions is tried and the first passing one is recorded.
RecipeResult verify_recipe(const EquivalenceRecipe& r, const ParamMap& free, double tol = kDefaultTol);

struct ClassifyResult {
    std::string entry_id;
    std::string family;  // "H1,2", or empty when unclassified
    std::vector<RecipeResult> chain;
    double residual = 0.0;  // worst along the chain
    bool ok = false;
};

/// Follows primary recipes until a standard form is reached.
ClassifyResult classify(const std::string& entry_id, const ParamMap& free, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// H1,3 and H2,3

struct ExtrasCheck {
    std::string name;
    cplx claimed;
    cplx direct;
    double error = 0.0;
};

struct ExtrasReport {
    std::string form;  // "H1,3" or "H2,3"
    ParamMap params;
    Matrix r;
    std::vector<ExtrasCheck> invariants;  // I1, I2_4, I2_5, I2_8, I2_9, I2_10, tr R^1..4
    std::vector<cplx> eigenvalues;
    std::vector<int> multiplicities;  // sorted descending, clustered at the tolerance
    bool enhancement_claimed = false; // H2,3: only at q = -p
    std::vector<EnhancementCheck> enhancements;  // both signs when claimed
    std::vector<ExtrasCheck> link_values;        // L(s1^n) for n in [-4, 4] \ {0}, both signs
    ExtrasCheck epower;                          // claimed formula vs quadrature
    AlgebraWitness algebra;                      // H1,3: Hecke at q = 1; H2,3: cubic identity (counted at q = -p)
    double worst = 0.0;
    bool ok = false;
};

ExtrasReport rh_extras_report(const std::string& which, const ParamMap& params, double tol = kDefaultTol);

/// (mu, x, y) of the enhancement stated for the form, sign = +1 or -1.
EnhancedOperator rh_enhancement(const std::string& which, const ParamMap& params, int sign);

}  // namespace braidgate
