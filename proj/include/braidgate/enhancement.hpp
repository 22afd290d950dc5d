#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "braidgate/catalog.hpp"
#include "braidgate/matrix.hpp"
#include "braidgate/yang_baxter.hpp"

namespace braidgate {

/// (R, mu, x, y) with [R, mu x mu] = 0, tr2[R (mu x mu)] = x y mu and
/// tr2[R^-1 (mu x mu)] = y/x mu.
struct EnhancedOperator {
    Matrix R;
    Matrix mu;
    cplx x{1.0, 0.0};
    cplx y{1.0, 0.0};
};

struct EnhancementCheck {
    double commutator = 0.0;  // condition (a)
    double trace = 0.0;       // condition (b)
    double inverse = 0.0;     // condition (c)
    bool ok = false;

    double worst() const;
};

/// Residuals are max-norms scaled by max(1, |R| |mu|^2) so that the verdict
/// does not depend on the overall size of R.  Throws SingularMatrixError.
EnhancementCheck verify_enhancement(const EnhancedOperator& e, double tol = kDefaultTol);

/// a I + b X + c Y + d Z
Matrix pauli_combination(const std::array<cplx, 4>& coeffs);

/// Pauli coefficients of a 2x2 matrix, scan order I, X, Y, Z.
std::array<cplx, 4> pauli_coefficients(const Matrix& mu);

/// Rescales (mu, y) so that the first Pauli coefficient with modulus above
/// `tol` is 1, and flips (x, y) -> (-x, -y) so that x has positive real part
/// (or positive imaginary part when real part is zero).
EnhancedOperator normalize_enhancement(const EnhancedOperator& e, double tol = 1e-9);

/// Distance between two enhancements after normalization (max over the four
/// Pauli coefficients, x and y, relative).
double enhancement_distance(const EnhancedOperator& a, const EnhancedOperator& b);

int writhe(const BraidWord& w);

/// x^(-writhe) y^(-n) Tr[rho(w) mu^(x n)].  Refuses (std::invalid_argument)
/// when the enhancement does not verify at `tol` or when w.strands exceeds
/// `max_strands`.
cplx link_polynomial(const EnhancedOperator& e, const BraidWord& w, double tol = kDefaultTol, int max_strands = 8);

struct MarkovResult {
    BraidWord word;
    BraidWord conjugated;
    BraidWord stabilized;
    double conjugation = 0.0;
    double stabilization = 0.0;
};

/// Compares L(w) with L(c w c^-1) for the given conjugator and with
/// L(w s_n^sign) on n + 1 strands.  Residuals are relative to max(1, |L(w)|).
MarkovResult markov_check(const EnhancedOperator& e, const BraidWord& w, const BraidWord& conjugator, int sign,
                          double tol = kDefaultTol);

/// Same with a random conjugator (one to three letters) and random sign.
MarkovResult markov_check(const EnhancedOperator& e, const BraidWord& w, std::mt19937_64& rng,
                          double tol = kDefaultTol);

BraidWord random_word(int strands, int letters, int max_exponent, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Recipes

struct LinkClaim {
    std::string text;
    /// Value of L(s1^k), variables k, s, free parameters, recipe definitions, x, y.
    Expr two_strand;
    /// Value of L(s1^k1 s2^k2) when the closed form is known.
    std::optional<Expr> three_strand;
};

struct EnhancementRecipe {
    std::string id;     // "E3.2"
    std::string entry;  // "C3.0"
    std::string mu_text;
    /// Overrides applied to free parameters before instantiation, e.g. h8 = h1.
    std::vector<Assignment> param_constraints;
    /// Helper quantities evaluated in order; later ones may use earlier ones.
    std::vector<Assignment> definitions;
    std::array<Expr, 4> mu;  // Pauli coefficients, may use s
    Expr x;
    Expr y;
    LinkClaim claim;
};

const std::vector<EnhancementRecipe>& enhancement_recipes();
const EnhancementRecipe& enhancement_recipe(const std::string& id);
std::vector<const EnhancementRecipe*> recipes_for(const std::string& entry_id);

/// Free parameters after the recipe's overrides.
ParamMap recipe_params(const EnhancementRecipe& r, const ParamMap& free);
ParamMap random_recipe_params(const EnhancementRecipe& r, std::mt19937_64& rng);

/// Evaluation scope: free params, h1..h8, definitions, s, x, y.
ParamMap recipe_scope(const EnhancementRecipe& r, const ParamMap& free, int sign);

/// sign = +1 or -1 selects the upper or lower of the paired (x, y) signs.
EnhancedOperator instantiate_recipe(const EnhancementRecipe& r, const ParamMap& free, int sign);

cplx claimed_link_value(const EnhancementRecipe& r, const ParamMap& free, int sign, int k);
std::optional<cplx> claimed_link_value3(const EnhancementRecipe& r, const ParamMap& free, int sign, int k1, int k2);

// ---------------------------------------------------------------------------
// Solver

struct SolverOptions {
    int starts = 200;  // per gauge
    std::uint64_t seed = 1;
    int max_iterations = 200;
    double tol = 1e-12;      // convergence on the scaled residual norm
    double dedup_tol = 1e-6;
};

/// Multi-start damped Gauss-Newton (Levenberg-Marquardt) on conditions
/// (a)-(c) with mu in the Pauli span.  For each gauge g in (I, X, Y, Z)
/// the coefficient of g is 1 and earlier ones are 0.  Solutions are
/// verified, normalized and deduplicated; one representative is kept per
/// (x, y) -> (-x, -y) pair.
std::vector<EnhancedOperator> solve_enhancement(const Matrix& r, const SolverOptions& opt = {});

// ---------------------------------------------------------------------------
// Algebra witnesses

enum class AlgebraKind { BMW, Hecke, Jordan };

struct AlgebraWitness {
    AlgebraKind kind = AlgebraKind::Hecke;
    cplx scale{1.0, 0.0};
    std::vector<std::pair<std::string, cplx>> params;
    std::vector<std::pair<std::string, double>> residuals;
    bool realized = false;
    std::string label;  // which realization, e.g. "s = -R/h1, q = -h8/h1"
    bool stated = true;  // false for a corrected parameter set

    double worst() const;
};

/// g = scale R, e = (g + g^-1)/m - 1 on two and three strands.
AlgebraWitness bmw_witness(const Matrix& r, cplx scale, cplx l, cplx m, double tol = kDefaultTol);

/// s = scale R; s^2 = (q - 1) s + q and the braid relation on three strands.
AlgebraWitness hecke_witness(const Matrix& r, cplx scale, cplx q, double tol = kDefaultTol);

/// sum_k c_k R^k = 0 with k running from `lowest` upward.
AlgebraWitness polynomial_identity(const Matrix& r, int lowest, const std::vector<cplx>& coeffs,
                                   double tol = kDefaultTol);

/// Every stated algebra realization for a class representative, both sign
/// choices where the statement has them.  Class 1 is taken at h8 = h1 (the
/// free value of h8 is overwritten).  Class 7 also carries the pair with
/// m = 2i h3 / sqrt(h1^2 - h3^2) (marked not stated), which is the value the
/// spectrum forces.  Variants return an empty list.
std::vector<AlgebraWitness> class_algebra_witnesses(const CatalogEntry& e, const ParamMap& free,
                                                    double tol = kDefaultTol);

}  // namespace braidgate
