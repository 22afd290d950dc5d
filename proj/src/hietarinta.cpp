#include "braidgate/hietarinta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "braidgate/entangling_power.hpp"
#include "braidgate/xtype.hpp"

namespace braidgate {

namespace {

struct FormRow {
    HietarintaForm form;
    std::array<const char*, 16> entries;
};

const std::vector<FormRow>& form_rows()
{
    static const std::vector<FormRow> rows = {
        {{"H3,1", {"k", "p", "q", "s"}, {"k", "p", "q", "s"}},
         {"k", "0", "0", "0", "0", "0", "p", "0", "0", "q", "0", "0", "0", "0", "0", "s"}},
        {{"H2,1", {"k", "p", "q"}, {"k", "q"}},
         {"k^2", "0", "0", "0", "0", "k^2-p*q", "k*p", "0", "0", "k*q", "0", "0", "0", "0", "0", "k^2"}},
        {{"H2,2", {"k", "p", "q"}, {"k", "q", "p*q"}},
         {"k^2", "0", "0", "0", "0", "k^2-p*q", "k*p", "0", "0", "k*q", "0", "0", "0", "0", "0", "-p*q"}},
        {{"H2,3", {"k", "p", "q", "s"}, {"k"}},
         {"k", "p", "q", "s", "0", "0", "k", "p", "0", "k", "0", "q", "0", "0", "0", "k"}},
        {{"H2,3'", {"k", "s"}, {"k"}},
         {"k", "0", "0", "s", "0", "0", "k", "0", "0", "k", "0", "0", "0", "0", "0", "k"}},
        {{"H1,1", {"p", "q"}, {"p^2-q^2", "p^2+q^2"}},
         {"p^2+2*p*q-q^2", "0", "0", "p^2-q^2", "0", "p^2-q^2", "p^2+q^2", "0", "0", "p^2+q^2", "p^2-q^2", "0",
          "p^2-q^2", "0", "0", "p^2-2*p*q-q^2"}},
        {{"H1,2", {"k", "p", "q"}, {"p", "q"}},
         {"p", "0", "0", "k", "0", "p-q", "p", "0", "0", "q", "0", "0", "0", "0", "0", "-q"}},
        {{"H1,3", {"k", "p", "q"}, {"k"}},
         {"k^2", "-k*p", "k*p", "p*q", "0", "0", "k^2", "k*q", "0", "k^2", "0", "-k*q", "0", "0", "0", "k^2"}},
        {{"H1,4", {"k", "p", "q"}, {"k", "p", "q"}},
         {"0", "0", "0", "p", "0", "k", "0", "0", "0", "0", "k", "0", "q", "0", "0", "0"}},
        {{"H0,1", {}, {}}, {"1", "0", "0", "1", "0", "0", "-1", "0", "0", "-1", "0", "0", "0", "0", "0", "1"}},
        {{"H0,2", {}, {}}, {"1", "0", "0", "1", "0", "1", "1", "0", "0", "-1", "1", "0", "-1", "0", "0", "1"}},
    };
    return rows;
}

const FormRow& form_row(const std::string& name)
{
    for (const auto& r : form_rows())
        if (r.form.name == name) return r;
    throw std::invalid_argument("unknown Hietarinta form '" + name + "'");
}

}  // namespace

const std::vector<HietarintaForm>& hietarinta_forms()
{
    static const std::vector<HietarintaForm> forms = [] {
        std::vector<HietarintaForm> out;
        for (const auto& r : form_rows()) out.push_back(r.form);
        return out;
    }();
    return forms;
}

const HietarintaForm& hietarinta_form(const std::string& name) { return form_row(name).form; }

Matrix hietarinta_assemble(const std::string& name, const ParamMap& params)
{
    const FormRow& row = form_row(name);
    ParamMap scope{{"k", 0.0}, {"p", 0.0}, {"q", 0.0}, {"s", 0.0}};
    for (const auto& [key, value] : params) {
        if (std::find(row.form.params.begin(), row.form.params.end(), key) == row.form.params.end())
            throw std::invalid_argument(name + ": unknown parameter '" + key + "'");
        scope[key] = value;
    }
    Matrix m(4);
    for (std::size_t i = 0; i < 16; ++i) m(i / 4, i % 4) = Expr(row.entries[i]).eval(scope);
    return m;
}

ParamMap random_hietarinta_params(const HietarintaForm& f, std::mt19937_64& rng)
{
    for (int attempt = 0; attempt < 100; ++attempt) {
        ParamMap p;
        for (const auto& name : f.params) p[name] = random_scalar(rng);
        bool clear = true;
        for (const auto& nz : f.nonzero) clear = clear && std::abs(Expr(nz).eval(p)) >= 0.2;
        if (!clear) continue;
        try {
            (void)invert(hietarinta_assemble(f.name, p));
            return p;
        } catch (const SingularMatrixError&) {
        }
    }
    throw std::runtime_error(f.name + ": could not draw admissible parameters");
}

Matrix swap_operator()
{
    return Matrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
}

Matrix permutation_convert(const Matrix& r, ConvertDirection)
{
    if (r.dim() != 4) throw DimensionError("permutation_convert: expected a 4x4 operator");
    return swap_operator() * r;
}

Matrix discrete_transform(const Matrix& r, DiscreteMove which)
{
    if (r.dim() != 4) throw DimensionError("discrete_transform: expected a 4x4 operator");
    switch (which) {
    case DiscreteMove::Transpose: return r.transpose();
    case DiscreteMove::NegateIndices: {
        const Matrix xx = tensor_product(pauli::X(), pauli::X());
        return xx * r * xx;
    }
    case DiscreteMove::SwapFactors: {
        const Matrix p = swap_operator();
        return p * r * p;
    }
    }
    return r;
}

std::string move_label(DiscreteMove which)
{
    switch (which) {
    case DiscreteMove::Transpose: return "3a";
    case DiscreteMove::NegateIndices: return "3b";
    case DiscreteMove::SwapFactors: return "3c";
    }
    return "?";
}

Matrix conjugate(const Matrix& r, cplx kappa, const Matrix& q)
{
    const Matrix qq = tensor_product(q, q);
    return kappa * (qq * r * invert(qq));
}

Matrix conjugate_split(const Matrix& r, const Matrix& q1, const Matrix& q2)
{
    const Matrix qq = tensor_product(q1, q2);
    return qq * r * invert(qq);
}

std::string RecipeStep::label() const
{
    switch (kind) {
    case Kind::Discrete: return move_label(move);
    case Kind::Conjugate: return "conjugate";
    case Kind::ConjugateSplit: return "conjugate-split";
    }
    return "?";
}

const OperatorRef& EquivalenceRecipe::other() const { return lhs.name == source ? rhs : lhs; }

namespace {

using Defs = std::vector<std::pair<const char*, const char*>>;

Assignment assign(const char* t, const char* v) { return {t, Expr(v)}; }

OperatorRef ref(const std::string& name, const Defs& params = {})
{
    OperatorRef r{name, {}};
    for (const auto& [t, v] : params) r.params.push_back(assign(t, v));
    return r;
}

RecipeStep move(DiscreteMove m)
{
    RecipeStep s;
    s.kind = RecipeStep::Kind::Discrete;
    s.move = m;
    return s;
}

RecipeStep conj_step(const char* kappa, std::array<const char*, 4> q)
{
    RecipeStep s;
    s.kind = RecipeStep::Kind::Conjugate;
    s.kappa = Expr(kappa);
    for (int i = 0; i < 4; ++i) s.q[i] = Expr(q[i]);
    return s;
}

RecipeStep split_step(std::array<const char*, 4> q1, std::array<const char*, 4> q2)
{
    RecipeStep s;
    s.kind = RecipeStep::Kind::ConjugateSplit;
    for (int i = 0; i < 4; ++i) {
        s.q[i] = Expr(q1[i]);
        s.q2[i] = Expr(q2[i]);
    }
    return s;
}

constexpr DiscreteMove A = DiscreteMove::Transpose;
constexpr DiscreteMove B = DiscreteMove::NegateIndices;
constexpr DiscreteMove C = DiscreteMove::SwapFactors;

EquivalenceRecipe forward(const char* id, const char* source, std::vector<DiscreteMove> moves, OperatorRef target)
{
    EquivalenceRecipe r;
    r.id = id;
    r.source = source;
    r.lhs = ref(source);
    for (DiscreteMove m : moves) r.steps.push_back(move(m));
    r.rhs = std::move(target);
    return r;
}

std::vector<EquivalenceRecipe> build_recipes()
{
    std::vector<EquivalenceRecipe> out;
    out.push_back(forward("A1", "C1.0", {}, ref("H3,1", {{"k", "h1"}, {"p", "h4"}, {"q", "h5"}, {"s", "h8"}})));
    out.push_back(forward("A2", "C2.0", {}, ref("H1,4", {{"k", "h3"}, {"p", "h2"}, {"q", "h7"}})));
    {
        EquivalenceRecipe r;
        r.id = "A3";
        r.source = "C3.0";
        r.lhs = ref("H1,2", {{"k", "h7"}, {"p", "h8"}, {"q", "-h1"}});
        r.steps = {move(B)};
        r.rhs = ref("C3.0");
        out.push_back(r);
    }
    out.push_back(forward("A3.1", "C3.1", {B, C, A}, ref("C3.0", {{"h1", "h8"}, {"h7", "h7"}, {"h8", "h1"}})));
    out.push_back(forward("A3.2", "C3.2", {B, C}, ref("C3.0", {{"h1", "h8"}, {"h7", "h2"}, {"h8", "h1"}})));
    out.push_back(forward("A3.3", "C3.3", {A}, ref("C3.0", {{"h1", "h1"}, {"h7", "h2"}, {"h8", "h8"}})));
    out.push_back(forward("A3.4", "C3.4", {B}, ref("C3.1", {{"h1", "h8"}, {"h7", "h2"}, {"h8", "h1"}})));
    out.push_back(forward("A3.5", "C3.5", {A, C}, ref("C3.1", {{"h1", "h1"}, {"h7", "h2"}, {"h8", "h8"}})));
    out.push_back(forward("A3.6", "C3.6", {C}, ref("C3.1", {{"h1", "h1"}, {"h7", "h7"}, {"h8", "h8"}})));
    out.push_back(forward("A3.7", "C3.7", {C}, ref("C3.0", {{"h1", "h1"}, {"h7", "h7"}, {"h8", "h8"}})));
    {
        auto r = forward("A4", "C4.0", {C}, ref("H2,1", {{"k", "r"}, {"p", "r/h4*(h1-h6)"}, {"q", "h4/r"}}));
        r.definitions = {assign("r", "sqrt(h1)")};
        r.branch_defs = {"r"};
        out.push_back(r);
    }
    out.push_back(forward("A4.1", "C4.1", {A, C}, ref("C4.0", {{"h1", "h1"}, {"h4", "h4"}, {"h6", "h3"}})));
    {
        auto r = forward("A5", "C5.0", {C}, ref("H2,2", {{"k", "r"}, {"p", "r/h4*(h1-h6)"}, {"q", "h4/r"}}));
        r.definitions = {assign("r", "sqrt(h1)")};
        r.branch_defs = {"r"};
        out.push_back(r);
    }
    out.push_back(forward("A5.1", "C5.1", {A, C}, ref("C5.0", {{"h1", "h1"}, {"h4", "h4"}, {"h6", "h3"}})));
    {
        EquivalenceRecipe r;
        r.id = "A6";
        r.source = "C6.0";
        r.definitions = {assign("w", "sqrt((h1^2+h8^2)/2)"), assign("P", "(h1+h8)/2"), assign("lm", "P-w"),
                         assign("a", "sqrt(2*h2)"),           assign("b", "sqrt(h1+h8)")};
        r.branch_defs = {"w", "a", "b"};
        r.lhs = ref("H1,1", {{"p", "P"}, {"q", "P*(h1-h8)/(2*lm)"}});
        r.steps = {conj_step("lm/(2*P^2)", {"a", "0", "0", "b"})};
        r.rhs = ref("C6.0");
        out.push_back(r);
    }
    {
        EquivalenceRecipe r;
        r.id = "A6.1";
        r.source = "C6.1";
        r.lhs = ref("C6.0", {{"h1", "-h1"}, {"h2", "-h2"}, {"h8", "-h8"}});
        r.steps = {conj_step("-1", {"1", "0", "0", "1"})};
        r.rhs = ref("C6.1");
        out.push_back(r);
    }
    {
        EquivalenceRecipe r;
        r.id = "A7";
        r.source = "C7.0";
        r.definitions = {assign("a", "sqrt(h2)"), assign("b", "sqrt(h3)")};
        r.branch_defs = {"a", "b"};
        r.lhs = ref("H1,4", {{"k", "h1+h3"}, {"p", "h1-h3"}, {"q", "h1-h3"}});
        r.steps = {conj_step("1", {"i*a", "-i*a", "b", "b"})};
        r.rhs = ref("C7.0");
        out.push_back(r);
    }
    {
        EquivalenceRecipe r;
        r.id = "A7.1";
        r.source = "C7.1";
        r.definitions = {assign("a", "sqrt(h2)"), assign("b", "sqrt(h3)")};
        r.branch_defs = {"a", "b"};
        r.lhs = ref("H3,1", {{"k", "h1+h3"}, {"p", "h1-h3"}, {"q", "h1-h3"}, {"s", "h1+h3"}});
        r.steps = {conj_step("1", {"a", "-a", "b", "b"})};
        r.rhs = ref("C7.1");
        out.push_back(r);
    }
    {
        EquivalenceRecipe r;
        r.id = "A7s";
        r.source = "C7.0";
        r.auxiliary = true;
        r.lhs = ref("C7.0");
        r.steps = {split_step({"1", "0", "0", "-i"}, {"1", "0", "0", "i"})};
        r.rhs = ref("C7.1", {{"h1", "h1"}, {"h2", "h2"}, {"h3", "h3"}});
        out.push_back(r);
    }
    {
        EquivalenceRecipe r;
        r.id = "A8";
        r.source = "C8.0";
        r.definitions = {assign("a", "sqrt(h2)"), assign("b", "sqrt(h1)")};
        r.branch_defs = {"a", "b"};
        r.lhs = ref("H0,2");
        r.steps = {conj_step("h1", {"0", "i*a", "b", "0"})};
        r.rhs = ref("C8.0");
        out.push_back(r);
    }
    out.push_back(forward("A8.1", "C8.1", {C}, ref("C8.0", {{"h1", "h1"}, {"h2", "h2"}})));
    {
        EquivalenceRecipe r;
        r.id = "A9";
        r.source = "C9.0";
        r.definitions = {assign("a", "sqrt(h7)"), assign("b", "sqrt(h1)")};
        r.branch_defs = {"a", "b"};
        r.lhs = ref("H0,1");
        r.steps = {conj_step("h1", {"a", "0", "0", "b"}), move(A)};
        r.rhs = ref("C9.0");
        out.push_back(r);
    }
    out.push_back(forward("A9.1", "C9.1", {A}, ref("C9.0", {{"h1", "h1"}, {"h7", "h2"}})));
    out.push_back(forward("A9.2", "C9.2", {A}, ref("H2,3'", {{"k", "h1"}, {"s", "h7"}})));
    out.push_back(forward("A9.3", "C9.3", {A}, ref("C9.2", {{"h1", "h1"}, {"h7", "h2"}})));
    {
        EquivalenceRecipe r;
        r.id = "A9s";
        r.source = "C9.0";
        r.auxiliary = true;
        r.lhs = ref("C9.0");
        r.steps = {split_step({"1", "0", "0", "-i"}, {"1", "0", "0", "i"})};
        r.rhs = ref("C9.2", {{"h1", "h1"}, {"h7", "h7"}});
        out.push_back(r);
    }
    out.push_back(forward("A10", "C10.0", {B}, ref("H1,2", {{"k", "h7"}, {"p", "-h1"}, {"q", "-h1"}})));
    out.push_back(forward("A10.1", "C10.1", {A}, ref("C10.0", {{"h1", "h1"}, {"h7", "h2"}})));
    out.push_back(forward("A10.2", "C10.2", {B, A}, ref("C10.0", {{"h1", "-h1"}, {"h7", "h7"}})));
    out.push_back(forward("A10.3", "C10.3", {A}, ref("C10.2", {{"h1", "h1"}, {"h7", "h2"}})));
    out.push_back(forward("A11", "C11.0", {A}, ref("H1,2", {{"k", "h7"}, {"p", "h8"}, {"q", "-h8"}})));
    out.push_back(forward("A11.1", "C11.1", {B, C}, ref("C11.0", {{"h7", "h2"}, {"h8", "h8"}})));
    out.push_back(forward("A11.2", "C11.2", {A}, ref("C11.1", {{"h2", "h7"}, {"h8", "h8"}})));
    out.push_back(forward("A11.3", "C11.3", {A}, ref("C11.0", {{"h7", "h2"}, {"h8", "h8"}})));
    out.push_back(forward("A11.4", "C11.4", {C}, ref("C11.2", {{"h7", "h7"}, {"h8", "h1"}})));
    out.push_back(forward("A11.5", "C11.5", {C}, ref("C11.3", {{"h2", "h2"}, {"h8", "h1"}})));
    out.push_back(forward("A11.6", "C11.6", {C}, ref("C11.0", {{"h7", "h7"}, {"h8", "h1"}})));
    out.push_back(forward("A11.7", "C11.7", {C}, ref("C11.1", {{"h2", "h2"}, {"h8", "h1"}})));
    {
        EquivalenceRecipe r;
        r.id = "A12";
        r.source = "C12.0";
        r.definitions = {assign("a", "sqrt((1+i)*h2)"), assign("b", "sqrt(h1)")};
        r.branch_defs = {"a", "b"};
        r.lhs = ref("H1,1", {{"p", "1"}, {"q", "i"}});
        r.steps = {conj_step("h1/(2*(1+i))", {"a", "0", "0", "-b"})};
        r.rhs = ref("C12.0");
        out.push_back(r);
    }
    out.push_back(forward("A12.1", "C12.1", {A, B}, ref("C12.0", {{"h1", "i*h1"}, {"h2", "h2"}})));
    return out;
}

Matrix build_q(const std::array<Expr, 4>& q, const ParamMap& scope)
{
    return Matrix{{q[0].eval(scope), q[1].eval(scope)}, {q[2].eval(scope), q[3].eval(scope)}};
}

ParamMap eval_params(const OperatorRef& ref, const ParamMap& scope)
{
    ParamMap out;
    for (const auto& a : ref.params) out[a.target] = a.value.eval(scope);
    return out;
}

Matrix build_operator(const OperatorRef& ref, const std::string& source, const ParamMap& free, const ParamMap& scope)
{
    if (ref.is_form()) return hietarinta_assemble(ref.name, eval_params(ref, scope));
    const ParamMap p = (ref.name == source && ref.params.empty()) ? free : eval_params(ref, scope);
    return assemble(catalog_instantiate(catalog_entry(ref.name), p));
}

Matrix apply_step(const RecipeStep& s, const Matrix& m, const ParamMap& scope)
{
    switch (s.kind) {
    case RecipeStep::Kind::Discrete: return discrete_transform(m, s.move);
    case RecipeStep::Kind::Conjugate: return conjugate(m, s.kappa.eval(scope), build_q(s.q, scope));
    case RecipeStep::Kind::ConjugateSplit: return conjugate_split(m, build_q(s.q, scope), build_q(s.q2, scope));
    }
    return m;
}

struct Attempt {
    double residual;
    ParamMap other;
};

Attempt run_recipe(const EquivalenceRecipe& r, const ParamMap& free, unsigned flip_mask)
{
    const CatalogEntry& src = catalog_entry(r.source);
    ParamMap scope = to_param_map(catalog_instantiate(src, free));
    for (const auto& [k, v] : free) scope[k] = v;
    for (const auto& d : r.definitions) {
        cplx v = d.value.eval(scope);
        for (std::size_t b = 0; b < r.branch_defs.size(); ++b)
            if ((flip_mask >> b & 1U) && r.branch_defs[b] == d.target) v = -v;
        scope[d.target] = v;
    }
    Matrix m = build_operator(r.lhs, r.source, free, scope);
    for (const auto& s : r.steps) m = apply_step(s, m, scope);
    const Matrix target = build_operator(r.rhs, r.source, free, scope);
    return {max_diff(m, target) / std::max(1.0, target.max_norm()), eval_params(r.other(), scope)};
}

}  // namespace

const std::vector<EquivalenceRecipe>& equivalence_recipes()
{
    static const std::vector<EquivalenceRecipe> recipes = build_recipes();
    return recipes;
}

const EquivalenceRecipe& equivalence_recipe(const std::string& id)
{
    for (const auto& r : equivalence_recipes())
        if (r.id == id) return r;
    throw std::out_of_range("unknown equivalence recipe '" + id + "'");
}

const EquivalenceRecipe& recipe_for_entry(const std::string& entry_id)
{
    const std::string id = catalog_entry(entry_id).id;
    for (const auto& r : equivalence_recipes())
        if (r.source == id && !r.auxiliary) return r;
    throw std::out_of_range("no equivalence recipe stored for " + id);
}

RecipeResult verify_recipe(const EquivalenceRecipe& r, const ParamMap& free, double tol)
{
    RecipeResult res;
    res.recipe_id = r.id;
    res.residual = std::numeric_limits<double>::infinity();
    const unsigned combos = 1U << r.branch_defs.size();
    for (unsigned mask = 0; mask < combos; ++mask) {
        Attempt a;
        try {
            a = run_recipe(r, free, mask);
        } catch (const SingularMatrixError& e) {
            throw InadmissibleParams(r.id + ": " + e.what());
        }
        if (mask == 0 || a.residual < res.residual) {
            res.residual = a.residual;
            res.other_params = a.other;
            res.negated_branches.clear();
            for (std::size_t b = 0; b < r.branch_defs.size(); ++b)
                if (mask >> b & 1U) res.negated_branches.push_back(r.branch_defs[b]);
        }
        if (res.residual < tol) break;
    }
    res.ok = res.residual < tol;
    return res;
}

ClassifyResult classify(const std::string& entry_id, const ParamMap& free, double tol)
{
    ClassifyResult out;
    out.entry_id = catalog_entry(entry_id).id;
    std::string current = out.entry_id;
    ParamMap params = free;
    for (int hop = 0; hop < 8; ++hop) {
        const EquivalenceRecipe* r = nullptr;
        try {
            r = &recipe_for_entry(current);
        } catch (const std::out_of_range&) {
            break;
        }
        RecipeResult res = verify_recipe(*r, params, tol);
        out.residual = std::max(out.residual, res.residual);
        out.chain.push_back(res);
        const OperatorRef& next = r->other();
        if (next.is_form()) {
            out.family = next.name;
            break;
        }
        current = next.name;
        params = res.other_params;
    }
    out.ok = !out.family.empty() && out.residual < tol;
    return out;
}

// ---------------------------------------------------------------------------

EnhancedOperator rh_enhancement(const std::string& which, const ParamMap& params, int sign)
{
    const cplx k = params.at("k"), p = params.at("p"), q = params.at("q");
    const double s = sign >= 0 ? 1.0 : -1.0;
    EnhancedOperator e;
    e.R = hietarinta_assemble(which == "H1,3" ? "H1,3" : "H2,3", params);
    if (which == "H1,3") {
        const cplx c = -(p + q) / (2.0 * k);
        e.mu = pauli_combination({1.0, c, c * cplx(0.0, 1.0), 0.0});
        e.x = s * k * k;
    } else if (which == "H2,3") {
        e.mu = pauli::I();
        e.x = s * k;
    } else {
        throw std::invalid_argument("rh_enhancement: expected H1,3 or H2,3");
    }
    e.y = s;
    return e;
}

ExtrasReport rh_extras_report(const std::string& which, const ParamMap& params, double tol)
{
    if (which != "H1,3" && which != "H2,3") throw std::invalid_argument("rh_extras_report: expected H1,3 or H2,3");
    ParamMap full{{"k", 0.0}, {"p", 0.0}, {"q", 0.0}, {"s", 0.0}};
    for (const auto& [key, v] : params) full[key] = v;
    if (which == "H1,3") full.erase("s");
    const cplx k = full.at("k"), p = full.at("p"), q = full.at("q");
    if (k == cplx(0.0)) throw InadmissibleParams(which + ": k must be nonzero");

    ExtrasReport rep;
    rep.form = which;
    rep.params = full;
    rep.r = hietarinta_assemble(which, full);
    auto record = [&](std::vector<ExtrasCheck>& into, std::string name, cplx claimed, cplx direct) {
        ExtrasCheck c{std::move(name), claimed, direct, std::abs(claimed - direct) / std::max(1.0, std::abs(claimed))};
        rep.worst = std::max(rep.worst, c.error);
        into.push_back(c);
    };

    const cplx g = which == "H1,3" ? k * k : k;
    const InvariantSet inv = quadratic_invariants(rep.r);
    record(rep.invariants, "I1", 2.0 * g, inv.I1);
    record(rep.invariants, "I2_4", -2.0 * g * g, inv.i2(4));
    record(rep.invariants, "I2_5", -2.0 * g * g, inv.i2(5));
    record(rep.invariants, "I2_8", 4.0 * g * g, inv.i2(8));
    record(rep.invariants, "I2_9", 2.0 * g * g, inv.i2(9));
    record(rep.invariants, "I2_10", 2.0 * g * g, inv.i2(10));

    // Power traces pin the spectrum exactly; the numerical eigenvalues only
    // serve the multiplicity count, since a triple root is resolved to about
    // eps^(1/3).
    for (int n = 1; n <= 4; ++n)
        record(rep.invariants, "tr R^" + std::to_string(n), 3.0 * std::pow(g, n) + std::pow(-g, n),
               power(rep.r, n).trace());
    rep.eigenvalues = eigenvalues(rep.r);
    std::vector<std::vector<cplx>> clusters;
    for (const cplx& l : rep.eigenvalues) {
        bool placed = false;
        for (auto& c : clusters)
            if (std::abs(c.front() - l) < 1e-3 * std::abs(g)) {
                c.push_back(l);
                placed = true;
                break;
            }
        if (!placed) clusters.push_back({l});
    }
    std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (const auto& c : clusters) rep.multiplicities.push_back(static_cast<int>(c.size()));
    if (rep.multiplicities != std::vector<int>{3, 1}) rep.worst = std::max(rep.worst, 1.0);

    rep.enhancement_claimed = which == "H1,3" || std::abs(p + q) < tol * std::max(1.0, std::abs(p));
    if (rep.enhancement_claimed) {
        for (int sign : {1, -1}) {
            const EnhancedOperator e = rh_enhancement(which, full, sign);
            const EnhancementCheck chk = verify_enhancement(e, tol);
            rep.worst = std::max(rep.worst, chk.worst());
            rep.enhancements.push_back(chk);
            if (!chk.ok) continue;
            for (int n = -4; n <= 4; ++n) {
                if (n == 0) continue;
                const cplx claimed = n % 2 == 0 ? cplx(4.0) : cplx(2.0 * sign);
                record(rep.link_values, "L(s1^" + std::to_string(n) + "), sign " + (sign > 0 ? "+" : "-"), claimed,
                       link_polynomial(e, BraidWord{2, {{1, n}}}, tol));
            }
        }
    }

    const double claimed_ep =
        which == "H1,3"
            ? std::norm(k) * std::norm(k) * std::norm(p + q) * (std::norm(k) + std::norm(q)) / 9.0
            : std::norm(k * full.at("s") - p * q) / 9.0;
    rep.epower = {"e_P", claimed_ep, entangling_power_quadrature(rep.r), 0.0};
    rep.epower.error = std::abs(rep.epower.claimed - rep.epower.direct) / std::max(1.0, std::abs(rep.epower.claimed));
    rep.worst = std::max(rep.worst, rep.epower.error);

    rep.algebra = which == "H1,3" ? hecke_witness(rep.r, 1.0 / (k * k), 1.0, tol)
                                  : polynomial_identity(rep.r, -1, {k * k * k, -k * k, -k, 1.0}, tol);
    // The cubic identity for H2,3 leaves (p+q)^2 in one corner.
    if (rep.enhancement_claimed) rep.worst = std::max(rep.worst, rep.algebra.worst());
    rep.ok = rep.worst < tol;
    return rep;
}

}  // namespace braidgate
