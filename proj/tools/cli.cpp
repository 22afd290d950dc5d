#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "braidgate/catalog.hpp"
#include "braidgate/enhancement.hpp"
#include "braidgate/entangling_power.hpp"
#include "braidgate/hietarinta.hpp"
#include "braidgate/invariants.hpp"
#include "braidgate/yang_baxter.hpp"

namespace braidgate::cli {

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Formatting

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string short_complex(cplx z)
{
    if (z.imag() == 0.0) return short_num(z.real());
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
    return buf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Matrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const ParamMap& p)
{
    json o = json::object();
    for (const auto& [k, v] : p) o[k] = to_json(v);
    return o;
}

bool is_flat(const json& j)
{
    for (const auto& e : j)
        if (e.is_structured()) return false;
    return true;
}

// Arrays of scalars or of [re, im] pairs stay on one line.
bool is_compact(const json& j)
{
    for (const auto& e : j)
        if (e.is_object() || (e.is_array() && !is_flat(e))) return false;
    return true;
}

// nlohmann prints the shortest round-trip form; reports use a fixed
// 17-significant-digit rendering instead.
void dump(const json& j, std::ostream& os, int depth)
{
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (j.type()) {
    case json::value_t::number_float: {
        const double v = j.get<double>() + 0.0;
        os << (std::isfinite(v) ? g17(v) : "null");
        break;
    }
    case json::value_t::array:
        if (j.empty()) {
            os << "[]";
        } else if (is_compact(j)) {
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ", ";
                dump(j[i], os, depth + 1);
            }
            os << ']';
        } else {
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                os << pad;
                dump(j[i], os, depth + 1);
                os << (i + 1 < j.size() ? ",\n" : "\n");
            }
            os << close << ']';
        }
        break;
    case json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            break;
        }
        os << "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            os << pad << json(it.key()).dump() << ": ";
            dump(it.value(), os, depth + 1);
            os << (i + 1 < j.size() ? ",\n" : "\n");
        }
        os << close << '}';
        break;
    }
    default: os << j.dump();
    }
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void print_table(const Table& t, std::ostream& os)
{
    std::vector<std::size_t> width(t.header.size(), 0);
    auto widen = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
    };
    widen(t.header);
    for (const auto& r : t.rows) widen(r);
    auto line = [&](const std::vector<std::string>& row) {
        std::string s;
        for (std::size_t i = 0; i < row.size(); ++i) {
            s += row[i];
            if (i + 1 < row.size()) s += std::string(width[i] - row[i].size() + 2, ' ');
        }
        os << s << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

// ---------------------------------------------------------------------------
// Options and reports

struct Global {
    bool json = false;
    bool csv = false;
    double tol = kDefaultTol;
    std::uint64_t seed = 1;
    int nodes = 16;
};

struct SpecArgs {
    std::string class_id, params, xtype, matrix, hietarinta;
};

struct Report {
    json inputs = json::object();
    json outputs = json::object();
    Table table;  // text and CSV body
    std::vector<std::string> notes;
    bool pass = true;
};

std::string pass_word(bool ok) { return ok ? "pass" : "FAIL"; }

void add_check(Report& rep, const std::string& name, double residual, double tol)
{
    const bool ok = residual < tol;
    rep.pass = rep.pass && ok;
    rep.outputs["checks"].push_back({{"check", name}, {"residual", residual}, {"pass", ok}});
    rep.table.rows.push_back({name, short_num(residual), pass_word(ok)});
}

// ---------------------------------------------------------------------------
// Operator specs

ParamMap parse_params(const std::string& text)
{
    ParamMap p;
    for (const auto& item : split_top(text, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("parameter '" + item + "' is not of the form name=value");
        std::string name = item.substr(0, eq);
        name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
        p[name] = parse_complex(item.substr(eq + 1));
    }
    return p;
}

struct Operator {
    Matrix r = Matrix(4);
    std::string kind;  // class, xtype, hietarinta, matrix
    const CatalogEntry* entry = nullptr;
    std::string form;
    ParamMap params;
    std::optional<XTypeParams> xtype;
    json echo = json::object();
};

Matrix parse_matrix(const std::string& text)
{
    Matrix m(4);
    std::vector<cplx> values;
    const json j = [&] {
        try {
            return json::parse(text);
        } catch (const json::parse_error&) {
            return json();
        }
    }();
    if (j.is_array() && !j.empty() && j[0].is_array() && j.size() == 4) {
        for (const auto& row : j) {
            if (!row.is_array() || row.size() != 4) throw UsageError("--matrix: expected four rows of four entries");
            for (const auto& e : row) {
                if (e.is_number()) values.emplace_back(e.get<double>(), 0.0);
                else if (e.is_array() && e.size() == 2) values.emplace_back(e[0].get<double>(), e[1].get<double>());
                else if (e.is_string()) values.push_back(parse_complex(e.get<std::string>()));
                else throw UsageError("--matrix: unreadable entry " + e.dump());
            }
        }
    } else {
        for (const auto& s : split_top(text, ',')) values.push_back(parse_complex(s));
    }
    if (values.size() != 16) throw UsageError("--matrix: expected 16 entries, got " + std::to_string(values.size()));
    for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = values[k];
    return m;
}

Operator resolve(const SpecArgs& s, const Global& g)
{
    const int given = !s.class_id.empty() + !s.xtype.empty() + !s.matrix.empty() + !s.hietarinta.empty();
    if (given != 1) throw UsageError("give exactly one of --class, --xtype, --hietarinta, --matrix");
    Operator op;
    std::mt19937_64 rng(g.seed);
    if (!s.class_id.empty()) {
        try {
            op.entry = &catalog_entry(s.class_id);
        } catch (const std::out_of_range&) {
            throw UsageError("unknown catalog id '" + s.class_id + "'");
        }
        op.kind = "class";
        op.params = s.params.empty() ? random_params(*op.entry, rng) : parse_params(s.params);
        op.xtype = catalog_instantiate(*op.entry, op.params);
        op.r = assemble(*op.xtype);
        op.echo["class"] = op.entry->id;
        op.echo["params"] = to_json(op.params);
    } else if (!s.xtype.empty()) {
        const auto parts = split_top(s.xtype, ',');
        if (parts.size() != 8) throw UsageError("--xtype: expected 8 values, got " + std::to_string(parts.size()));
        XTypeParams h;
        for (int k = 1; k <= 8; ++k) h.h(k) = parse_complex(parts[k - 1]);
        op.kind = "xtype";
        op.xtype = h;
        op.r = assemble(h);
        json v = json::array();
        for (const cplx& z : h.v) v.push_back(to_json(z));
        op.echo["xtype"] = v;
    } else if (!s.hietarinta.empty()) {
        try {
            op.form = hietarinta_form(s.hietarinta).name;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        op.kind = "hietarinta";
        op.params = s.params.empty() ? random_hietarinta_params(hietarinta_form(op.form), rng) : parse_params(s.params);
        try {
            op.r = hietarinta_assemble(op.form, op.params);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        op.xtype = extract_xtype(op.r);
        op.echo["hietarinta"] = op.form;
        op.echo["params"] = to_json(op.params);
    } else {
        op.kind = "matrix";
        op.r = parse_matrix(s.matrix);
        op.xtype = extract_xtype(op.r);
        op.echo["matrix"] = to_json(op.r);
    }
    if (op.kind != "class" && op.kind != "hietarinta" && !s.params.empty())
        throw UsageError("--params applies to --class and --hietarinta only");
    return op;
}

void add_spec_options(CLI::App* sub, SpecArgs& s)
{
    sub->add_option("--class", s.class_id, "catalog id, e.g. C3.0");
    sub->add_option("--params", s.params, "name=value list, e.g. h1=1,h4=2+1i (random draw when omitted)");
    sub->add_option("--xtype", s.xtype, "eight comma-separated entries h1..h8");
    sub->add_option("--hietarinta", s.hietarinta, "standard form name, e.g. H1,3");
    sub->add_option("--matrix", s.matrix, "16 comma-separated entries (row-major) or JSON rows");
}

double invariant_scale(const InvariantSet& inv)
{
    double s = std::abs(inv.I1) * std::abs(inv.I1);
    for (const cplx& v : inv.I2) s = std::max(s, std::abs(v));
    return std::max(1.0, s);
}

json invariants_json(const InvariantSet& inv)
{
    json o = json::object();
    o["I1"] = to_json(inv.I1);
    for (int k = 1; k <= 10; ++k) o["I2_" + std::to_string(k)] = to_json(inv.i2(k));
    return o;
}

double closed_form_error(const XTypeParams& h, const InvariantSet& direct)
{
    const InvariantSet closed = xtype_closed_forms(h);
    const double scale = invariant_scale(direct);
    double worst = std::abs(closed.I1 - direct.I1) / scale;
    for (int k = 1; k <= 10; ++k) worst = std::max(worst, std::abs(closed.i2(k) - direct.i2(k)) / scale);
    return worst;
}

// ---------------------------------------------------------------------------
// Commands

Report cmd_catalog(int class_id, bool forms)
{
    Report rep;
    if (forms) {
        rep.table.header = {"form", "params", "nonzero"};
        json list = json::array();
        for (const auto& f : hietarinta_forms()) {
            std::string params, nz;
            for (const auto& p : f.params) params += (params.empty() ? "" : " ") + p;
            for (const auto& p : f.nonzero) nz += (nz.empty() ? "" : " ") + p;
            rep.table.rows.push_back({f.name, params, nz});
            list.push_back({{"name", f.name}, {"params", f.params}, {"nonzero", f.nonzero}});
        }
        rep.outputs["forms"] = list;
        rep.notes.push_back(std::to_string(list.size()) + " forms");
        return rep;
    }
    std::vector<const CatalogEntry*> entries;
    if (class_id > 0) {
        entries = catalog_class(class_id);
        if (entries.empty()) throw UsageError("no class " + std::to_string(class_id));
    } else {
        for (const auto& e : catalog()) entries.push_back(&e);
    }
    rep.table.header = {"id", "class", "variant", "free", "constraints", "enhancements"};
    json list = json::array();
    std::vector<int> classes;
    for (const CatalogEntry* e : entries) {
        std::string free, cons, enh;
        json jc = json::object();
        for (const auto& p : e->free_params) free += (free.empty() ? "" : " ") + p;
        for (const auto& c : e->constraints) {
            cons += (cons.empty() ? "" : "; ") + c.target + "=" + c.value.text();
            jc[c.target] = c.value.text();
        }
        for (const auto* r : recipes_for(e->id)) enh += (enh.empty() ? "" : " ") + r->id;
        rep.table.rows.push_back(
            {e->id, std::to_string(e->class_id), std::to_string(e->variant_id), free, cons, enh});
        json je = {{"id", e->id},           {"class", e->class_id}, {"variant", e->variant_id},
                   {"free", e->free_params}, {"constraints", jc}};
        json refs = json::array();
        for (const auto* r : recipes_for(e->id)) refs.push_back(r->id);
        je["enhancements"] = refs;
        list.push_back(je);
        if (std::find(classes.begin(), classes.end(), e->class_id) == classes.end()) classes.push_back(e->class_id);
    }
    rep.outputs["entries"] = list;
    rep.notes.push_back(std::to_string(classes.size()) + " classes, " + std::to_string(entries.size()) + " variants");
    return rep;
}

Report cmd_verify(const Operator& op, bool enhancements, const Global& g)
{
    Report rep;
    rep.table.header = {"check", "residual", "result"};
    rep.outputs["checks"] = json::array();
    add_check(rep, "ybe", check_ybe(op.r, g.tol).residual, g.tol);
    double inv_res = 0.0;
    try {
        const Matrix ri = invert(op.r);
        inv_res = max_diff(op.r * ri, Matrix::identity(4));
    } catch (const SingularMatrixError&) {
        inv_res = std::numeric_limits<double>::infinity();
    }
    add_check(rep, "invertible", inv_res, g.tol);

    const InvariantSet inv = quadratic_invariants(op.r);
    const double scale = invariant_scale(inv);
    double id_res = 0.0;
    for (const cplx& v : check_identities(inv)) id_res = std::max(id_res, std::abs(v) / scale);
    add_check(rep, "identities", id_res, g.tol);
    double oracle = std::abs(contraction_oracle(op.r, "I1") - inv.I1) / scale;
    for (int k = 1; k <= 10; ++k)
        oracle = std::max(oracle, std::abs(contraction_oracle(op.r, "I2_" + std::to_string(k)) - inv.i2(k)) / scale);
    add_check(rep, "contraction", oracle, g.tol);
    if (op.xtype) add_check(rep, "xtype closed forms", closed_form_error(*op.xtype, inv), g.tol);

    if (enhancements) {
        if (!op.entry) throw UsageError("--enhancements needs a --class operator");
        for (const auto* r : recipes_for(op.entry->id)) {
            for (int sign : {1, -1}) {
                double worst = std::numeric_limits<double>::infinity();
                try {
                    worst = verify_enhancement(instantiate_recipe(*r, op.params, sign), g.tol).worst();
                } catch (const std::exception& e) {
                    rep.notes.push_back(r->id + ": " + e.what());
                }
                add_check(rep, r->id + (sign > 0 ? " (+)" : " (-)"), worst, g.tol);
            }
        }
    }
    return rep;
}

Report cmd_invariants(const Operator& op, const Global& g)
{
    Report rep;
    const InvariantSet inv = quadratic_invariants(op.r);
    rep.outputs["invariants"] = invariants_json(inv);
    rep.table.header = {"name", "value"};
    rep.table.rows.push_back({"I1", short_complex(inv.I1)});
    for (int k = 1; k <= 10; ++k) rep.table.rows.push_back({"I2_" + std::to_string(k), short_complex(inv.i2(k))});

    const double scale = invariant_scale(inv);
    json ids = json::array();
    double id_res = 0.0;
    for (const cplx& v : check_identities(inv)) {
        ids.push_back(to_json(v));
        id_res = std::max(id_res, std::abs(v) / scale);
    }
    rep.outputs["identities"] = ids;
    rep.outputs["identity_residual"] = id_res;
    rep.table.rows.push_back({"identity residual", short_num(id_res)});
    rep.pass = id_res < g.tol;
    if (op.xtype) {
        const double e = closed_form_error(*op.xtype, inv);
        rep.outputs["closed_form_error"] = e;
        rep.table.rows.push_back({"closed-form error", short_num(e)});
        rep.pass = rep.pass && e < g.tol;
    }
    if (op.entry) {
        const EigenReport er = class_eigen_report(*op.entry, op.params, g.tol);
        json checks = json::array();
        for (const auto* group : {&er.checks, &er.relations})
            for (const auto& c : *group) {
                checks.push_back({{"name", c.name},
                                  {"formula", to_json(c.formula)},
                                  {"direct", to_json(c.direct)},
                                  {"error", c.error}});
                rep.table.rows.push_back({c.name, short_complex(c.formula) + " (error " + short_num(c.error) + ")"});
            }
        rep.outputs["eigen_report"] = {{"labels", to_json(er.labels)},
                                       {"checks", checks},
                                       {"independent", er.independent_count},
                                       {"max_error", er.max_error}};
        rep.table.rows.push_back({"independent", std::to_string(er.independent_count)});
        rep.pass = rep.pass && er.ok;
    }
    return rep;
}

std::optional<cplx> claimed_for_word(const BraidWord& w, const std::function<cplx(int)>& two,
                                     const std::function<std::optional<cplx>(int, int)>& three)
{
    const BraidWord c = w.canonical();
    if (c.strands == 2) {
        if (c.letters.empty()) return two(0);
        if (c.letters.size() == 1) return two(c.letters[0].exponent);
    }
    if (c.strands == 3 && c.letters.size() == 2 && c.letters[0].generator == 1 && c.letters[1].generator == 2)
        return three(c.letters[0].exponent, c.letters[1].exponent);
    return std::nullopt;
}

Report cmd_linkpoly(const Operator& op, const std::string& recipe_id, const std::string& word, int sign,
                    int strands, const Global& g)
{
    Report rep;
    EnhancedOperator e;
    std::function<cplx(int)> two = [](int) { return cplx{}; };
    std::function<std::optional<cplx>(int, int)> three = [](int, int) { return std::optional<cplx>{}; };
    bool has_claim = false;
    if (op.entry) {
        if (recipe_id.empty()) throw UsageError("linkpoly on a catalog operator needs --recipe");
        const EnhancementRecipe* r = nullptr;
        try {
            r = &enhancement_recipe(recipe_id);
        } catch (const std::out_of_range&) {
            throw UsageError("unknown recipe '" + recipe_id + "'");
        }
        if (r->entry != op.entry->id)
            throw UsageError("recipe " + r->id + " belongs to " + r->entry + ", not " + op.entry->id);
        e = instantiate_recipe(*r, op.params, sign);
        const ParamMap params = op.params;
        two = [r, params, sign](int k) { return claimed_link_value(*r, params, sign, k); };
        three = [r, params, sign](int a, int b) { return claimed_link_value3(*r, params, sign, a, b); };
        has_claim = true;
        rep.outputs["recipe"] = r->id;
    } else if (op.form == "H1,3" || op.form == "H2,3") {
        if (!recipe_id.empty()) throw UsageError("--recipe applies to catalog operators");
        e = rh_enhancement(op.form, op.params, sign);
        two = [sign](int k) { return k % 2 == 0 ? cplx(4.0) : cplx(2.0 * sign); };
        has_claim = true;
        rep.outputs["recipe"] = op.form;
    } else {
        throw UsageError("linkpoly needs --class with --recipe, or --hietarinta H1,3 / H2,3");
    }
    BraidWord w;
    try {
        w = parse_braid_word(word, strands);
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    const cplx value = link_polynomial(e, w, g.tol);
    rep.outputs["word"] = w.to_string();
    rep.outputs["strands"] = w.strands;
    rep.outputs["writhe"] = writhe(w);
    rep.outputs["sign"] = sign;
    rep.outputs["value"] = to_json(value);
    rep.table.header = {"quantity", "value"};
    rep.table.rows = {{"word", w.to_string()},
                      {"strands", std::to_string(w.strands)},
                      {"writhe", std::to_string(writhe(w))},
                      {"L", short_complex(value)}};
    if (has_claim) {
        if (const auto claim = claimed_for_word(w, two, three)) {
            const double diff = std::abs(*claim - value) / std::max(1.0, std::abs(*claim));
            rep.outputs["claimed"] = to_json(*claim);
            rep.outputs["difference"] = diff;
            rep.table.rows.push_back({"claimed", short_complex(*claim)});
            rep.table.rows.push_back({"difference", short_num(diff)});
            rep.pass = diff < g.tol;
        }
    }
    return rep;
}

json enhancement_json(const EnhancedOperator& e)
{
    json mu = json::array();
    for (const cplx& c : pauli_coefficients(e.mu)) mu.push_back(to_json(c));
    return {{"mu", mu}, {"x", to_json(e.x)}, {"y", to_json(e.y)}};
}

Report cmd_enhance(const Operator& op, int starts, const Global& g)
{
    Report rep;
    SolverOptions opt;
    opt.starts = starts;
    opt.seed = g.seed;
    const auto found = solve_enhancement(op.r, opt);
    rep.table.header = {"#", "mu (I X Y Z)", "x", "y", "residual", "recipe"};
    json list = json::array();
    for (std::size_t n = 0; n < found.size(); ++n) {
        const EnhancedOperator& e = found[n];
        const double res = verify_enhancement(e, g.tol).worst();
        rep.pass = rep.pass && res < g.tol;
        std::string match;
        if (op.entry) {
            for (const auto* r : recipes_for(op.entry->id)) {
                for (int sign : {1, -1}) {
                    try {
                        if (max_diff(instantiate_recipe(*r, op.params, sign).R, op.r) > g.tol) continue;
                        if (enhancement_distance(instantiate_recipe(*r, op.params, sign), e) < 1e-6) match = r->id;
                    } catch (const std::exception&) {
                    }
                }
                if (!match.empty()) break;
            }
        }
        std::string mu;
        for (const cplx& c : pauli_coefficients(e.mu)) mu += (mu.empty() ? "" : ", ") + short_complex(c);
        rep.table.rows.push_back(
            {std::to_string(n + 1), mu, short_complex(e.x), short_complex(e.y), short_num(res), match});
        json je = enhancement_json(e);
        je["residual"] = res;
        je["recipe"] = match.empty() ? json() : json(match);
        list.push_back(je);
    }
    rep.outputs["starts"] = starts;
    rep.outputs["solutions"] = list;
    rep.notes.push_back(std::to_string(found.size()) + " enhancement(s), one per (x, y) sign pair");
    return rep;
}

Report cmd_epower(const Operator& op, const std::string& method, const Global& g)
{
    Report rep;
    const bool want_closed = method == "closed" || method == "both" || (method == "auto" && op.xtype);
    const bool want_quad = method != "closed";
    if (want_closed && !op.xtype) throw UsageError("the closed form needs an X-type operator");
    rep.table.header = {"quantity", "value"};
    std::optional<double> closed, average, quad;
    if (want_closed) {
        closed = entangling_power_closed(*op.xtype);
        average = entangling_power_average(*op.xtype);
        rep.outputs["closed"] = *closed;
        rep.outputs["closed_averaged"] = *average;
        rep.table.rows.push_back({"closed", short_num(*closed)});
        rep.table.rows.push_back({"closed (averaged)", short_num(*average)});
    }
    if (want_quad) {
        quad = entangling_power_quadrature(op.r, g.nodes);
        rep.outputs["quadrature"] = *quad;
        rep.outputs["nodes"] = g.nodes;
        rep.table.rows.push_back({"quadrature", short_num(*quad)});
    }
    if (closed && quad) {
        const double d = std::abs(*closed - *quad);
        const double da = std::abs(*average - *quad);
        rep.outputs["difference"] = d;
        rep.outputs["difference_averaged"] = da;
        rep.table.rows.push_back({"|closed - quadrature|", short_num(d)});
        rep.table.rows.push_back({"|averaged - quadrature|", short_num(da)});
        rep.pass = da < g.tol;
    }
    if (op.entry) {
        const ClassEpower ce = class_epower(*op.entry, op.params, g.tol);
        rep.outputs["class_formula"] = {{"id", ce.formula_id},
                                        {"formula", ce.formula},
                                        {"value", ce.value},
                                        {"eigen_expressible", ce.eigen_expressible},
                                        {"eigen_value", ce.eigen_value},
                                        {"ok", ce.ok}};
        rep.table.rows.push_back({"class formula " + ce.formula_id, short_num(ce.value)});
        rep.pass = rep.pass && ce.ok;
    }
    if ((op.form == "H1,3" || op.form == "H2,3") && quad) {
        const ExtrasCheck& c = rh_extras_report(op.form, op.params, g.tol).epower;
        rep.outputs["form_formula"] = {{"value", c.claimed.real()}, {"error", c.error}};
        rep.table.rows.push_back({"form formula", short_num(c.claimed.real())});
        rep.pass = rep.pass && c.error < g.tol;
    }
    return rep;
}

Report cmd_classify(const Operator& op, const Global& g)
{
    if (!op.entry)
        throw UsageError("unclassified: classification follows stored recipes, so it needs a --class operator");
    Report rep;
    const ClassifyResult res = classify(op.entry->id, op.params, g.tol);
    rep.table.header = {"recipe", "from", "steps", "to", "residual", "branches"};
    json chain = json::array();
    for (const auto& link : res.chain) {
        const EquivalenceRecipe& r = equivalence_recipe(link.recipe_id);
        std::string steps;
        json js = json::array();
        for (const auto& s : r.steps) {
            std::string label = s.label();
            json step = {{"step", label}};
            if (s.kind == RecipeStep::Kind::Conjugate) {
                label += "(kappa=" + s.kappa.text() + ")";
                step["kappa"] = s.kappa.text();
                step["q"] = {s.q[0].text(), s.q[1].text(), s.q[2].text(), s.q[3].text()};
            }
            steps += (steps.empty() ? "" : ", ") + label;
            js.push_back(step);
        }
        std::string branches;
        for (const auto& b : link.negated_branches) branches += (branches.empty() ? "-" : ", -") + b;
        rep.table.rows.push_back({r.id, r.lhs.name, steps, r.rhs.name, short_num(link.residual), branches});
        chain.push_back({{"recipe", r.id},
                         {"lhs", r.lhs.name},
                         {"steps", js},
                         {"rhs", r.rhs.name},
                         {"residual", link.residual},
                         {"negated_branches", link.negated_branches}});
    }
    rep.outputs["entry"] = res.entry_id;
    rep.outputs["family"] = res.family.empty() ? json() : json(res.family);
    rep.outputs["chain"] = chain;
    rep.outputs["residual"] = res.residual;
    rep.notes.push_back(res.entry_id + " -> " + (res.family.empty() ? "unclassified" : res.family));
    rep.pass = res.ok;
    return rep;
}

Report cmd_orbit(const Operator& op)
{
    if (!op.xtype) throw UsageError("orbit needs an X-type operator");
    Report rep;
    const OrbitReport orb = lie_orbit_rank(*op.xtype);
    rep.table.header = {"generator", "keeps X-type"};
    json gens = json::array();
    for (const auto& gen : orb.generators) {
        rep.table.rows.push_back({gen.name, gen.preserves_xtype ? "yes" : "no"});
        gens.push_back({{"name", gen.name}, {"preserves_xtype", gen.preserves_xtype}});
    }
    rep.outputs["rank"] = orb.rank;
    rep.outputs["singular_values"] = orb.singular_values;
    rep.outputs["generators"] = gens;
    rep.notes.push_back("orbit rank " + std::to_string(orb.rank));
    return rep;
}

Report cmd_report_all(const Global& g)
{
    Report rep;
    std::mt19937_64 rng(g.seed);
    rep.table.header = {"id", "ybe", "family", "recipe residual", "enhancements", "e_P formula", "eigen"};
    json entries = json::array();
    for (const auto& e : catalog()) {
        const ParamMap p = random_params(e, rng);
        const Matrix r = assemble(catalog_instantiate(e, p));
        const double ybe = check_ybe(r, g.tol).residual;
        const ClassifyResult cls = classify(e.id, p, g.tol);
        double enh = 0.0;
        json enh_ids = json::array();
        for (const auto* rec : recipes_for(e.id)) {
            const ParamMap rp = random_recipe_params(*rec, rng);
            for (int sign : {1, -1})
                enh = std::max(enh, verify_enhancement(instantiate_recipe(*rec, rp, sign), g.tol).worst());
            enh_ids.push_back(rec->id);
        }
        const ClassEpower ce = class_epower(e, p, g.tol);
        const EigenReport er = class_eigen_report(e, p, g.tol);
        const bool ok = ybe < g.tol && cls.ok && enh < g.tol && ce.ok && er.ok;
        rep.pass = rep.pass && ok;
        rep.table.rows.push_back({e.id, short_num(ybe), cls.family, short_num(cls.residual), short_num(enh),
                                  ce.formula_id + (ce.ok ? " ok" : " FAIL"), short_num(er.max_error)});
        entries.push_back({{"id", e.id},
                           {"params", to_json(p)},
                           {"ybe", ybe},
                           {"family", cls.family},
                           {"recipe_residual", cls.residual},
                           {"enhancements", enh_ids},
                           {"enhancement_residual", enh},
                           {"epower", ce.value},
                           {"epower_formula", ce.formula_id},
                           {"eigen_error", er.max_error},
                           {"pass", ok}});
    }
    json forms = json::array();
    for (const auto& f : hietarinta_forms()) {
        const ParamMap p = random_hietarinta_params(f, rng);
        const double ybe = check_ybe(hietarinta_assemble(f.name, p), g.tol).residual;
        rep.pass = rep.pass && ybe < g.tol;
        rep.table.rows.push_back({f.name, short_num(ybe), f.name, "", "", "", ""});
        forms.push_back({{"name", f.name}, {"params", to_json(p)}, {"ybe", ybe}});
    }
    rep.outputs["entries"] = entries;
    rep.outputs["forms"] = forms;
    return rep;
}

// ---------------------------------------------------------------------------

void emit(const Report& rep, const std::string& command, const Global& g, std::ostream& out)
{
    if (g.json) {
        json doc = json::object();
        doc["command"] = command;
        doc["inputs"] = rep.inputs;
        doc["tolerance"] = g.tol;
        doc["seed"] = g.seed;
        doc["outputs"] = rep.outputs;
        doc["notes"] = rep.notes;
        doc["pass"] = rep.pass;
        dump(doc, out, 0);
        out << '\n';
        return;
    }
    if (g.csv) {
        auto line = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
            out << '\n';
        };
        line(rep.table.header);
        for (const auto& r : rep.table.rows) line(r);
        return;
    }
    for (const auto& n : rep.notes) out << n << '\n';
    if (!rep.table.header.empty()) print_table(rep.table, out);
    out << "result: " << (rep.pass ? "PASS" : "FAIL") << '\n';
}

double default_tol()
{
    if (const char* env = std::getenv("BRAIDGATE_TOL")) {
        try {
            std::size_t used = 0;
            const double v = std::stod(env, &used);
            if (used == std::string(env).size() && v > 0.0) return v;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("BRAIDGATE_TOL is not a positive number: ") + env);
    }
    return kDefaultTol;
}

}  // namespace

std::vector<std::string> split_top(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty() || !parts.empty()) parts.push_back(cur);
    return parts;
}

cplx parse_complex(const std::string& text)
{
    std::string t = text;
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t") + 1);
    if (t.empty()) throw UsageError("empty complex literal");
    if (t.front() == '[') {
        if (t.back() != ']') throw UsageError("unterminated literal '" + text + "'");
        const auto parts = split_top(t.substr(1, t.size() - 2), ',');
        if (parts.size() != 2) throw UsageError("expected [re, im], got '" + text + "'");
        try {
            return {std::stod(parts[0]), std::stod(parts[1])};
        } catch (const std::exception&) {
            throw UsageError("unreadable literal '" + text + "'");
        }
    }
    try {
        return eval_expr(t);
    } catch (const std::exception&) {
        throw UsageError("unreadable literal '" + text + "'");
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"braidgate: two-qubit braid operators, invariants, link values and entangling power"};
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    std::optional<double> tol_flag;
    app.add_flag("--json", g.json, "print the report as JSON");
    app.add_flag("--csv", g.csv, "print the report table as CSV");
    app.add_option("--tol", tol_flag, "pass/fail tolerance (default 1e-9, or BRAIDGATE_TOL)");
    app.add_option("--seed", g.seed, "seed for random draws");
    app.add_option("--nodes", g.nodes, "quadrature nodes per axis")->check(CLI::Range(2, 200));

    SpecArgs spec;
    int class_id = 0;
    bool forms = false, enhancements = false;
    std::string recipe, word, method = "auto", out_path;
    int sign = 1, strands = 0, starts = 200;

    auto* c_catalog = app.add_subcommand("catalog", "list catalog entries or standard forms");
    c_catalog->add_option("--class", class_id, "restrict to one class")->check(CLI::Range(1, 12));
    c_catalog->add_flag("--hietarinta", forms, "list the standard forms instead");

    auto* c_verify = app.add_subcommand("verify", "YBE, invertibility, invariant identities, enhancements");
    add_spec_options(c_verify, spec);
    c_verify->add_flag("--enhancements", enhancements, "also check the cataloged enhancements");

    auto* c_inv = app.add_subcommand("invariants", "local invariants and their closed forms");
    add_spec_options(c_inv, spec);

    auto* c_link = app.add_subcommand("linkpoly", "link value of a braid closure");
    add_spec_options(c_link, spec);
    c_link->add_option("--recipe", recipe, "enhancement recipe id, e.g. E1.1");
    c_link->add_option("--word", word, "braid word, e.g. \"s1^2 s2^-1\"")->required();
    c_link->add_option("--sign", sign, "+1 or -1: which (x, y) pair")->check(CLI::IsMember({1, -1}));
    c_link->add_option("--strands", strands, "strand count (default: from the word)");

    auto* c_enh = app.add_subcommand("enhance", "search for enhancements numerically");
    add_spec_options(c_enh, spec);
    c_enh->add_option("--starts", starts, "random starts per gauge")->check(CLI::Range(1, 100000));

    auto* c_ep = app.add_subcommand("epower", "entangling power");
    add_spec_options(c_ep, spec);
    c_ep->add_option("--method", method, "auto, closed, quadrature or both")
        ->check(CLI::IsMember({"auto", "closed", "quadrature", "both"}));

    auto* c_cls = app.add_subcommand("classify", "map a catalog entry to its standard form");
    add_spec_options(c_cls, spec);

    auto* c_orbit = app.add_subcommand("orbit", "rank of the local Lie-algebra orbit");
    add_spec_options(c_orbit, spec);

    auto* c_all = app.add_subcommand("report-all", "run every catalog entry and form once");
    c_all->add_option("--out", out_path, "write the JSON report to this file");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    int code = kPass;
    try {
        app.parse(argv);
        g.tol = tol_flag ? *tol_flag : default_tol();
        if (!(g.tol > 0.0)) throw UsageError("--tol must be positive");
        if (g.json && g.csv) throw UsageError("--json and --csv are exclusive");

        std::string command;
        for (const auto& a : args) command += (command.empty() ? "" : " ") + a;
        Report rep;
        std::optional<Operator> op;
        auto need_op = [&]() -> const Operator& {
            op = resolve(spec, g);
            return *op;
        };
        if (c_catalog->parsed()) {
            rep = cmd_catalog(class_id, forms);
        } else if (c_verify->parsed()) {
            rep = cmd_verify(need_op(), enhancements, g);
        } else if (c_inv->parsed()) {
            rep = cmd_invariants(need_op(), g);
        } else if (c_link->parsed()) {
            rep = cmd_linkpoly(need_op(), recipe, word, sign, strands, g);
        } else if (c_enh->parsed()) {
            rep = cmd_enhance(need_op(), starts, g);
        } else if (c_ep->parsed()) {
            rep = cmd_epower(need_op(), method, g);
        } else if (c_cls->parsed()) {
            rep = cmd_classify(need_op(), g);
        } else if (c_orbit->parsed()) {
            rep = cmd_orbit(need_op());
        } else if (c_all->parsed()) {
            rep = cmd_report_all(g);
        }
        if (op) {
            rep.inputs = op->echo;
            rep.inputs["operator"] = to_json(op->r);
        }
        if (c_all->parsed() && !out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw UsageError("cannot write " + out_path);
            Global as_json = g;
            as_json.json = true;
            as_json.csv = false;
            emit(rep, command, as_json, f);
            out << "wrote " << out_path << '\n' << "result: " << (rep.pass ? "PASS" : "FAIL") << '\n';
        } else {
            emit(rep, command, g, out);
        }
        code = rep.pass ? kPass : kCheckFailed;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InadmissibleParams& e) {
        err << "error: inadmissible parameters: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "check failed: " << e.what() << '\n';
        code = kCheckFailed;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << "wall time: " << std::fixed << std::setprecision(3) << secs << " s\n";
    return code;
}

}  // namespace braidgate::cli
