#include "braidgate/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace braidgate {

namespace {

struct Row {
    const char* id;
    std::vector<std::pair<const char*, const char*>> constraints;
    std::vector<const char*> nonzero;
    std::vector<std::pair<const char*, const char*>> labels;
    std::vector<const char*> enhancements;
};

const char* kL6p = "(h1+h8+sqrt(2*(h1^2+h8^2)))/2";
const char* kL6m = "(h1+h8-sqrt(2*(h1^2+h8^2)))/2";

std::vector<Row> rows()
{
    using L = std::vector<std::pair<const char*, const char*>>;
    const L l3a{{"lp", "h1"}, {"lm", "h8"}};
    const L l3b{{"lp", "h8"}, {"lm", "h1"}};
    const L l6{{"lp", kL6p}, {"lm", kL6m}};
    const L l7{{"lp", "h1+h3"}, {"lm", "h1-h3"}};
    const L l8{{"lp", "(1+i)*h1"}, {"lm", "(1-i)*h1"}};
    const L l9{{"l", "h1"}};
    const L l11a{{"l", "h8"}};
    const L l11b{{"l", "h1"}};
    return {
        {"1.0",
         {{"h2", "0"}, {"h3", "0"}, {"h6", "0"}, {"h7", "0"}},
         {"h1", "h4", "h5", "h8"},
         {{"l1p", "h1"}, {"l1m", "h8"}, {"l2sq", "h4*h5"}},
         {"E1.1", "E1.2", "E1.3", "E1.4"}},
        {"2.0",
         {{"h1", "0"}, {"h4", "0"}, {"h5", "0"}, {"h8", "0"}, {"h6", "h3"}},
         {"h2", "h3", "h7"},
         {{"l1sq", "h2*h7"}, {"l2", "h3"}},
         {"E2.1"}},
        {"3.0", {{"h2", "0"}, {"h3", "0"}, {"h4", "-h1"}, {"h5", "h8"}, {"h6", "h1+h8"}}, {"h1", "h8"}, l3a,
         {"E3.1", "E3.2", "E3.3"}},
        {"3.1", {{"h2", "0"}, {"h3", "0"}, {"h4", "h1"}, {"h5", "-h8"}, {"h6", "h1+h8"}}, {"h1", "h8"}, l3a, {}},
        {"3.2", {{"h3", "0"}, {"h7", "0"}, {"h4", "-h8"}, {"h5", "h1"}, {"h6", "h1+h8"}}, {"h1", "h8"}, l3a, {}},
        {"3.3", {{"h3", "0"}, {"h7", "0"}, {"h4", "h8"}, {"h5", "-h1"}, {"h6", "h1+h8"}}, {"h1", "h8"}, l3a, {}},
        {"3.4", {{"h6", "0"}, {"h7", "0"}, {"h4", "-h1"}, {"h5", "h8"}, {"h3", "h1+h8"}}, {"h1", "h8"}, l3b, {}},
        {"3.5", {{"h6", "0"}, {"h7", "0"}, {"h4", "h1"}, {"h5", "-h8"}, {"h3", "h1+h8"}}, {"h1", "h8"}, l3b, {}},
        {"3.6", {{"h2", "0"}, {"h6", "0"}, {"h4", "-h8"}, {"h5", "h1"}, {"h3", "h1+h8"}}, {"h1", "h8"}, l3b, {}},
        {"3.7", {{"h2", "0"}, {"h6", "0"}, {"h4", "h8"}, {"h5", "-h1"}, {"h3", "h1+h8"}}, {"h1", "h8"}, l3b, {}},
        {"4.0",
         {{"h2", "0"}, {"h3", "0"}, {"h7", "0"}, {"h5", "h1/h4*(h1-h6)"}, {"h8", "h1"}},
         {"h1", "h4", "h1-h6"},
         {{"l1", "h1"}, {"l2", "-h1+h6"}},
         {"E4.1", "E4.2", "E4.3", "E4.4", "E4.5"}},
        {"4.1",
         {{"h2", "0"}, {"h6", "0"}, {"h7", "0"}, {"h5", "h1/h4*(h1-h3)"}, {"h8", "h1"}},
         {"h1", "h4", "h1-h3"},
         {{"l1", "h1"}, {"l2", "-h1+h3"}},
         {}},
        {"5.0",
         {{"h2", "0"}, {"h3", "0"}, {"h7", "0"}, {"h5", "h1/h4*(h1-h6)"}, {"h8", "-h1+h6"}},
         {"h1", "h4", "h1-h6"},
         {{"lp", "h1"}, {"lm", "-h1+h6"}},
         {"E5.1", "E5.2", "E5.3"}},
        {"5.1",
         {{"h2", "0"}, {"h6", "0"}, {"h7", "0"}, {"h5", "h1/h4*(h1-h3)"}, {"h8", "-h1+h3"}},
         {"h1", "h4", "h1-h3"},
         {{"lp", "-h1+h3"}, {"lm", "h1"}},
         {}},
        {"6.0",
         {{"h3", "(h1+h8)/2"},
          {"h6", "(h1+h8)/2"},
          {"h4", "-sqrt((h1^2+h8^2)/2)"},
          {"h5", "-sqrt((h1^2+h8^2)/2)"},
          {"h7", "(h1+h8)^2/(4*h2)"}},
         {"h2", "h1+h8", "h1-h8", kL6p, kL6m},
         l6,
         {"E6.1", "E6.2", "E6.3", "E6.4", "E6.5"}},
        {"6.1",
         {{"h3", "(h1+h8)/2"},
          {"h6", "(h1+h8)/2"},
          {"h4", "sqrt((h1^2+h8^2)/2)"},
          {"h5", "sqrt((h1^2+h8^2)/2)"},
          {"h7", "(h1+h8)^2/(4*h2)"}},
         {"h2", "h1+h8", "h1-h8", kL6p, kL6m},
         l6,
         {}},
        {"7.0",
         {{"h4", "-h1"}, {"h5", "-h1"}, {"h8", "h1"}, {"h6", "h3"}, {"h7", "h3^2/h2"}},
         {"h2", "h3", "h1+h3", "h1-h3"},
         l7,
         {"E7.1"}},
        {"7.1",
         {{"h4", "h1"}, {"h5", "h1"}, {"h8", "h1"}, {"h6", "h3"}, {"h7", "h3^2/h2"}},
         {"h2", "h3", "h1+h3", "h1-h3"},
         l7,
         {}},
        {"8.0",
         {{"h3", "h1"}, {"h5", "h1"}, {"h6", "h1"}, {"h8", "h1"}, {"h4", "-h1"}, {"h7", "-h1^2/h2"}},
         {"h1", "h2"},
         l8,
         {"E8.1"}},
        {"8.1",
         {{"h3", "h1"}, {"h4", "h1"}, {"h6", "h1"}, {"h8", "h1"}, {"h5", "-h1"}, {"h7", "-h1^2/h2"}},
         {"h1", "h2"},
         l8,
         {}},
        {"9.0", {{"h2", "0"}, {"h3", "0"}, {"h6", "0"}, {"h8", "h1"}, {"h4", "-h1"}, {"h5", "-h1"}}, {"h1"}, l9, {"E9.1"}},
        {"9.1", {{"h3", "0"}, {"h6", "0"}, {"h7", "0"}, {"h8", "h1"}, {"h4", "-h1"}, {"h5", "-h1"}}, {"h1"}, l9, {}},
        {"9.2", {{"h2", "0"}, {"h3", "0"}, {"h6", "0"}, {"h4", "h1"}, {"h5", "h1"}, {"h8", "h1"}}, {"h1"}, l9, {}},
        {"9.3", {{"h3", "0"}, {"h6", "0"}, {"h7", "0"}, {"h4", "h1"}, {"h5", "h1"}, {"h8", "h1"}}, {"h1"}, l9, {}},
        {"10.0",
         {{"h2", "0"}, {"h3", "0"}, {"h6", "0"}, {"h4", "-h1"}, {"h5", "-h1"}, {"h8", "-h1"}},
         {"h1"},
         l9,
         {"E10.1", "E10.2", "E10.3"}},
        {"10.1", {{"h3", "0"}, {"h6", "0"}, {"h7", "0"}, {"h4", "-h1"}, {"h5", "-h1"}, {"h8", "-h1"}}, {"h1"}, l9, {}},
        {"10.2", {{"h2", "0"}, {"h3", "0"}, {"h6", "0"}, {"h4", "h1"}, {"h5", "h1"}, {"h8", "-h1"}}, {"h1"}, l9, {}},
        {"10.3", {{"h3", "0"}, {"h6", "0"}, {"h7", "0"}, {"h4", "h1"}, {"h5", "h1"}, {"h8", "-h1"}}, {"h1"}, l9, {}},
        {"11.0",
         {{"h2", "0"}, {"h6", "0"}, {"h1", "h8"}, {"h5", "h8"}, {"h4", "-h8"}, {"h3", "2*h8"}},
         {"h8"},
         l11a,
         {"E11.1"}},
        {"11.1", {{"h6", "0"}, {"h7", "0"}, {"h1", "h8"}, {"h5", "h8"}, {"h4", "-h8"}, {"h3", "2*h8"}}, {"h8"}, l11a, {}},
        {"11.2", {{"h2", "0"}, {"h6", "0"}, {"h1", "h8"}, {"h4", "h8"}, {"h5", "-h8"}, {"h3", "2*h8"}}, {"h8"}, l11a, {}},
        {"11.3", {{"h6", "0"}, {"h7", "0"}, {"h1", "h8"}, {"h4", "h8"}, {"h5", "-h8"}, {"h3", "2*h8"}}, {"h8"}, l11a, {}},
        {"11.4", {{"h2", "0"}, {"h3", "0"}, {"h5", "h1"}, {"h8", "h1"}, {"h4", "-h1"}, {"h6", "2*h1"}}, {"h1"}, l11b, {}},
        {"11.5", {{"h3", "0"}, {"h7", "0"}, {"h5", "h1"}, {"h8", "h1"}, {"h4", "-h1"}, {"h6", "2*h1"}}, {"h1"}, l11b, {}},
        {"11.6", {{"h2", "0"}, {"h3", "0"}, {"h4", "h1"}, {"h8", "h1"}, {"h5", "-h1"}, {"h6", "2*h1"}}, {"h1"}, l11b, {}},
        {"11.7", {{"h3", "0"}, {"h7", "0"}, {"h4", "h1"}, {"h8", "h1"}, {"h5", "-h1"}, {"h6", "2*h1"}}, {"h1"}, l11b, {}},
        {"12.0",
         {{"h4", "0"}, {"h5", "0"}, {"h3", "(1-i)/2*h1"}, {"h6", "(1-i)/2*h1"}, {"h8", "-i*h1"}, {"h7", "-i/2*h1^2/h2"}},
         {"h1", "h2"},
         {{"l", "(1-i)/2*h1"}},
         {"E12.1", "E12.2", "E12.3", "E12.4", "E12.5"}},
        {"12.1",
         {{"h4", "0"}, {"h5", "0"}, {"h3", "(1+i)/2*h1"}, {"h6", "(1+i)/2*h1"}, {"h8", "i*h1"}, {"h7", "i/2*h1^2/h2"}},
         {"h1", "h2"},
         {{"l", "(1+i)/2*h1"}},
         {}},
    };
}

std::vector<CatalogEntry> build()
{
    std::vector<CatalogEntry> out;
    for (const Row& row : rows()) {
        CatalogEntry e;
        e.id = std::string("C") + row.id;
        const std::string s(row.id);
        const auto dot = s.find('.');
        e.class_id = std::stoi(s.substr(0, dot));
        e.variant_id = std::stoi(s.substr(dot + 1));
        std::vector<bool> constrained(9, false);
        for (const auto& [target, value] : row.constraints) {
            e.constraints.push_back({target, Expr(value)});
            constrained[std::stoi(std::string(target).substr(1))] = true;
        }
        for (int k = 1; k <= 8; ++k)
            if (!constrained[k]) e.free_params.push_back("h" + std::to_string(k));
        for (const char* nz : row.nonzero) e.nonzero.emplace_back(nz);
        for (const auto& [name, value] : row.labels) e.eigen_labels.push_back({name, Expr(value)});
        for (const char* ref : row.enhancements) e.enhancement_refs.emplace_back(ref);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& id)
{
    const std::string key = (!id.empty() && (id[0] == 'C' || id[0] == 'c')) ? "C" + id.substr(1) : "C" + id;
    for (const auto& e : catalog())
        if (e.id == key) return e;
    throw std::out_of_range("unknown catalog id '" + id + "'");
}

std::vector<const CatalogEntry*> catalog_class(int class_id)
{
    std::vector<const CatalogEntry*> out;
    for (const auto& e : catalog())
        if (e.class_id == class_id) out.push_back(&e);
    return out;
}

ParamMap to_param_map(const XTypeParams& h)
{
    ParamMap m;
    for (int k = 1; k <= 8; ++k) m["h" + std::to_string(k)] = h.h(k);
    return m;
}

XTypeParams catalog_instantiate(const CatalogEntry& e, const ParamMap& params)
{
    ParamMap free;
    for (const auto& [name, value] : params) {
        if (std::find(e.free_params.begin(), e.free_params.end(), name) == e.free_params.end())
            throw std::invalid_argument(e.id + ": '" + name + "' is not a free parameter");
        free[name] = value;
    }
    for (const auto& name : e.free_params)
        if (!free.count(name)) throw InadmissibleParams(e.id + ": missing free parameter " + name);

    ParamMap full = free;
    for (const auto& c : e.constraints) full[c.target] = c.value.eval(free);
    for (const auto& nz : e.nonzero)
        if (nz.eval(full) == cplx(0.0, 0.0)) throw InadmissibleParams(e.id + ": requires " + nz.text() + " != 0");

    XTypeParams h;
    for (int k = 1; k <= 8; ++k) h.h(k) = full.at("h" + std::to_string(k));
    try {
        (void)invert_xtype(h);
    } catch (const SingularMatrixError&) {
        throw InadmissibleParams(e.id + ": parameters give a singular operator");
    }
    return h;
}

constexpr double kDrawMargin = 0.2;

cplx random_scalar(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> mod(0.5, 1.5);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    return std::polar(mod(rng), phase(rng));
}

ParamMap random_params(const CatalogEntry& e, std::mt19937_64& rng)
{
    for (int attempt = 0; attempt < 100; ++attempt) {
        ParamMap p;
        for (const auto& name : e.free_params) p[name] = random_scalar(rng);
        try {
            const XTypeParams h = catalog_instantiate(e, p);
            ParamMap full = to_param_map(h);
            bool clear = true;
            for (const auto& nz : e.nonzero) clear = clear && std::abs(nz.eval(full)) >= kDrawMargin;
            const XTypeEigenvalues ev = eigenvalues_xtype(h);
            for (const cplx l : {ev.l1_plus, ev.l1_minus, ev.l2_plus, ev.l2_minus})
                clear = clear && std::abs(l) >= kDrawMargin;
            if (clear) return p;
        } catch (const InadmissibleParams&) {
        }
    }
    throw std::runtime_error(e.id + ": could not draw admissible parameters");
}

ParamMap eigen_labels(const CatalogEntry& e, const XTypeParams& h)
{
    const ParamMap full = to_param_map(h);
    ParamMap out;
    for (const auto& l : e.eigen_labels) out[l.name] = l.value.eval(full);
    return out;
}

}  // namespace braidgate
