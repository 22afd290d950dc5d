// Acceptance run: one PASS/FAIL line per criterion.
//
//   braidgate_acceptance [--expect-fail 3,8,9] [--seed N]
//
// Exit status is 0 when the set of failing criteria equals the expected set
// (empty by default), 1 otherwise.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "braidgate/catalog.hpp"
#include "braidgate/enhancement.hpp"
#include "braidgate/entangling_power.hpp"
#include "braidgate/hietarinta.hpp"
#include "braidgate/invariants.hpp"
#include "braidgate/yang_baxter.hpp"
#include "oracles.hpp"

using namespace braidgate;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

XTypeParams random_xtype(std::mt19937_64& rng)
{
    XTypeParams h;
    for (auto& v : h.v) v = random_scalar(rng);
    return h;
}

// 1
Outcome ybe_validity(std::mt19937_64& rng)
{
    double worst = 0.0;
    int checks = 0;
    for (const auto& e : catalog())
        for (int t = 0; t < 100; ++t, ++checks)
            worst = std::max(worst, check_ybe(assemble(catalog_instantiate(e, random_params(e, rng)))).residual);
    for (const auto& f : hietarinta_forms())
        for (int t = 0; t < 100; ++t, ++checks)
            worst = std::max(worst, check_ybe(hietarinta_assemble(f.name, random_hietarinta_params(f, rng))).residual);
    return {worst < 1e-9, std::to_string(checks) + " checks, worst residual " + fmt(worst)};
}

// 2
Outcome identity_suite(std::mt19937_64& rng)
{
    double ident = 0.0, oracle_gap = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto m = oracle::random_dense(4, rng);
        const Matrix r = oracle::from_eigen(m);
        const InvariantSet inv = quadratic_invariants(r);
        for (cplx d : check_identities(inv)) ident = std::max(ident, std::abs(d));
        const auto ref = oracle::invariants(m);
        for (int k = 1; k <= 10; ++k) {
            const cplx lit = contraction_oracle(r, "I2_" + std::to_string(k));
            oracle_gap = std::max(oracle_gap, rel(inv.i2(k), lit));
            oracle_gap = std::max(oracle_gap, rel(inv.i2(k), ref[static_cast<std::size_t>(k)]));
        }
    }
    return {ident < 1e-9 && oracle_gap < 1e-9,
            "identities " + fmt(ident) + ", contraction vs matrix forms " + fmt(oracle_gap)};
}

// 3
Outcome local_invariance(std::mt19937_64& rng)
{
    std::array<double, 11> worst{};
    double sum_gap = 0.0, same_factor = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto m = oracle::random_dense(4, rng);
        const auto a = quadratic_invariants(oracle::from_eigen(m));
        const auto q = oracle::kron(oracle::random_sl2(rng), oracle::random_sl2(rng));
        const auto b = quadratic_invariants(oracle::from_eigen(q * m * q.inverse()));
        worst[0] = std::max(worst[0], rel(b.I1, a.I1));
        for (int k = 1; k <= 10; ++k)
            worst[static_cast<std::size_t>(k)] = std::max(worst[static_cast<std::size_t>(k)], rel(b.i2(k), a.i2(k)));
        sum_gap = std::max(sum_gap, rel(b.i2(9) + b.i2(10), a.i2(9) + a.i2(10)));

        const auto g = oracle::random_sl2(rng);
        const auto qq = oracle::kron(g, g);
        const auto c = quadratic_invariants(oracle::from_eigen(qq * m * qq.inverse()));
        for (int k = 9; k <= 10; ++k) same_factor = std::max(same_factor, rel(c.i2(k), a.i2(k)));
    }
    std::ostringstream os;
    bool pass = true;
    double first8 = worst[0];
    for (std::size_t k = 1; k <= 8; ++k) first8 = std::max(first8, worst[k]);
    os << "I1, I2_1..I2_8 " << fmt(first8);
    for (std::size_t k = 0; k <= 10; ++k) pass = pass && worst[k] < 1e-8;
    if (!pass) {
        os << "; I2_9 " << fmt(worst[9]) << ", I2_10 " << fmt(worst[10])
           << " (only I2_9 + I2_10 = I1^2 is kept when Q1 != Q2: " << fmt(sum_gap)
           << "; with Q1 = Q2 both are kept: " << fmt(same_factor) << ")";
    }
    return {pass, os.str()};
}

// 4
Outcome class_eigen_formulas(std::mt19937_64& rng)
{
    double worst = 0.0;
    int bad = 0;
    for (const auto& e : catalog())
        for (int t = 0; t < 50; ++t) {
            const EigenReport rep = class_eigen_report(e, random_params(e, rng));
            worst = std::max(worst, rep.max_error);
            bad += !rep.ok;
        }
    return {bad == 0 && worst < 1e-9, "38 entries x 50 draws, worst " + fmt(worst) + ", failing reports " +
                                          std::to_string(bad)};
}

// 5
Outcome enhancement_catalog(std::mt19937_64& rng)
{
    double worst = 0.0;
    for (const auto& rec : enhancement_recipes())
        for (int t = 0; t < 20; ++t) {
            const ParamMap free = random_recipe_params(rec, rng);
            for (int sign : {1, -1}) worst = std::max(worst, verify_enhancement(instantiate_recipe(rec, free, sign)).worst());
        }
    std::vector<std::string> missed;
    int solved = 0;
    for (const char* entry : {"C2.0", "C6.0", "C11.0"})
        for (const EnhancementRecipe* rec : recipes_for(entry)) {
            const ParamMap free = random_recipe_params(*rec, rng);
            const EnhancedOperator target = instantiate_recipe(*rec, free, 1);
            const auto sols = solve_enhancement(target.R);
            bool hit = false;
            for (const auto& s : sols) hit = hit || enhancement_distance(s, target) < 1e-6;
            if (hit) ++solved;
            else missed.push_back(rec->id);
        }
    std::string detail = std::to_string(enhancement_recipes().size()) + " recipes, worst residual " + fmt(worst) +
                         "; solver recovered " + std::to_string(solved) + " cataloged families";
    for (const auto& m : missed) detail += ", missed " + m;
    return {worst < 1e-9 && missed.empty(), detail};
}

// 6
Outcome link_closed_forms(std::mt19937_64& rng)
{
    double worst = 0.0;
    int checks = 0;
    for (const auto& rec : enhancement_recipes()) {
        const ParamMap free = random_recipe_params(rec, rng);
        for (int sign : {1, -1}) {
            const EnhancedOperator e = instantiate_recipe(rec, free, sign);
            for (int k = -6; k <= 6; ++k) {
                const cplx direct = link_polynomial(e, BraidWord{2, {{1, k}}}.canonical());
                worst = std::max(worst, std::abs(claimed_link_value(rec, free, sign, k) - direct) /
                                            std::max(1.0, std::abs(direct)));
                ++checks;
            }
            for (int k1 = -4; k1 <= 4; ++k1)
                for (int k2 = -4; k2 <= 4; ++k2) {
                    const auto claim = claimed_link_value3(rec, free, sign, k1, k2);
                    if (!claim) continue;
                    const cplx direct = link_polynomial(e, BraidWord{3, {{1, k1}, {2, k2}}}.canonical());
                    worst = std::max(worst, std::abs(*claim - direct) / std::max(1.0, std::abs(direct)));
                    ++checks;
                }
        }
    }
    // Worked number: class 1, mu = I, h1 = h8 = 1, h4 = h5 = 2.
    const EnhancedOperator c1 =
        instantiate_recipe(enhancement_recipe("E1.1"), {{"h1", 1.0}, {"h4", 2.0}, {"h5", 2.0}, {"h8", 1.0}}, 1);
    const cplx ten = link_polynomial(c1, parse_braid_word("s1^2"));
    const double gap10 = std::abs(ten - 10.0);
    return {worst < 1e-9 && gap10 < 1e-9,
            std::to_string(checks) + " values, worst " + fmt(worst) + "; class 1 L(s1^2) = " + fmt(ten.real())};
}

// 7
Outcome markov_invariance(std::mt19937_64& rng)
{
    double worst = 0.0;
    int checks = 0;
    for (const auto& rec : enhancement_recipes()) {
        const ParamMap free = random_recipe_params(rec, rng);
        for (int sign : {1, -1}) {
            const EnhancedOperator e = instantiate_recipe(rec, free, sign);
            for (int n : {2, 3}) {
                for (int t = 0; t < 3; ++t, ++checks) {
                    const MarkovResult m = markov_check(e, random_word(n, 4, 2, rng), rng);
                    worst = std::max({worst, m.conjugation, m.stabilization});
                }
            }
        }
    }
    return {worst < 1e-9, std::to_string(checks) + " words on up to 4 strands, worst " + fmt(worst)};
}

// 8
Outcome algebra_witnesses(std::mt19937_64& rng)
{
    double stated = 0.0, corrected = 0.0;
    std::set<int> failing;
    for (int c = 1; c <= 12; ++c) {
        const CatalogEntry& e = *catalog_class(c).front();
        for (int t = 0; t < 20; ++t)
            for (const auto& w : class_algebra_witnesses(e, random_params(e, rng))) {
                if (w.stated) {
                    stated = std::max(stated, c == 7 ? 0.0 : w.worst());
                    if (!w.realized) failing.insert(c);
                } else {
                    corrected = std::max(corrected, w.worst());
                }
            }
    }
    std::string detail = "stated realizations, classes other than 7: worst " + fmt(stated);
    if (!failing.empty()) {
        detail += "; not realized for class";
        for (int c : failing) detail += " " + std::to_string(c);
        if (failing.count(7))
            detail += " (class 7 BMW with m = 2i h1/sqrt(h1^2-h3^2); with h3 in the numerator the residual is " +
                      fmt(corrected) + ")";
    }
    return {failing.empty() && stated < 1e-9, detail};
}

// 9
Outcome entangling_power(std::mt19937_64& rng)
{
    double closed_gap = 0.0, average_gap = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const XTypeParams h = random_xtype(rng);
        const double q = entangling_power_quadrature(assemble(h));
        closed_gap = std::max(closed_gap, std::abs(q - entangling_power_closed(h)) / std::max(1.0, q));
        average_gap = std::max(average_gap, std::abs(q - entangling_power_average(h)) / std::max(1.0, q));
    }

    const double s = 1.0 / std::sqrt(2.0);
    const Matrix bell = assemble(XTypeParams::from_list({s, s, s, s, -s, s, -s, s}));
    const double bell_gap = std::abs(entangling_power_quadrature(bell) - 1.0 / 9);
    const Matrix swap{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    const double swap_val = entangling_power_quadrature(swap);

    const cplx a = std::polar(1.0, 0.3), b = std::polar(1.0, 1.1), d = std::polar(1.0, 2.0);
    const XTypeParams c1 =
        catalog_instantiate(catalog_entry("C1.0"), {{"h1", a}, {"h4", b}, {"h5", -a * d / b}, {"h8", d}});
    const double c1_closed = entangling_power_closed(c1), c1_quad = entangling_power_quadrature(assemble(c1));

    double class_gap = 0.0;
    for (const auto& e : catalog())
        for (int t = 0; t < 20; ++t) {
            const ClassEpower ce = class_epower(e, random_params(e, rng));
            class_gap = std::max({class_gap, std::abs(ce.value - ce.closed) / std::max(1.0, ce.closed),
                                  std::abs(ce.eigen_value - ce.closed) / std::max(1.0, ce.closed)});
        }

    const XTypeParams c4 = catalog_instantiate(catalog_entry("C4.0"), {{"h1", a}, {"h4", b}, {"h6", 0.0}});
    const XTypeParams c9 = catalog_instantiate(catalog_entry("C9.0"), {{"h1", a}, {"h7", 0.0}});
    const double zero = std::max(entangling_power_quadrature(assemble(c4)), entangling_power_quadrature(assemble(c9)));

    const bool pass = closed_gap < 1e-9 && bell_gap < 1e-10 && swap_val < 1e-12 && std::abs(c1_quad - 2.0 / 3) < 1e-10 &&
                      class_gap < 1e-9 && zero < 1e-12;
    std::ostringstream os;
    os << "quadrature vs closed form " << fmt(closed_gap) << " (vs 1/36 invariant term " << fmt(average_gap)
       << "); Bell " << fmt(bell_gap) << "; swap " << fmt(swap_val) << "; unitary class 1 closed " << c1_closed
       << ", quadrature " << c1_quad << "; class formulas " << fmt(class_gap) << "; unitary classes 4, 9 "
       << fmt(zero);
    return {pass, os.str()};
}

// 10
Outcome orbit_ranks(std::mt19937_64& rng)
{
    int bad_orbit = 0, bad_state = 0;
    std::normal_distribution<double> g;
    for (int t = 0; t < 200; ++t) {
        bad_orbit += lie_orbit_rank(random_xtype(rng)).rank != 6;
        std::array<cplx, 4> alpha;
        for (auto& v : alpha) v = cplx(g(rng), g(rng));
        bad_state += state_action_rank(alpha) != 3;
    }
    return {bad_orbit == 0 && bad_state == 0, "200 operators and 200 states; orbit rank != 6: " +
                                                  std::to_string(bad_orbit) + ", state rank != 3: " +
                                                  std::to_string(bad_state)};
}

// 11
Outcome equivalence_recipes_ok(std::mt19937_64& rng)
{
    double worst = 0.0;
    int bad = 0;
    for (const auto& rec : equivalence_recipes())
        for (int t = 0; t < 20; ++t) {
            const RecipeResult r = verify_recipe(rec, random_params(catalog_entry(rec.source), rng));
            worst = std::max(worst, r.residual);
            bad += !r.ok;
        }
    int unclassified = 0;
    for (const auto& e : catalog()) unclassified += !classify(e.id, random_params(e, rng)).ok;
    return {bad == 0 && unclassified == 0 && worst < 1e-9,
            std::to_string(equivalence_recipes().size()) + " recipes x 20 draws, worst " + fmt(worst) +
                ", unclassified entries " + std::to_string(unclassified)};
}

// 12
Outcome rh_extras(std::mt19937_64& rng)
{
    double worst = 0.0;
    int bad = 0;
    for (int t = 0; t < 30; ++t) {
        const ExtrasReport a = rh_extras_report("H1,3", random_hietarinta_params(hietarinta_form("H1,3"), rng));
        ParamMap p = random_hietarinta_params(hietarinta_form("H2,3"), rng);
        const ExtrasReport b = rh_extras_report("H2,3", p);
        p["q"] = -p.at("p");
        const ExtrasReport c = rh_extras_report("H2,3", p);
        for (const auto* r : {&a, &b, &c}) {
            worst = std::max(worst, r->worst);
            bad += !r->ok;
        }
        bad += !a.enhancement_claimed || b.enhancement_claimed || !c.enhancement_claimed;
    }
    const double ep = std::abs(rh_extras_report("H1,3", {{"k", 1.0}, {"p", 1.0}, {"q", 0.0}}).epower.direct - 1.0 / 9);

    SolverOptions opt;
    opt.starts = 200;
    int spurious = 0, found_at_minus = 0;
    for (int t = 0; t < 3; ++t) {
        ParamMap p = random_hietarinta_params(hietarinta_form("H2,3"), rng);
        spurious += static_cast<int>(solve_enhancement(hietarinta_assemble("H2,3", p), opt).size());
        p["q"] = -p.at("p");
        const EnhancedOperator target = rh_enhancement("H2,3", p, 1);
        for (const auto& s : solve_enhancement(target.R, opt))
            if (enhancement_distance(s, target) < 1e-6) {
                ++found_at_minus;
                break;
            }
    }
    return {bad == 0 && worst < 1e-9 && ep < 1e-9 && spurious == 0 && found_at_minus == 3,
            "worst " + fmt(worst) + ", failing reports " + std::to_string(bad) +
                "; solver solutions for H2,3 at q != -p: " + std::to_string(spurious) + ", recovered at q = -p: " +
                std::to_string(found_at_minus) + "/3"};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    std::vector<int> expect_fail;
    std::uint64_t seed = 2024;
    app.add_option("--expect-fail", expect_fail, "criteria known to fail, e.g. 3,8,9")->delimiter(',');
    app.add_option("--seed", seed, "seed for the random draws");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<Outcome(std::mt19937_64&)>>> criteria{
        {"YBE validity", ybe_validity},
        {"identity suite", identity_suite},
        {"local invariance", local_invariance},
        {"per-class eigenvalue formulas", class_eigen_formulas},
        {"enhancement catalog", enhancement_catalog},
        {"link-polynomial closed forms", link_closed_forms},
        {"Markov-move invariance", markov_invariance},
        {"algebra witnesses", algebra_witnesses},
        {"entangling power", entangling_power},
        {"orbit ranks", orbit_ranks},
        {"equivalence recipes", equivalence_recipes_ok},
        {"standard-form extras", rh_extras},
    };

    std::set<int> failed;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::mt19937_64 rng(seed + i);
        const auto t0 = std::chrono::steady_clock::now();
        const Outcome o = criteria[i].second(rng);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const int id = static_cast<int>(i) + 1;
        if (!o.pass) failed.insert(id);
        std::printf("criterion %2d %s: %s; %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::set<int> expected(expect_fail.begin(), expect_fail.end());
    std::printf("%zu of %zu criteria pass, total %.1f s\n", criteria.size() - failed.size(), criteria.size(), total);
    if (!expected.empty()) {
        std::printf("expected failures:");
        for (int c : expected) std::printf(" %d", c);
        std::printf(" -> %s\n", failed == expected ? "matched" : "MISMATCH");
    }
    return failed == expected ? 0 : 1;
}
