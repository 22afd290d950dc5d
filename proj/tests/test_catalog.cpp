#include <doctest.h>

#include <random>
#include <set>

#include "braidgate/catalog.hpp"
#include "braidgate/yang_baxter.hpp"

using namespace braidgate;

TEST_CASE("twelve classes, 38 variants")
{
    CHECK(catalog().size() == 38);
    std::set<int> classes;
    for (const auto& e : catalog()) classes.insert(e.class_id);
    CHECK(classes.size() == 12);
    CHECK(catalog_class(3).size() == 8);
    CHECK(catalog_class(11).size() == 8);
    CHECK(catalog_class(1).size() == 1);
    CHECK(catalog_entry("3.2").id == "C3.2");
    CHECK_THROWS_AS(catalog_entry("C13.0"), std::out_of_range);
}

TEST_CASE("every variant instantiates to an invertible YBE solution")
{
    std::mt19937_64 rng(41);
    for (const auto& e : catalog()) {
        CAPTURE(e.id);
        for (int t = 0; t < 20; ++t) {
            const ParamMap p = random_params(e, rng);
            const Matrix r = assemble(catalog_instantiate(e, p));
            CHECK(check_ybe(r).ok);
            CHECK_NOTHROW(invert(r));
            for (const auto& nz : e.nonzero) CHECK(std::abs(nz.eval(to_param_map(catalog_instantiate(e, p)))) > 0.1);
        }
    }
}

TEST_CASE("instantiation fills constraints and rejects bad input")
{
    const CatalogEntry& c1 = catalog_entry("C1.0");
    const XTypeParams h = catalog_instantiate(c1, {{"h1", 1.0}, {"h4", 2.0}, {"h5", 3.0}, {"h8", 4.0}});
    CHECK(h.h(1) == cplx(1.0));
    CHECK(h.h(2) == cplx(0.0));
    CHECK(h.h(8) == cplx(4.0));
    CHECK_THROWS_AS(catalog_instantiate(c1, {{"h1", 1.0}}), InadmissibleParams);
    CHECK_THROWS_AS(catalog_instantiate(c1, {{"h1", 1.0}, {"h4", 2.0}, {"h5", 3.0}, {"h8", 4.0}, {"h2", 1.0}}),
                    std::invalid_argument);

    const CatalogEntry& c4 = catalog_entry("C4.0");
    CHECK_THROWS_AS(catalog_instantiate(c4, {{"h1", 1.0}, {"h4", 0.0}, {"h6", 0.5}}), InadmissibleParams);
}

TEST_CASE("class 3 representative at hand values")
{
    const XTypeParams h = catalog_instantiate(catalog_entry("C3.0"), {{"h1", 1.0}, {"h7", 2.0}, {"h8", 3.0}});
    const Matrix r = assemble(h);
    const Matrix expected{{1, 0, 0, 0}, {0, 0, -1, 0}, {0, 3, 4, 0}, {2, 0, 0, 3}};
    CHECK(max_diff(r, expected) == 0.0);
}

TEST_CASE("random draws are reproducible")
{
    std::mt19937_64 a(7), b(7);
    for (const auto& e : catalog()) {
        const ParamMap pa = random_params(e, a), pb = random_params(e, b);
        CHECK(pa == pb);
    }
}
