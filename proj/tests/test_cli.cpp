#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using braidgate::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args, int expect = 0)
{
    args.insert(args.begin(), "--json");
    const Outcome o = call(args);
    REQUIRE(o.code == expect);
    return json::parse(o.out);
}

const char* kBell =
    "0.70710678118654752,0.70710678118654752,0.70710678118654752,0.70710678118654752,"
    "-0.70710678118654752,0.70710678118654752,-0.70710678118654752,0.70710678118654752";

}  // namespace

TEST_CASE("complex literals")
{
    using braidgate::cli::parse_complex;
    CHECK(parse_complex("2+1i") == std::complex<double>(2, 1));
    CHECK(parse_complex("[0.5,-3]") == std::complex<double>(0.5, -3));
    CHECK(parse_complex("-i") == std::complex<double>(0, -1));
    CHECK(parse_complex("1e-3") == std::complex<double>(1e-3, 0));
    CHECK(std::abs(parse_complex("sqrt(2)/2") - std::sqrt(0.5)) < 1e-16);
    CHECK_THROWS(parse_complex("2+"));
    const auto parts = braidgate::cli::split_top("h1=[1,2],h2=3,h3=sqrt(1,2)", ',');
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == "h1=[1,2]");
}

TEST_CASE("epower examples")
{
    const json bell = call_json({"epower", "--xtype", kBell, "--method", "both"});
    CHECK(bell["pass"] == true);
    CHECK(std::abs(bell["outputs"]["quadrature"].get<double>() - 1.0 / 9) < 1e-12);
    CHECK(std::abs(bell["outputs"]["closed"].get<double>() - 1.0 / 9) < 1e-12);

    const json sw = call_json({"epower", "--matrix", "1,0,0,0,0,0,1,0,0,1,0,0,0,0,0,1"});
    CHECK(std::abs(sw["outputs"]["quadrature"].get<double>()) < 1e-15);

    const json h13 = call_json({"epower", "--hietarinta", "H1,3", "--params", "k=1,p=1,q=0"});
    CHECK(std::abs(h13["outputs"]["quadrature"].get<double>() - 1.0 / 9) < 1e-12);

    CHECK(call({"epower", "--hietarinta", "H1,3", "--params", "k=1,p=1,q=0", "--method", "closed"}).code == 2);
}

TEST_CASE("linkpoly examples")
{
    const json c1 = call_json({"linkpoly", "--class", "C1.0", "--params", "h1=1,h8=1,h4=2,h5=2", "--recipe", "E1.1",
                               "--word", "s1^2"});
    CHECK(c1["outputs"]["value"][0].get<double>() == doctest::Approx(10.0));
    CHECK(c1["pass"] == true);

    const Outcome missing = call({"linkpoly", "--class", "C1.0", "--recipe", "E1.1"});
    CHECK(missing.code == 2);
    const Outcome mismatch = call({"linkpoly", "--class", "C2.0", "--recipe", "E1.1", "--word", "s1"});
    CHECK(mismatch.code == 2);
}

TEST_CASE("classify examples")
{
    CHECK(call_json({"classify", "--class", "C1.0"})["outputs"]["family"] == "H3,1");
    CHECK(call_json({"classify", "--class", "C2.0"})["outputs"]["family"] == "H1,4");
    const json c12 = call_json({"classify", "--class", "C12.0"});
    CHECK(c12["outputs"]["family"] == "H1,1");
    CHECK(c12["outputs"]["chain"][0]["steps"][0]["kappa"] == "h1/(2*(1+i))");
    const Outcome un = call({"classify", "--xtype", "1,0,0,0,0,0,0,1"});
    CHECK(un.code == 2);
    CHECK(un.err.find("unclassified") != std::string::npos);
}

TEST_CASE("verify and exit codes")
{
    CHECK(call({"verify", "--class", "C3.0", "--enhancements"}).code == 0);
    CHECK(call({"verify", "--xtype", "1,2,3,4,5,6,7,8"}).code == 1);
    CHECK(call({"verify"}).code == 2);
    CHECK(call({"verify", "--class", "C3.0", "--xtype", "1,0,0,0,0,0,0,1"}).code == 2);
    CHECK(call({"verify", "--class", "C99.0"}).code == 2);
    CHECK(call({"verify", "--class", "C4.0", "--params", "h1=1,h4=0,h6=2"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"--tol", "1e-30", "verify", "--class", "C3.0"}).code == 1);
}

TEST_CASE("other subcommands")
{
    CHECK(call_json({"orbit", "--xtype", "1,2,3,4,5,6,7,8"})["outputs"]["rank"] == 6);
    CHECK(call_json({"catalog"})["outputs"]["entries"].size() == 38);
    CHECK(call({"invariants", "--class", "C11.0"}).code == 0);
    CHECK(call({"--csv", "invariants", "--matrix", "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16"}).code == 0);
    const json enh = call_json({"enhance", "--class", "C2.0", "--starts", "50"});
    CHECK(enh["pass"] == true);
}

TEST_CASE("identical invocations give identical JSON")
{
    const std::vector<std::string> args{"--json", "--seed", "9", "invariants", "--class", "C6.0"};
    const Outcome a = call(args), b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const Outcome c = call({"--json", "--seed", "10", "invariants", "--class", "C6.0"});
    CHECK(c.out != a.out);
}
