#include "doctest.h"

#include "connexion/cli.hpp"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using connexion::run_cli;

namespace {

std::string curve(char const* name)
{
    return std::string(CONNEXION_CURVES_DIR) + "/" + name + ".json";
}

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int const code = run_cli(args, out, err);
    return { code, out.str(), err.str() };
}

} // namespace

TEST_CASE("residue verb")
{
    auto r = cli({ "residue", "--curve", curve("e1"), "--form", "dx/x", "--point", "(0,0)" });
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");
    r = cli({ "residue", "--curve", curve("e1"), "--form", "dx/x", "--point", "(2,1)" });
    CHECK(r.code == 2);
    CHECK(r.err.find("does not lie") != std::string::npos);
    r = cli({ "residue", "--curve", curve("l1"), "--form", "dt/(t-3)", "--point", "(3)", "--format", "json" });
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["residue"] == "1");
}

TEST_CASE("divisor verbs")
{
    auto r = cli({ "divisor-of", "--curve", curve("e1"), "--function", "y" });
    CHECK(r.out == "1*(-1,0) + 1*(0,0) + 1*(1,0)\n");
    r = cli({ "divisor-of", "--curve", curve("e1"), "--function", "x", "--completion" });
    CHECK(r.out == "2*(0,0) - 2*(inf)\n");
    r = cli({ "divisor-of", "--curve", curve("e2"), "--function", "y" });
    CHECK(r.code == 1);
    r = cli({ "principal", "--curve", curve("e1"), "--divisor", "2*(0,0)" });
    CHECK(r.code == 0);
    CHECK(r.out.rfind("principal", 0) == 0);
    r = cli({ "principal", "--curve", curve("e1"), "--divisor", "1*(0,0)", "--require-witness" });
    CHECK(r.code == 1);
    r = cli({ "extend", "--curve", curve("l1"), "--divisor", "1*(2)" });
    CHECK(r.out == "-1*(0) + 1*(2)\n");
}

TEST_CASE("connection verbs")
{
    auto r = cli({ "connect", "--curve", curve("e1"), "--divisor", "1*(0,0)", "--format", "json" });
    REQUIRE(r.code == 0);
    auto const j = nlohmann::json::parse(r.out);
    CHECK(j["form"] == "(-x^2 + 1)/(2*x) * dx");
    CHECK(j["bezout"].size() == 2);
    r = cli({ "verify-connection", "--curve", curve("e1"), "--divisor", "1*(0,0)", "--order", "3" });
    CHECK(r.code == 0);
    CHECK(r.out == "ok (order <= 3)\n");
    r = cli({ "verify-connection", "--curve", curve("e1"), "--divisor", "1*(0,0)", "--form", "0" });
    CHECK(r.code == 1);
    r = cli({ "class-equal", "--curve", curve("l1"), "--a", "0; dt/t", "--b", "0; 0" });
    CHECK(r.code == 0);
    CHECK(r.out == "equal (unit witness: t)\n");
    // stated divisor disagrees with the residues of the form
    r = cli({ "class-equal", "--curve", curve("e1"), "--a", "1*(0,0); 0", "--b", "0; 0" });
    CHECK(r.code == 2);
}

TEST_CASE("split with a saved context")
{
    auto const path = std::filesystem::temp_directory_path() / "connexion_ctx_test.json";
    auto r = cli({ "split", "--curve", curve("e1"), "--support", "(0,0)", "--divisor", "1*(0,0)", "--save", path.string() });
    REQUIRE(r.code == 0);
    CHECK(r.out.find("form: 1/(2*x) * dx") != std::string::npos);
    r = cli({ "split", "--context", path.string(), "--divisor", "2*(0,0)" });
    CHECK(r.code == 0);
    CHECK(r.out.find("form: 1/x * dx") != std::string::npos);
    r = cli({ "split", "--context", path.string(), "--divisor", "1*(1,0)" });
    CHECK(r.code != 0);
    std::filesystem::remove(path);
}

TEST_CASE("period verbs")
{
    auto r = cli({ "periods", "--curve", curve("e1"), "--format", "json" });
    REQUIRE(r.code == 0);
    auto const j = nlohmann::json::parse(r.out);
    double const re = j["periods"][0]["value"]["re"];
    CHECK(std::abs(re - 5.244115108584239) < 1e-9);
    r = cli({ "character", "--curve", curve("e1"), "--form", "dx/x", "--cycle", "B", "--normalize", "--format", "json" });
    REQUIRE(r.code == 0);
    auto const c = nlohmann::json::parse(r.out);
    CHECK(std::abs(double(c["modulus"]) - 1) < 1e-8);
    r = cli({ "periods", "--curve", curve("l1"), "--form", "dt/(t-1)", "--loop", "(1)" });
    CHECK(r.code == 0);
    CHECK(r.out.find("6.28318530718i") != std::string::npos);
}

TEST_CASE("verify verb and the sign mutation")
{
    auto r = cli({ "verify", "--samples", "3" });
    CHECK(r.code == 0);
    auto const ok = nlohmann::json::parse(r.out);
    CHECK(ok["suite"] == "connexion");
    CHECK(ok["passed"] == true);
    r = cli({ "verify", "--samples", "3", "--inject-infinity-sign-flip" });
    CHECK(r.code == 1);
    auto const bad = nlohmann::json::parse(r.out);
    CHECK(bad["passed"] == false);
    bool hit = false;
    for (auto const& v : bad["violations"])
        hit = hit || v["invariant"] == "total_residue_completion";
    CHECK(hit);
}

TEST_CASE("usage errors exit 2")
{
    CHECK(cli({ "residue", "--curve", curve("e1") }).code == 2);
    CHECK(cli({ "no-such-verb" }).code == 2);
    CHECK(cli({ "residue", "--curve", "/nonexistent.json", "--form", "dx", "--point", "(0,0)" }).code == 2);
    CHECK(cli({ "residue", "--curve", curve("e1"), "--form", "dx +", "--point", "(0,0)" }).code == 2);
}
