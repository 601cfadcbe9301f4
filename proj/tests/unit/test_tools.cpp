#include "doctest.h"
#include "manifest.hpp"
#include "suites.hpp"
#include "sqconf/errors.hpp"

using namespace sqconf::tools;

TEST_SUITE("cli") {
    TEST_CASE("sha256 known answers") {
        CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
        CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    TEST_CASE("manifest digest ignores timing") {
        RunManifest a;
        a.command = "betti";
        a.arguments = {"betti", "--cycle", "3"};
        a.outputs["stdout"] = sha256_hex("x");
        RunManifest b = a;
        b.wall_ms = 1234.5;
        CHECK(a.digest() == b.digest());
        CHECK(a.to_json() != b.to_json());
        b.exit_code = 2;
        CHECK(a.digest() != b.digest());
    }

    TEST_CASE("suites") {
        CHECK(suite_names().size() == 6);
        CHECK(run_suite("tree", {}).pass());
        CHECK_THROWS_AS(run_suite("nope", {}), sqconf::InputError);
        SuiteOptions few;
        few.samples = 200;
        auto g1 = run_suite("geometry", few), g2 = run_suite("geometry", few);
        CHECK(g1.pass());
        REQUIRE(g1.checks.size() == g2.checks.size());
        for (std::size_t i = 0; i < g1.checks.size(); ++i) CHECK(g1.checks[i].detail == g2.checks[i].detail);
    }
}
