#include <doctest.h>

#include "tdi/system_io.hpp"
#include "test_helpers.hpp"

using namespace tdi;

TEST_CASE("system spec files parse and build") {
    SystemSpecFile spec = parse_system_spec_string(
        "# comment\n"
        "family vinogradov k=3\n");
    REQUIRE(spec.family.has_value());
    TdiSystem sys = build_from_spec(spec);
    CHECK(sys.rank() == 3);
    CHECK(sys.weight == 6);
}

TEST_CASE("seed-based specs run the closure construction") {
    SystemSpecFile spec = parse_system_spec_string(
        "dim 2\n"
        "seed 1/1 * z1^1 * z2^1\n");
    TdiSystem sys = build_from_spec(spec);
    CHECK(sys.rank() == 3);
    CHECK(sys.weight == 4);
}

TEST_CASE("emitted systems round-trip to the same forms") {
    for (const FamilySpec& fam : test::example_families()) {
        TdiSystem sys = generate_family(fam);
        std::string text = emit_system(sys);
        TdiSystem again = build_from_spec(parse_system_spec_string(text));
        CHECK(again.forms == sys.forms);
        CHECK(emit_system(again) == text);
    }
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_system_spec_string("dim 1\nseed 1/1 * zX\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    try {
        parse_system_spec_string("diim 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }
    CHECK_THROWS_AS(parse_system_spec_string("seed 1/1 * z1^2\n"), ParseError);
}

TEST_CASE("spec without seeds or family is rejected at build") {
    SystemSpecFile empty;
    CHECK_THROWS_AS(build_from_spec(empty), InputError);
}
