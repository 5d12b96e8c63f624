#include <doctest.h>

#include <cstdlib>
#include <cstring>

#include "axinse/config.hpp"
#include "axinse/reports.hpp"

using namespace axinse;

TEST_CASE("empty diagnostics section gets the documented defaults") {
    const Config cfg = parse_config("[scenario]\nn_rho = 16\nn_z = 16\n");
    REQUIRE(cfg.diagnostics.radii.size() == 3);
    CHECK(cfg.diagnostics.radii[0] == 0.125);
    CHECK(cfg.diagnostics.radii[1] == 0.25);
    CHECK(cfg.diagnostics.radii[2] == 0.5);
    REQUIRE(cfg.diagnostics.mixed_norms.size() == 3);
    CHECK(cfg.diagnostics.mixed_norms[0].s == Rational(7, 4));
    CHECK(cfg.diagnostics.mixed_norms[0].l == Rational(10));
    CHECK(cfg.diagnostics.mixed_norms[1].s == Rational(4));
    CHECK(cfg.diagnostics.mixed_norms[1].l == Rational(12, 7));
    CHECK(cfg.diagnostics.mixed_norms[2].s == Rational(3));
}

TEST_CASE("infeasible mixed norm pairs are rejected at parse time") {
    const std::string text = "[diagnostics]\nmixed_norms = (2, 2)\n";
    try {
        parse_config(text);
        FAIL("expected rejection of (2,2)");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("as3") != std::string::npos);
        CHECK(what.find("e7") != std::string::npos);
    }
}

TEST_CASE("syntax errors carry line numbers") {
    const std::string text = "[scenario]\nnu = 1.0\ndt 0.01\n";
    try {
        parse_config(text);
        FAIL("expected a syntax error");
    } catch (const ConfigError& e) {
        CHECK(e.line_number == 3);
        CHECK(std::string(e.what()).find("key = value") != std::string::npos);
    }
}

TEST_CASE("unknown keys and sections are hard errors") {
    CHECK_THROWS_AS(parse_config("[scenario]\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[nonsense]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("orphan = 1\n"), ConfigError);
}

TEST_CASE("ladders must be dyadic") {
    CHECK_THROWS_AS(parse_config("[diagnostics]\nradii = 0.5, 0.3\n"), ConfigError);
    CHECK_NOTHROW(parse_config("[diagnostics]\nradii = 1/2, 1/4, 1/8\n"));
}

TEST_CASE("rational values parse into scenario fields") {
    const Config cfg = parse_config(
        "[scenario]\nrho_max = 3/2\nnu = 0.5\nz_boundary = mirrored\ndiffusion = explicit\n");
    CHECK(cfg.scenario.rho_max == 1.5);
    CHECK(cfg.scenario.nu == 0.5);
    CHECK(cfg.scenario.z_boundary == ZBoundary::Mirrored);
}

TEST_CASE("implicit diffusion with mirrored z is rejected") {
    CHECK_THROWS_AS(
        parse_config("[scenario]\nz_boundary = mirrored\ndiffusion = implicit\n"),
        ConfigError);
}

TEST_CASE("config hash is the FNV-1a of the raw text") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("abc") == 0xe71fa2190541574bull);
    const std::string text = "[scenario]\nnu = 1.0\n";
    CHECK(parse_config(text).hash == fnv1a64(text));
}

TEST_CASE("scenario provenance text captures the section verbatim") {
    const Config cfg = parse_config("[scenario]\nnu = 2.0\nn_rho = 16\n[output]\ndir = x\n");
    CHECK(cfg.scenario.text == "nu = 2.0\nn_rho = 16\n");
    CHECK(cfg.output.dir == "x");
}

TEST_CASE("float formatting round-trips bit-exactly") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1.7976931348623157e308, 2.2e-308,
                     3.141592653589793}) {
        const std::string s = format_double(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(std::memcmp(&back, &v, sizeof(double)) == 0);
    }
}
