#include <doctest.h>

#include "axinse/exponents.hpp"

using namespace axinse;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("7/4") == Rational(7, 4));
    CHECK(parse_rational("10") == Rational(10));
    CHECK(parse_rational("-3/2") == Rational(-3, 2));
    CHECK(parse_rational("1.9") == Rational(19, 10));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(rational_string(Rational(58, 7)) == "58/7");
    CHECK(rational_string(Rational(10)) == "10");
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_rational(""), InvalidArgumentError);
}

TEST_CASE("worked exponent pairs") {
    SUBCASE("(7/4, 10): the quoted constants and the alpha triple") {
        const ExponentReport rep = exponent_report(Rational(7, 4), Rational(10));
        CHECK(rep.m == Rational(58, 7));
        CHECK(rep.mu == Rational(1, 58));
        CHECK(rep.alpha1 == Rational(1, 87));
        CHECK(rep.alpha2 == Rational(17, 29));
        CHECK(rep.alpha3 == Rational(35, 87));
        CHECK(rep.alpha1 + rep.alpha2 + rep.alpha3 == 1);
        CHECK(rep.feasible);
        CHECK(rep.admissible);
        CHECK(rep.m_matches_quoted);
        CHECK(rep.mu_matches_quoted);
        CHECK(heuristic_bootstrap_check(rep)); // 52/87 < 2/3
    }

    SUBCASE("(3, 3): the L3 norm interpolates itself") {
        const ExponentReport rep = exponent_report(Rational(3), Rational(3));
        CHECK(rep.alpha1 == 0);
        CHECK(rep.alpha2 == 0);
        CHECK(rep.alpha3 == 1);
        CHECK(rep.spec.kappa == 2);
        CHECK(rep.m == 1);
        CHECK(rep.mu == 0);
        CHECK(heuristic_bootstrap_check(rep));
    }

    SUBCASE("(4, 12/7): m matches, mu discrepancy flagged not resolved") {
        const ExponentReport rep = exponent_report(Rational(4), Rational(12, 7));
        CHECK(rep.m == Rational(10, 7));
        CHECK(rep.mu == Rational(3, 5));        // the displayed formula
        REQUIRE(rep.quoted_mu.has_value());
        CHECK(*rep.quoted_mu == Rational(3, 14)); // the quoted value
        CHECK(rep.m_matches_quoted);
        CHECK_FALSE(rep.mu_matches_quoted);
    }

    SUBCASE("(2, 2) is infeasible") {
        CHECK_FALSE(feasible_e7(Rational(2), Rational(2)));
        CHECK(admissible_as3(Rational(2), Rational(2))); // as3 alone does not reject it
        const ExponentReport rep = exponent_report(Rational(2), Rational(2));
        CHECK_FALSE(rep.feasible);
        CHECK_FALSE(heuristic_bootstrap_check(rep)); // 3/s + 2/l = 5/2 > 2
    }

    SUBCASE("degenerate denominator rejected") {
        // 3/s + 2/l = 3/2 at s = 4, l = 8/3
        CHECK_THROWS_AS(exponent_report(Rational(4), Rational(8, 3)), InvalidArgumentError);
    }
}

TEST_CASE("closed forms match the exact linear-system oracle on a grid") {
    const int n = 16;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const Rational x(i, n), y(j, n);
            const Rational s = 1 / x, l = 1 / y;
            const Rational den = 3 * x + 2 * y - Rational(3, 2);
            const auto oracle = solve_holder_system(s, l);
            if (den == 0) {
                CHECK_FALSE(oracle.has_value());
                continue;
            }
            REQUIRE(oracle.has_value());
            const ExponentReport rep = exponent_report(s, l);
            CHECK(rep.alpha1 == (*oracle)[0]);
            CHECK(rep.alpha2 == (*oracle)[1]);
            CHECK(rep.alpha3 == (*oracle)[2]);
            CHECK(rep.alpha1 + rep.alpha2 + rep.alpha3 == 1);
            const bool alpha_feasible =
                rep.alpha1 >= 0 && rep.alpha2 >= 0 && rep.alpha3 > Rational(1, 3);
            CHECK(rep.feasible == alpha_feasible);
        }
    }
}

TEST_CASE("oracle honours the dimension parameter") {
    // n = 4: 1/2* = 1/4; the triple still sums to one
    const auto oracle = solve_holder_system(Rational(2), Rational(4), 4);
    REQUIRE(oracle.has_value());
    CHECK((*oracle)[0] + (*oracle)[1] + (*oracle)[2] == 1);
}

TEST_CASE("feasible region scan") {
    const ScanResult scan = scan_feasible_region(64);
    CHECK(scan.points.size() == 64 * 64);
    CHECK(scan.feasible_count > 0);
    CHECK(scan.has_l_below_2_s_above_1);

    // spot values from direct checks
    CHECK(feasible_e7(Rational(4), Rational(19, 10)));     // (x, y) = (1/4, 10/19)
    CHECK(feasible_e7(Rational(3), Rational(3)));          // boundary equalities hold
    CHECK_FALSE(feasible_e7(Rational(2), Rational(2)));

    CHECK_THROWS_AS(scan_feasible_region(4), InvalidArgumentError);
}

TEST_CASE("certificate iteration") {
    SUBCASE("worked geometric sequence 10, 6, 4, 3, 2.5 -> 2") {
        // contraction 1/2 via c = 2, theta = 1/8, eps = 1/512
        const CertificateTrace tr =
            certificate_iteration(10.0, 2.0, 0.125, 1.0 / 512.0, 1.0, 40);
        CHECK(tr.contraction == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(tr.bounded);
        CHECK(tr.bound == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(tr.sequence[0] == 10.0);
        CHECK(tr.sequence[1] == doctest::Approx(6.0));
        CHECK(tr.sequence[2] == doctest::Approx(4.0));
        CHECK(tr.sequence[3] == doctest::Approx(3.0));
        CHECK(tr.sequence[4] == doctest::Approx(2.5));
        CHECK(std::abs(tr.sequence.back() - 2.0) < 1e-10);
    }

    SUBCASE("zero additive contracts to zero") {
        const CertificateTrace tr = certificate_iteration(5.0, 2.0, 0.125, 1.0 / 512.0, 0.0, 60);
        CHECK(tr.bounded);
        CHECK(tr.bound == 0.0);
        CHECK(std::abs(tr.sequence.back()) < 1e-15);
    }

    SUBCASE("non-contraction flags unbounded") {
        const CertificateTrace tr = certificate_iteration(1.0, 2.0, 1.0, 0.0, 1.0, 5);
        CHECK_FALSE(tr.bounded);
        CHECK_FALSE(tr.bound_defined);
    }

    SUBCASE("negative inputs rejected") {
        CHECK_THROWS_AS(certificate_iteration(-1.0, 1.0, 0.1, 0.0, 0.0, 3),
                        InvalidArgumentError);
        CHECK_THROWS_AS(certificate_iteration(1.0, 1.0, 0.1, 0.0, -2.0, 3),
                        InvalidArgumentError);
    }

    SUBCASE("parameter helper satisfies the quarter conditions") {
        for (double c : {0.3, 1.0, 4.0, 25.0}) {
            const auto [theta, eps] = choose_certificate_params(c);
            CHECK(c * theta < 0.25);
            CHECK(c * eps / (theta * theta) < 0.25);
            const CertificateTrace tr = certificate_iteration(1.0, c, theta, eps, 0.5, 10);
            CHECK(tr.contraction <= 0.5);
            CHECK(tr.bounded);
        }
    }
}
