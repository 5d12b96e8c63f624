#include <doctest.h>

#include <cmath>

#include "axinse/fields.hpp"
#include "axinse/pressure.hpp"
#include "test_support.hpp"

using namespace axinse;

namespace {

AxiField rigid_rotation(const Grid2D& g, double omega) {
    AxiField v(g);
    for (int i = 0; i < g.nodes_rho(); ++i)
        for (int j = 0; j < g.nodes_z(); ++j) v.v_phi(i, j) = omega * g.rho(i);
    return v;
}

// subtract the same unit-cylinder mean the solver removes
void normalize_like_solver(ScalarField2D& q) {
    const Grid2D& g = q.grid;
    const double r = std::min({1.0, g.rho_max, 0.5 * g.z_extent()});
    const double b = g.z_periodic ? g.z_min : 0.5 * (g.z_min + g.z_max);
    const double mean = integrate_section(q, b, r) / section_volume(g, b, r);
    for (double& v : q.values) v -= mean;
}

} // namespace

TEST_CASE("pressure recovery") {
    Grid2D g(1.0, -1.0, 1.0, 32, 32, true);

    SUBCASE("zero velocity gives zero pressure") {
        const AxiField v(g);
        const ScalarField2D q = solve_pressure(v);
        for (double x : q.values) CHECK(std::abs(x) < 1e-12);
    }

    SUBCASE("rigid rotation recovers the centripetal balance exactly") {
        const double omega = 1.3;
        const AxiField v = rigid_rotation(g, omega);
        const ScalarField2D q = solve_pressure(v);
        ScalarField2D expect(g);
        for (int i = 0; i < g.nodes_rho(); ++i)
            for (int j = 0; j < g.nodes_z(); ++j)
                expect(i, j) = 0.5 * omega * omega * g.rho(i) * g.rho(i);
        normalize_like_solver(expect);
        for (int i = 0; i < g.nodes_rho(); ++i)
            for (int j = 0; j < g.nodes_z(); ++j)
                CHECK(std::abs(q(i, j) - expect(i, j)) < 1e-9);
    }

    SUBCASE("uniform axial flow has vanishing source and pressure") {
        AxiField v(g);
        for (double& x : v.v_z.values) x = 1.0;
        const ScalarField2D src = pressure_source(v);
        for (double x : src.values) CHECK(std::abs(x) < 1e-12);
        const ScalarField2D q = solve_pressure(v);
        for (double x : q.values) CHECK(std::abs(x) < 1e-10);
    }

    SUBCASE("z-periodic Galilean shift leaves the pressure invariant to O(h^2)") {
        const testing::AnalyticField field = testing::gaussian_test_field();
        double errs[2];
        int n = 24;
        for (int lev = 0; lev < 2; ++lev, n *= 2) {
            Grid2D gl(1.0, -1.0, 1.0, n, n, true);
            AxiField v = testing::sample_velocity_field(field, gl, 0.0);
            const ScalarField2D q0 = solve_pressure(v);
            for (double& x : v.v_z.values) x += 0.75;
            const ScalarField2D q1 = solve_pressure(v);
            double err = 0.0;
            for (std::size_t k = 0; k < q0.values.size(); ++k)
                err = std::max(err, std::abs(q0.values[k] - q1.values[k]));
            errs[lev] = err;
        }
        CHECK(errs[1] < errs[0] / 3.0);
    }
}

TEST_CASE("pressure split") {
    SUBCASE("harmonic input with zero velocity: q1 = 0, q2 = q") {
        Grid2D g(1.0, -1.0, 1.0, 24, 24, false);
        const AxiField v(g);
        ScalarField2D q(g);
        for (int i = 0; i < g.nodes_rho(); ++i)
            for (int j = 0; j < g.nodes_z(); ++j) q(i, j) = g.z(j);
        const PressureSplit split = split_pressure(q, v, 0.5, 0.0);
        for (double x : split.q1.values) CHECK(std::abs(x) < 1e-12);
        for (std::size_t k = 0; k < q.values.size(); ++k)
            CHECK(split.q2.values[k] == q.values[k]);
        CHECK(split.harmonicity_residual < 1e-10);
    }

    SUBCASE("reconstruction is exact by construction") {
        Grid2D g(1.0, -1.0, 1.0, 24, 24, true);
        const AxiField v = rigid_rotation(g, 0.9);
        const ScalarField2D q = solve_pressure(v);
        const PressureSplit split = split_pressure(q, v, 0.5, 0.0);
        for (std::size_t k = 0; k < q.values.size(); ++k)
            CHECK(split.q1.values[k] + split.q2.values[k] == q.values[k]);
    }

    SUBCASE("solver-path q2 is discrete-harmonic inside the cutoff") {
        Grid2D g(1.0, -1.0, 1.0, 32, 32, true);
        const AxiField v = rigid_rotation(g, 1.0);
        const ScalarField2D q = solve_pressure(v);
        const PressureSplit split = split_pressure(q, v, 0.5, 0.0);
        CHECK(split.harmonicity_residual <= split.harmonicity_tolerance);
        CHECK(split.harmonicity_residual < 1e-8);
    }

    SUBCASE("analytic swirl balance: residual falls at second order") {
        // v_phi = rho e^{-rho^2}: dq/drho = v_phi^2 / rho, q = (1 - e^{-2 rho^2})/4
        double errs[2];
        int n = 32;
        for (int lev = 0; lev < 2; ++lev, n *= 2) {
            Grid2D g(1.0, -1.0, 1.0, n, n, true);
            AxiField v(g);
            ScalarField2D q(g);
            for (int i = 0; i < g.nodes_rho(); ++i) {
                const double r = g.rho(i);
                for (int j = 0; j < g.nodes_z(); ++j) {
                    v.v_phi(i, j) = r * std::exp(-r * r);
                    q(i, j) = 0.25 * (1.0 - std::exp(-2.0 * r * r));
                }
            }
            const PressureSplit split = split_pressure(q, v, 0.55, 0.0);
            errs[lev] = split.harmonicity_residual;
            CHECK(split.harmonicity_residual <= split.harmonicity_tolerance);
        }
        CHECK(errs[1] < errs[0] / 3.0);
    }

    SUBCASE("geometry violations are rejected") {
        Grid2D g(1.0, -1.0, 1.0, 16, 16, true);
        const AxiField v(g);
        const ScalarField2D q(g);
        CHECK_THROWS_AS(split_pressure(q, v, 1.2, 0.0), OutOfDomainError);
        CHECK_THROWS_AS(split_pressure(q, v, 0.5, -0.9), OutOfDomainError); // seam
    }
}

TEST_CASE("bmo seminorm") {
    Grid2D g(1.5, -1.5, 1.5, 48, 48, false);

    SUBCASE("constants have zero oscillation") {
        ScalarField2D q(g);
        for (double& x : q.values) x = 4.2;
        CHECK(bmo_seminorm(q, {0.5, 0.25}) < 1e-13);
    }

    SUBCASE("q = z over the unit cylinder oscillates by 1/2") {
        ScalarField2D q(g);
        for (int i = 0; i < g.nodes_rho(); ++i)
            for (int j = 0; j < g.nodes_z(); ++j) q(i, j) = g.z(j);
        const double got = bmo_seminorm(q, {1.0}, 1); // single centered cylinder
        CHECK(std::abs(got - 0.5) < 2e-3);
    }

    SUBCASE("rigid-rotation pressure seminorm is stable under refinement") {
        double vals[2];
        int n = 24;
        for (int lev = 0; lev < 2; ++lev, n *= 2) {
            Grid2D gl(1.0, -1.0, 1.0, n, n, true);
            const AxiField v = rigid_rotation(gl, 1.0); // |v| <= 1
            const ScalarField2D q = solve_pressure(v);
            vals[lev] = bmo_seminorm(q, {0.125, 0.25, 0.5});
        }
        CHECK(vals[0] > 0.0);
        CHECK(testing::rel_err(vals[0], vals[1]) < 0.05);
    }

    SUBCASE("radii must fit") {
        ScalarField2D q(g);
        CHECK_THROWS_AS(bmo_seminorm(q, {2.0}), OutOfDomainError);
        CHECK_THROWS_AS(bmo_seminorm(q, {}), InvalidArgumentError);
    }
}
