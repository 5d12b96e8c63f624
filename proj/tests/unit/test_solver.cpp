#include <doctest.h>

#include <cmath>

#include "axinse/fields.hpp"
#include "axinse/mms.hpp"
#include "axinse/solver.hpp"
#include "test_support.hpp"

using namespace axinse;

namespace {

Scenario base_scenario() {
    Scenario sc;
    sc.rho_max = 1.0;
    sc.z_min = -1.0;
    sc.z_max = 1.0;
    sc.n_rho = 24;
    sc.n_z = 24;
    sc.nu = 1.0;
    sc.t_end = 0.1;
    sc.snapshot_dt = 0.02;
    sc.with_pressure = false;
    return sc;
}

double max_diff(const ScalarField2D& a, const ScalarField2D& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
    return worst;
}

} // namespace

TEST_CASE("rest state is steady") {
    Scenario sc = base_scenario();
    sc.initial_condition = "zero";
    SolverState state = initial_state(sc);
    const double dt = sc.stable_dt(0.0);
    state = step(sc, state, dt);
    CHECK(max_abs(state.f) == 0.0);
    CHECK(max_abs(state.omega) == 0.0);
    CHECK(max_abs(state.psi) == 0.0);
}

TEST_CASE("rigid rotation with matching wall data is a steady state") {
    Scenario sc = base_scenario();
    sc.initial_condition = "rigid_rotation";
    sc.ic_amplitude = 0.8;

    SolverState state = initial_state(sc);
    const SolverState start = state;
    const double dt = sc.stable_dt(0.8);
    for (int s = 0; s < 5; ++s) {
        state = step(sc, state, dt);
        CHECK(max_diff(state.f, start.f) < 1e-10);
        CHECK(max_abs(state.omega) < 1e-10);
    }

    SUBCASE("implicit diffusion preserves the steady state too") {
        Scenario sci = sc;
        sci.diffusion = DiffusionMode::Implicit;
        SolverState si = initial_state(sci);
        si = step(sci, si, 5.0 * dt); // implicit path tolerates larger steps
        CHECK(max_diff(si.f, start.f) < 1e-9);
    }
}

TEST_CASE("no-swirl closure is exact") {
    Scenario sc = base_scenario();
    sc.initial_condition = "random_swirl";
    sc.ic_seed = 11;
    sc.ic_meridional = 0.4; // nonzero meridional flow advects f = 0
    sc.no_swirl = true;
    sc.t_end = 0.04;
    sc.snapshot_dt = 0.02;

    const Trajectory traj = run(sc);
    REQUIRE_FALSE(traj.blowup.triggered);
    for (const TrajectorySnapshot& snap : traj.snaps)
        for (double v : snap.v.v_phi.values) CHECK(v == 0.0);
}

TEST_CASE("swirl maximum principle on a short randomized run") {
    Scenario sc = base_scenario();
    sc.initial_condition = "random_swirl";
    sc.ic_seed = 5;
    sc.ic_amplitude = 1.0;
    sc.ic_meridional = 0.5;
    sc.t_end = 0.06;
    sc.snapshot_dt = 0.02;

    const Trajectory traj = run(sc);
    REQUIRE_FALSE(traj.blowup.triggered);
    REQUIRE(traj.max_swirl_history.size() > 10);
    for (std::size_t k = 1; k < traj.max_swirl_history.size(); ++k)
        CHECK(traj.max_swirl_history[k] <= traj.max_swirl_history[k - 1] + 1e-8);
}

TEST_CASE("kinetic energy decays without forcing") {
    Scenario sc = base_scenario();
    sc.initial_condition = "decaying_vortex";
    sc.ic_amplitude = 1.0;
    sc.t_end = 0.1;
    sc.snapshot_dt = 0.02;

    const Trajectory traj = run(sc);
    REQUIRE_FALSE(traj.blowup.triggered);
    double prev = kinetic_energy(traj.snaps.front().v);
    CHECK(prev > 0.0);
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double cur = kinetic_energy(traj.snaps[k].v);
        CHECK(cur <= prev * (1.0 + 1e-9));
        prev = cur;
    }
}

TEST_CASE("manufactured solution: coupled error shrinks at second order") {
    double errs[2];
    int n = 16;
    for (int lev = 0; lev < 2; ++lev, n *= 2) {
        Scenario sc = base_scenario();
        sc.n_rho = n;
        sc.n_z = n;
        sc.initial_condition = "mms";
        sc.forcing = "mms";
        sc.t_end = 0.02;
        sc.snapshot_dt = 0.01;
        const Trajectory traj = run(sc);
        REQUIRE_FALSE(traj.blowup.triggered);

        ManufacturedSolution mms;
        mms.R = sc.rho_max;
        mms.kz = 6.283185307179586 / (sc.z_max - sc.z_min);
        mms.nu = sc.nu;
        const Grid2D g = sc.make_grid();
        ScalarField2D f_exact(g, sc.t_end);
        sample_scalar(f_exact, sc.t_end, &ManufacturedSolution::f, mms);

        // reconstruct f from the stored v_phi
        const AxiField& v = traj.snaps.back().v;
        double err = 0.0;
        for (int i = 0; i < g.nodes_rho(); ++i)
            for (int j = 0; j < g.nodes_z(); ++j)
                err = std::max(err, std::abs(v.v_phi(i, j) * g.rho(i) - f_exact(i, j)));
        errs[lev] = err;
    }
    const double order = std::log2(errs[0] / errs[1]);
    CHECK(order > 1.5);
    CHECK(order < 2.6);
}

TEST_CASE("violent forcing triggers the blow-up report with state preserved") {
    Scenario sc = base_scenario();
    sc.initial_condition = "decaying_vortex";
    sc.forcing = "ramped_swirl";
    sc.forcing_amplitude = 1e5;
    sc.forcing_rate = 40.0;
    sc.forcing_sigma = 0.3;
    sc.forcing_sigma_min = 0.1;
    sc.dt = 2e-4; // deliberately near the stability edge once |v| ramps
    sc.t_end = 0.5;
    sc.snapshot_dt = 0.05;

    const Trajectory traj = run(sc);
    CHECK(traj.blowup.triggered);
    CHECK(traj.blowup.step > 0);
    CHECK_FALSE(traj.blowup.reason.empty());
    for (const TrajectorySnapshot& snap : traj.snaps)
        for (double v : snap.v.v_phi.values) CHECK(std::isfinite(v));
}

TEST_CASE("scenario validation") {
    Scenario sc = base_scenario();
    sc.diffusion = DiffusionMode::Implicit;
    sc.z_boundary = ZBoundary::Mirrored;
    SolverState state;
    state.f = ScalarField2D(sc.make_grid());
    state.omega = ScalarField2D(sc.make_grid());
    state.psi = ScalarField2D(sc.make_grid());
    CHECK_THROWS_AS(step(sc, state, 1e-4), InvalidArgumentError);

    Scenario sc2 = base_scenario();
    sc2.dt = 1.0; // violates the diffusive bound outright
    CHECK_THROWS_AS(run(sc2), InvalidArgumentError);
}

TEST_CASE("velocity reconstruction is discretely divergence-free") {
    Scenario sc = base_scenario();
    sc.initial_condition = "random_swirl";
    sc.ic_seed = 3;
    sc.ic_meridional = 0.6;
    const SolverState state = initial_state(sc);
    const AxiField v = reconstruct_velocity(state, sc);
    const ScalarField2D div = divergence(v);
    for (int i = 1; i < v.grid.n_rho; ++i)
        for (int j = 0; j < v.grid.nodes_z(); ++j)
            CHECK(std::abs(div(i, j)) < 1e-10);
}
