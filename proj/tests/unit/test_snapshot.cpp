#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <unistd.h>

#include "axinse/snapshot.hpp"
#include "test_support.hpp"

using namespace axinse;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static int counter = 0;
    fs::path p = fs::temp_directory_path() / ("axinse_test_" + std::to_string(::getpid()) +
                                              "_" + std::to_string(counter++));
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("velocity snapshot round-trips bit-exactly") {
    Grid2D g(1.25, -0.5, 2.0, 12, 20, true);
    AxiField v(g, 0.375);
    std::mt19937_64 rng(99);
    for (std::size_t k = 0; k < v.v_rho.values.size(); ++k) {
        v.v_rho.values[k] = (rng() >> 11) * 0x1.0p-53 - 0.5;
        v.v_phi.values[k] = (rng() >> 11) * 0x1.0p-53 - 0.5;
        v.v_z.values[k] = (rng() >> 11) * 0x1.0p-53 - 0.5;
    }
    SnapshotMeta meta;
    meta.set("k", 3);
    meta.set("lambda", 0.015625);

    const fs::path dir = temp_dir();
    const std::string path = (dir / "snap.axs").string();
    write_velocity_snapshot(path, v, meta);
    const LoadedSnapshot back = read_snapshot(path);

    REQUIRE(back.kind == 0);
    CHECK(back.v.grid.same_layout(g));
    CHECK(back.v.t == v.t);
    CHECK(back.v.v_rho.values == v.v_rho.values);
    CHECK(back.v.v_phi.values == v.v_phi.values);
    CHECK(back.v.v_z.values == v.v_z.values);
    CHECK(back.meta.get("k") == 3.0);
    CHECK(back.meta.get("lambda") == 0.015625);
    fs::remove_all(dir);
}

TEST_CASE("scalar snapshot round-trips") {
    Grid2D g(1.0, -1.0, 1.0, 8, 8, false);
    ScalarField2D s(g, -0.25);
    for (std::size_t k = 0; k < s.values.size(); ++k) s.values[k] = 0.1 * double(k) - 1.7;

    const fs::path dir = temp_dir();
    const std::string path = (dir / "scalar.axs").string();
    write_scalar_snapshot(path, s);
    const LoadedSnapshot back = read_snapshot(path);
    REQUIRE(back.kind == 1);
    CHECK(back.s.values == s.values);
    CHECK(back.s.t == s.t);
    fs::remove_all(dir);
}

TEST_CASE("trajectory directory round-trips") {
    Grid2D g(1.0, -1.0, 1.0, 10, 10, true);
    const testing::AnalyticField field = testing::gaussian_test_field();
    Trajectory traj = testing::sample_trajectory(field, g, 0.0, 0.2, 5);
    traj.scenario_text = "initial_condition = decaying_vortex\n";
    traj.config_hash = 0xdeadbeefcafe1234ull;
    traj.max_swirl_history = {1.0, 0.9, 0.8};

    const fs::path dir = temp_dir();
    save_trajectory(traj, dir.string());
    const Trajectory back = load_trajectory(dir.string());

    REQUIRE(back.size() == traj.size());
    CHECK(back.config_hash == traj.config_hash);
    CHECK(back.scenario_text == traj.scenario_text);
    CHECK(back.max_swirl_history == traj.max_swirl_history);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        CHECK(back.snaps[k].v.v_phi.values == traj.snaps[k].v.v_phi.values);
        CHECK(back.snaps[k].q.values == traj.snaps[k].q.values);
        CHECK(back.snaps[k].t() == traj.snaps[k].t());
    }
    fs::remove_all(dir);
}

TEST_CASE("corrupted snapshot files are rejected") {
    const fs::path dir = temp_dir();
    const std::string path = (dir / "bad.axs").string();
    {
        std::FILE* f = std::fopen(path.c_str(), "wb");
        std::fputs("NOTASNAPSHOT", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(read_snapshot(path), Error);
    fs::remove_all(dir);
}
