#include <doctest.h>

#include <cmath>

#include "axinse/rescaler.hpp"
#include "test_support.hpp"

using namespace axinse;
using namespace axinse::testing;

namespace {

// self-similar trajectory tuned for the zoom ladder tests
Trajectory self_similar_trajectory(double perturbation, int n_rho = 64, int n_z = 96,
                                   int n_snaps = 106) {
    Grid2D g(1.0, -1.3, 1.3, n_rho, n_z, false);
    const AnalyticField f = self_similar_field(0.5, perturbation);
    return sample_trajectory(f, g, -0.5, -0.08, n_snaps, false);
}

} // namespace

TEST_CASE("peak detection") {
    SUBCASE("constant amplitude yields the single k = 0 record") {
        Grid2D g(1.0, -1.0, 1.0, 16, 16, true);
        AnalyticField f;
        f.v_rho = f.v_phi = [](double, double, double) { return 0.0; };
        f.v_z = [](double, double, double) { return 1.0; };
        const Trajectory traj = sample_trajectory(f, g, 0.0, 0.5, 11, false);
        const std::vector<PeakRecord> recs = detect_peaks(traj, 0.5);
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].k == 0);
        CHECK(recs[0].M_k == doctest::Approx(1.0));
    }

    SUBCASE("G(t) = (t0 - t)^{-1/2} climbs the record ladder at the ratio step") {
        Grid2D g(1.0, -1.0, 1.0, 24, 24, false);
        AnalyticField f;
        f.v_rho = f.v_phi = [](double, double, double) { return 0.0; };
        f.v_z = [](double rho, double z, double t) {
            return std::exp(-rho * rho - z * z) / std::sqrt(-t);
        };
        const Trajectory traj = sample_trajectory(f, g, -1.0, -0.01, 100, false);
        const std::vector<PeakRecord> recs = detect_peaks(traj, 0.5);
        REQUIRE(recs.size() >= 5);
        for (std::size_t k = 1; k < recs.size(); ++k) {
            CHECK(recs[k].M_k / recs[k - 1].M_k >= 1.1);
            CHECK(recs[k].t_k > recs[k - 1].t_k);
        }
    }

    SUBCASE("empty trajectory is rejected") {
        Trajectory traj;
        CHECK_THROWS_AS(detect_peaks(traj, 0.5), InvalidArgumentError);
    }
}

TEST_CASE("zoom construction") {
    SUBCASE("rigid rotation: normalization is exact by construction") {
        Grid2D g(1.0, -1.0, 1.0, 32, 32, true);
        AnalyticField f;
        const double omega = 0.5;
        f.v_rho = f.v_z = [](double, double, double) { return 0.0; };
        f.v_phi = [omega](double rho, double, double) { return omega * rho; };
        const Trajectory traj = sample_trajectory(f, g, 0.0, 1.0, 21, false);

        PeakRecord peak;
        peak.k = 0;
        peak.t_k = 1.0;
        peak.rho_k = g.rho(16);
        peak.z_k = 0.0;
        peak.M_k = omega * g.rho(16);

        ZoomOptions opts;
        opts.n_rho = 16;
        opts.n_z = 16;
        opts.n_t = 3;
        const double a = peak.M_k * peak.rho_k * 1.2; // window covers the mapped peak
        const ZoomSnapshot snap = zoom(traj, peak, a, opts);
        CHECK(std::abs(snap.peak_value - 1.0) < 1e-6);

        ZoomVerification check = verify_zoom(snap, traj, {}, {});
        CHECK(check.normalization_ok);

        // corrupted-lambda fixture: doubling the field breaks normalization at 2
        ZoomSnapshot corrupted = snap;
        corrupted.peak_value *= 2.0;
        for (AxiField& u : corrupted.u)
            for (double& x : u.v_phi.values) x *= 2.0;
        const ZoomVerification bad = verify_zoom(corrupted, traj, {}, {});
        CHECK_FALSE(bad.normalization_ok);
        CHECK(bad.normalization == doctest::Approx(2.0).epsilon(1e-5));
    }

    SUBCASE("zero field peak is a degenerate precondition") {
        Grid2D g(1.0, -1.0, 1.0, 16, 16, true);
        AnalyticField zero;
        zero.v_rho = zero.v_phi = zero.v_z = [](double, double, double) { return 0.0; };
        const Trajectory traj = sample_trajectory(zero, g, 0.0, 0.5, 6, false);
        const std::vector<PeakRecord> recs = detect_peaks(traj, 0.5);
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].M_k == 0.0);
        CHECK_THROWS_AS(zoom(traj, recs[0], 0.2), InvalidArgumentError);
    }

    SUBCASE("window escaping the samples names the maximal admissible a") {
        Grid2D g(1.0, -1.0, 1.0, 16, 16, true);
        AnalyticField f;
        f.v_rho = f.v_phi = [](double, double, double) { return 0.0; };
        f.v_z = [](double, double, double) { return 2.0; };
        const Trajectory traj = sample_trajectory(f, g, 0.0, 0.1, 6, false);
        PeakRecord peak{0, 0.1, 0.0, 0.0, 2.0};
        const double a_max = max_admissible_window(traj, peak);
        CHECK_THROWS_AS(zoom(traj, peak, 2.0 * a_max + 0.1), OutOfDomainError);
        try {
            zoom(traj, peak, 2.0 * a_max + 0.1);
        } catch (const OutOfDomainError& e) {
            CHECK(std::string(e.what()).find("admissible") != std::string::npos);
        }
    }
}

TEST_CASE("self-similar ladder: zoom fixed point") {
    const Trajectory traj = self_similar_trajectory(0.3);
    PeakOptions popts;
    popts.ratio = 1.15;
    const std::vector<PeakRecord> recs = detect_peaks(traj, 0.8, popts);
    REQUIRE(recs.size() >= 4);

    ZoomOptions zopts;
    zopts.n_rho = 24;
    zopts.n_z = 32;
    zopts.n_t = 5;

    std::vector<ZoomSnapshot> zooms;
    for (const PeakRecord& rec : recs) {
        const double a = 0.4;
        if (a > max_admissible_window(traj, rec) || rec.M_k * rec.rho_k > a) continue;
        zooms.push_back(zoom(traj, rec, a, zopts));
    }
    REQUIRE(zooms.size() >= 4);

    SUBCASE("holder distances decrease along the ladder") {
        std::vector<double> dist;
        for (std::size_t k = 0; k + 1 < zooms.size(); ++k)
            dist.push_back(holder_distance(zooms[k], zooms[k + 1]));
        int decreasing = 0;
        for (std::size_t k = 0; k + 1 < dist.size(); ++k)
            if (dist[k + 1] < dist[k]) ++decreasing;
        CHECK(decreasing >= static_cast<int>(dist.size()) - 1 - 1); // allow one inversion
        CHECK(dist.back() < dist.front());
    }

    SUBCASE("identical snapshots have distance zero") {
        CHECK(holder_distance(zooms[0], zooms[0]) == 0.0);
    }

    SUBCASE("normalization and boundedness hold for every zoom") {
        for (const ZoomSnapshot& snap : zooms) {
            const ZoomVerification check = verify_zoom(snap, traj, {}, {0.1, 0.2});
            CHECK(check.normalization_ok);
            CHECK(check.bounded_ok);
        }
    }

    SUBCASE("functional transport matches within resampling error") {
        const ZoomSnapshot& snap = zooms.back();
        const ZoomVerification check = verify_zoom(snap, traj, {}, {0.2, 0.4});
        for (double err : check.transport_error) CHECK(err < 0.15);
    }

    SUBCASE("geometry mismatch is rejected") {
        ZoomOptions other = zopts;
        other.n_rho = 12;
        const ZoomSnapshot small = zoom(traj, recs[2], 0.4, other);
        CHECK_THROWS_AS(holder_distance(zooms[0], small), InvalidArgumentError);
    }
}
