#pragma once

// Shared analytic fixtures for unit and acceptance tests: closed-form fields,
// trajectory samplers, and the scaling / self-similar families the oracles use.

#include <cmath>
#include <functional>

#include "axinse/grid.hpp"
#include "axinse/trajectory.hpp"

namespace axinse::testing {

using SpaceTimeFn = std::function<double(double rho, double z, double t)>;

struct AnalyticField {
    SpaceTimeFn v_rho, v_phi, v_z, q;
};

inline AxiField sample_velocity_field(const AnalyticField& field, const Grid2D& g, double t) {
    AxiField v(g, t);
    for (int i = 0; i < g.nodes_rho(); ++i)
        for (int j = 0; j < g.nodes_z(); ++j) {
            v.v_rho(i, j) = field.v_rho(g.rho(i), g.z(j), t);
            v.v_phi(i, j) = field.v_phi(g.rho(i), g.z(j), t);
            v.v_z(i, j) = field.v_z(g.rho(i), g.z(j), t);
        }
    return v;
}

inline Trajectory sample_trajectory(const AnalyticField& field, const Grid2D& g, double t_lo,
                                    double t_hi, int n_snaps, bool with_pressure = true) {
    Trajectory traj;
    traj.grid = g;
    traj.snapshot_dt = (t_hi - t_lo) / (n_snaps - 1);
    traj.dt = traj.snapshot_dt;
    for (int k = 0; k < n_snaps; ++k) {
        const double t = t_lo + traj.snapshot_dt * k;
        TrajectorySnapshot snap;
        snap.v = sample_velocity_field(field, g, t);
        if (with_pressure && field.q) {
            snap.q = ScalarField2D(g, t);
            for (int i = 0; i < g.nodes_rho(); ++i)
                for (int j = 0; j < g.nodes_z(); ++j)
                    snap.q(i, j) = field.q(g.rho(i), g.z(j), t);
        }
        traj.snaps.push_back(std::move(snap));
    }
    return traj;
}

/// Smooth axis-regular test field with genuine curvature in every component,
/// plus a matching (arbitrary) smooth pressure sample.  Not a solution of
/// anything; used for quadrature, scaling, and resampling oracles.
inline AnalyticField gaussian_test_field() {
    AnalyticField f;
    auto bump = [](double rho, double z) { return std::exp(-rho * rho - z * z); };
    f.v_rho = [bump](double rho, double z, double t) {
        return rho * z * bump(rho, z) / (1.0 + 0.5 * t * t);
    };
    f.v_phi = [bump](double rho, double z, double t) {
        return rho * bump(rho, z) * (1.0 + 0.25 * std::sin(t));
    };
    f.v_z = [bump](double rho, double z, double t) {
        return (2.0 - rho * rho) * bump(rho, z) / (1.0 + t * t);
    };
    f.q = [bump](double rho, double z, double t) {
        return (rho * rho - z * z) * bump(rho, z) / (1.0 + 0.5 * t * t);
    };
    return f;
}

/// u_lambda(y, s) = lambda v(lambda y, lambda^2 s), q_lambda = lambda^2 q(...).
inline AnalyticField scaled_field(const AnalyticField& f, double lambda) {
    AnalyticField out;
    out.v_rho = [f, lambda](double rho, double z, double t) {
        return lambda * f.v_rho(lambda * rho, lambda * z, lambda * lambda * t);
    };
    out.v_phi = [f, lambda](double rho, double z, double t) {
        return lambda * f.v_phi(lambda * rho, lambda * z, lambda * lambda * t);
    };
    out.v_z = [f, lambda](double rho, double z, double t) {
        return lambda * f.v_z(lambda * rho, lambda * z, lambda * lambda * t);
    };
    out.q = [f, lambda](double rho, double z, double t) {
        return lambda * lambda * f.q(lambda * rho, lambda * z, lambda * lambda * t);
    };
    return out;
}

/// Self-similar profile v = (-t)^{-1/2} V(x / sqrt(-t)) with |V| maximized on
/// the axis at xi_3 = z_off, plus an optional bounded perturbation W(x) whose
/// relative weight decays as t -> 0^-: the zoom ladder contracts toward the
/// self-similar fixed point at a measurable geometric rate.
inline AnalyticField self_similar_field(double z_off = 0.5, double perturbation = 0.3) {
    AnalyticField f;
    auto profile = [z_off](double xr, double xz) {
        const double d = (xz - z_off);
        return std::exp(-xr * xr - d * d);
    };
    auto w_bump = [](double rho, double z) { return std::exp(-rho * rho - z * z); };
    f.v_rho = [profile](double rho, double z, double t) {
        const double lam = std::sqrt(-t);
        const double xr = rho / lam, xz = z / lam;
        return 0.5 * xr * profile(xr, xz) / lam;
    };
    f.v_phi = [profile, w_bump, perturbation](double rho, double z, double t) {
        const double lam = std::sqrt(-t);
        const double xr = rho / lam, xz = z / lam;
        return xr * profile(xr, xz) / lam + perturbation * rho * w_bump(rho, z);
    };
    f.v_z = [profile, w_bump, perturbation](double rho, double z, double t) {
        const double lam = std::sqrt(-t);
        const double xr = rho / lam, xz = z / lam;
        return profile(xr, xz) / lam + perturbation * w_bump(rho, z);
    };
    f.q = nullptr;
    return f;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max({std::abs(want), std::abs(got), 1e-300});
}

} // namespace axinse::testing
