#include "axinse/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "axinse/fields.hpp"
#include "axinse/pressure.hpp"

namespace axinse {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

double uniform_pm1(std::mt19937_64& rng) {
    // portable in [-1, 1): mt19937_64 output is fully specified
    return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

double wrapped_offset(const Grid2D& g, double z, double center) {
    double d = z - center;
    if (!g.z_periodic) return d;
    const double L = g.z_extent();
    d = std::fmod(d + 0.5 * L, L);
    if (d < 0) d += L;
    return d - 0.5 * L;
}

// Ghost-aware z access for solver stencils (f is even across mirrored ends,
// omega and psi are odd).
double zval(const ScalarField2D& u, int i, int j, Parity zpar) {
    const Grid2D& g = u.grid;
    if (g.z_periodic) return u(i, g.wrap_z(j));
    const int m = g.nodes_z();
    if (j < 0) return zpar == Parity::Odd ? -u(i, -j) : u(i, -j);
    if (j >= m) {
        const int r = 2 * (m - 1) - j;
        return zpar == Parity::Odd ? -u(i, r) : u(i, r);
    }
    return u(i, j);
}

struct MmsContext {
    bool active = false;
    ManufacturedSolution mms;
};

MmsContext make_mms_context(const Scenario& sc) {
    MmsContext ctx;
    if (sc.forcing != "mms") return ctx;
    if (sc.z_boundary != ZBoundary::Periodic)
        throw InvalidArgumentError("manufactured forcing requires periodic z");
    ctx.active = true;
    ctx.mms.R = sc.rho_max;
    ctx.mms.kz = kTwoPi / (sc.z_max - sc.z_min);
    ctx.mms.nu = sc.nu;
    return ctx;
}

double ramped_swirl_forcing(const Scenario& sc, const Grid2D& g, double rho, double z,
                            double t) {
    const double ramp = std::max(0.0, t - sc.forcing_ramp_start);
    const double sigma =
        std::max(sc.forcing_sigma_min, sc.forcing_sigma * std::exp(-sc.forcing_rate * ramp));
    const double dz = wrapped_offset(g, z, sc.forcing_z_center);
    const double r2 = (rho * rho + dz * dz) / (sigma * sigma);
    return sc.forcing_amplitude * (sc.nu / (sigma * sigma)) * (rho * rho / (sigma * sigma)) *
           std::exp(-r2);
}

struct WallData {
    std::vector<double> f;     // Dirichlet swirl at the wall
    std::vector<double> zeros; // shared zero trace
};

void apply_bcs(const MmsContext& mms, const WallData& wall, ScalarField2D& f,
               ScalarField2D& omega, double t) {
    const Grid2D& g = f.grid;
    const int n = g.n_rho;
    const int m = g.nodes_z();
    for (int j = 0; j < m; ++j) {
        f(0, j) = 0.0;
        omega(0, j) = 0.0;
        f(n, j) = wall.f[j];
        omega(n, j) = mms.active ? mms.mms.omega_wall(g.z(j), t) : 0.0;
    }
    if (!g.z_periodic) {
        for (int i = 0; i <= n; ++i) {
            omega(i, 0) = 0.0;
            omega(i, m - 1) = 0.0;
        }
    }
}

struct Derivs {
    ScalarField2D df, domega;
};

// Right-hand sides of the coupled system in advective form.  When
// include_diffusion is false the viscous terms are left for an implicit solve.
Derivs eval_rhs(const Scenario& sc, const MmsContext& mms, const ScalarField2D& f,
                const ScalarField2D& omega, const AxiField& vel, double t,
                bool include_diffusion) {
    const Grid2D& g = f.grid;
    Derivs d{ScalarField2D(g, t), ScalarField2D(g, t)};
    const double hr = g.d_rho, hz = g.d_z;
    const double hr2 = hr * hr, hz2 = hz * hz;
    const int n = g.n_rho;
    const int m = g.nodes_z();
    const double nu = sc.nu;

    const int j_begin = 0;
    const int j_end = m; // mirrored f rows evolve at the ends too (even ghosts)

    for (int i = 1; i < n; ++i) {
        const double rho = g.rho(i);
        for (int j = j_begin; j < j_end; ++j) {
            const double vr = vel.v_rho(i, j), vz = vel.v_z(i, j);

            // swirl
            {
                const double fz_p = zval(f, i, j + 1, Parity::Even);
                const double fz_m = zval(f, i, j - 1, Parity::Even);
                const double f_r = (f(i + 1, j) - f(i - 1, j)) / (2.0 * hr);
                const double f_z = (fz_p - fz_m) / (2.0 * hz);
                double rhs = -(vr * f_r + vz * f_z);
                if (include_diffusion) {
                    const double f_rr = (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) / hr2;
                    const double f_zz = (fz_p - 2.0 * f(i, j) + fz_m) / hz2;
                    rhs += nu * (f_rr - f_r / rho + f_zz);
                }
                if (sc.forcing == "ramped_swirl")
                    rhs += ramped_swirl_forcing(sc, g, rho, g.z(j), t);
                else if (mms.active)
                    rhs += mms.mms.forcing_f(rho, g.z(j), t);
                d.df(i, j) = rhs;
            }

            // azimuthal vorticity
            if (g.z_periodic || (j > 0 && j < m - 1)) {
                const double oz_p = zval(omega, i, j + 1, Parity::Odd);
                const double oz_m = zval(omega, i, j - 1, Parity::Odd);
                const double o_r = (omega(i + 1, j) - omega(i - 1, j)) / (2.0 * hr);
                const double o_z = (oz_p - oz_m) / (2.0 * hz);
                const double fz_p = zval(f, i, j + 1, Parity::Even);
                const double fz_m = zval(f, i, j - 1, Parity::Even);
                const double swirl_src =
                    (fz_p * fz_p - fz_m * fz_m) / (2.0 * hz * rho * rho * rho);
                double rhs = -(vr * o_r + vz * o_z) + (vr / rho) * omega(i, j) + swirl_src;
                if (include_diffusion) {
                    const double o_rr =
                        (omega(i + 1, j) - 2.0 * omega(i, j) + omega(i - 1, j)) / hr2;
                    const double o_zz = (oz_p - 2.0 * omega(i, j) + oz_m) / hz2;
                    rhs += nu * (o_rr + o_r / rho - omega(i, j) / (rho * rho) + o_zz);
                }
                if (mms.active) rhs += mms.mms.forcing_omega(rho, g.z(j), t);
                d.domega(i, j) = rhs;
            }
        }
    }
    return d;
}

void axpy_state(ScalarField2D& out, const ScalarField2D& base, double a,
                const ScalarField2D& d1, double b, const ScalarField2D* d2) {
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        double v = base.values[k] + a * d1.values[k];
        if (d2) v += b * d2->values[k];
        out.values[k] = v;
    }
}

WallData wall_data_for(const Scenario& sc, const ScalarField2D& f0) {
    const Grid2D& g = f0.grid;
    WallData w;
    w.zeros.assign(g.nodes_z(), 0.0);
    w.f.resize(g.nodes_z());
    for (int j = 0; j < g.nodes_z(); ++j)
        w.f[j] = sc.swirl_wall ? *sc.swirl_wall : f0(g.n_rho, j);
    return w;
}

} // namespace

Grid2D Scenario::make_grid() const {
    return Grid2D(rho_max, z_min, z_max, n_rho, n_z, z_boundary == ZBoundary::Periodic);
}

double Scenario::stable_dt(double vmax) const {
    const Grid2D g = make_grid();
    const double hr = g.d_rho, hz = g.d_z;
    double dt_bound = 1.0 / (nu * (2.0 / (hr * hr) + 2.0 / (hz * hz)));
    dt_bound = std::min(dt_bound, hr * hr / (2.0 * nu)); // axis drift -(2/rho) d_rho
    if (vmax > 0.0) dt_bound = std::min(dt_bound, std::min(hr, hz) / vmax);
    return cfl_safety * dt_bound;
}

ScalarField2D solve_streamfunction(const ScalarField2D& omega_phi,
                                   const std::vector<double>* wall_dirichlet,
                                   const std::vector<double>* z_lo,
                                   const std::vector<double>* z_hi,
                                   const PoissonOptions& opt) {
    // Axis values of omega never enter the solve: the rhs there carries the
    // factor rho = 0 and the axis row pins psi = 0.  The state invariant
    // omega(axis) = 0 is enforced by the stepper's boundary handling.
    const Grid2D& g = omega_phi.grid;
    ScalarField2D rhs(g, omega_phi.t);
    for (int i = 0; i < g.nodes_rho(); ++i)
        for (int j = 0; j < g.nodes_z(); ++j) rhs(i, j) = -g.rho(i) * omega_phi(i, j);

    const std::vector<double> zeros(g.nodes_z(), 0.0);
    const std::vector<double>& wall = wall_dirichlet ? *wall_dirichlet : zeros;
    if (g.z_periodic) {
        ScalarField2D psi = solve_stream_periodic(rhs, wall);
        psi.t = omega_phi.t;
        return psi;
    }
    const std::vector<double> zeros_r(g.nodes_rho(), 0.0);
    ScalarField2D psi = solve_stream_sor(rhs, wall, z_lo ? *z_lo : zeros_r,
                                         z_hi ? *z_hi : zeros_r, opt);
    psi.t = omega_phi.t;
    return psi;
}

AxiField reconstruct_velocity(const SolverState& state, const Scenario& sc) {
    const Grid2D& g = state.f.grid;
    AxiField v(g, state.t);
    const int n = g.n_rho;
    const int m = g.nodes_z();
    (void)sc;
    for (int i = 0; i <= n; ++i) {
        const double rho = g.rho(i);
        for (int j = 0; j < m; ++j) {
            if (i == 0) {
                v.v_rho(0, j) = 0.0;
                v.v_phi(0, j) = 0.0;
                v.v_z(0, j) = 2.0 * state.psi(1, j) / (g.d_rho * g.d_rho);
                continue;
            }
            const double psi_zp = zval(state.psi, i, j + 1, Parity::Odd);
            const double psi_zm = zval(state.psi, i, j - 1, Parity::Odd);
            v.v_rho(i, j) = -(psi_zp - psi_zm) / (2.0 * g.d_z * rho);
            v.v_phi(i, j) = state.f(i, j) / rho;
            if (i == n) {
                v.v_z(n, j) = (3.0 * state.psi(n, j) - 4.0 * state.psi(n - 1, j) +
                               state.psi(n - 2, j)) /
                              (2.0 * g.d_rho * rho);
            } else {
                v.v_z(i, j) = (state.psi(i + 1, j) - state.psi(i - 1, j)) / (2.0 * g.d_rho * rho);
            }
        }
    }
    return v;
}

SolverState initial_state(const Scenario& sc) {
    const Grid2D g = sc.make_grid();
    SolverState state;
    state.t = 0.0;
    state.f = ScalarField2D(g, 0.0);
    state.omega = ScalarField2D(g, 0.0);

    const double R = g.rho_max;
    const double Lz = g.z_extent();
    const MmsContext mms = make_mms_context(sc);

    if (sc.initial_condition == "zero") {
        // all fields stay zero
    } else if (sc.initial_condition == "rigid_rotation") {
        for (int i = 0; i < g.nodes_rho(); ++i)
            for (int j = 0; j < g.nodes_z(); ++j)
                state.f(i, j) = sc.ic_amplitude * g.rho(i) * g.rho(i);
    } else if (sc.initial_condition == "decaying_vortex") {
        for (int i = 0; i < g.nodes_rho(); ++i) {
            const double r = g.rho(i) / R;
            const double shape = r * r * (1.0 - r * r) * (1.0 - r * r);
            for (int j = 0; j < g.nodes_z(); ++j) {
                const double zh = (g.z(j) - g.z_min) / Lz;
                state.f(i, j) =
                    sc.ic_amplitude * shape * (1.0 + 0.4 * std::cos(kTwoPi * zh));
            }
        }
    } else if (sc.initial_condition == "random_swirl") {
        std::mt19937_64 rng(sc.ic_seed);
        const int modes = std::max(1, sc.ic_modes);
        std::vector<double> ac(modes), as(modes), bs(modes);
        for (int k = 0; k < modes; ++k) {
            ac[k] = uniform_pm1(rng);
            as[k] = g.z_periodic ? uniform_pm1(rng) : 0.0; // sine swirl breaks mirror parity
            bs[k] = uniform_pm1(rng);
        }
        for (int i = 0; i < g.nodes_rho(); ++i) {
            const double r = g.rho(i) / R;
            const double fshape = r * r * (1.0 - r * r) * (1.0 - r * r);
            const double oshape = r * (1.0 - r * r);
            for (int j = 0; j < g.nodes_z(); ++j) {
                const double zh = (g.z(j) - g.z_min) / Lz;
                double fsum = 0.0, osum = 0.0;
                for (int k = 0; k < modes; ++k) {
                    fsum += ac[k] * std::cos(kTwoPi * (k + 1) * zh) +
                            as[k] * std::sin(kTwoPi * (k + 1) * zh);
                    osum += bs[k] * std::sin(kTwoPi * (k + 1) * zh);
                }
                state.f(i, j) = sc.ic_amplitude * fshape * fsum / modes;
                state.omega(i, j) = oshape * osum / modes;
            }
        }
        if (sc.ic_meridional > 0.0) {
            state.psi = solve_streamfunction(state.omega);
            AxiField v = reconstruct_velocity(state, sc);
            double vmax = 0.0;
            for (std::size_t k = 0; k < v.v_rho.values.size(); ++k)
                vmax = std::max(vmax, std::hypot(v.v_rho.values[k], v.v_z.values[k]));
            const double scale = vmax > 0.0 ? sc.ic_meridional / vmax : 0.0;
            for (double& w : state.omega.values) w *= scale;
        } else {
            std::fill(state.omega.values.begin(), state.omega.values.end(), 0.0);
        }
    } else if (sc.initial_condition == "mms") {
        if (!mms.active)
            throw InvalidArgumentError("initial_condition mms requires forcing = mms");
        sample_scalar(state.f, 0.0, &ManufacturedSolution::f, mms.mms);
        sample_scalar(state.omega, 0.0, &ManufacturedSolution::omega, mms.mms);
    } else {
        throw InvalidArgumentError("unknown initial condition: " + sc.initial_condition);
    }

    if (sc.no_swirl) std::fill(state.f.values.begin(), state.f.values.end(), 0.0);

    const WallData wall = wall_data_for(sc, state.f);
    apply_bcs(mms, wall, state.f, state.omega, 0.0);
    state.psi = solve_streamfunction(state.omega);
    return state;
}

SolverState step(const Scenario& sc, const SolverState& state, double dt) {
    const Grid2D& g = state.f.grid;
    const MmsContext mms = make_mms_context(sc);
    const WallData wall = wall_data_for(sc, state.f);
    const bool implicit = sc.diffusion == DiffusionMode::Implicit;
    if (implicit && !g.z_periodic)
        throw InvalidArgumentError("implicit diffusion requires periodic z");

    SolverState cur = state;
    const double t0 = state.t;

    AxiField v0 = reconstruct_velocity(cur, sc);
    Derivs d1 = eval_rhs(sc, mms, cur.f, cur.omega, v0, t0, !implicit);

    SolverState stage;
    stage.f = ScalarField2D(g, t0 + dt);
    stage.omega = ScalarField2D(g, t0 + dt);
    axpy_state(stage.f, cur.f, dt, d1.df, 0.0, nullptr);
    axpy_state(stage.omega, cur.omega, dt, d1.domega, 0.0, nullptr);
    apply_bcs(mms, wall, stage.f, stage.omega, t0 + dt);
    stage.psi = solve_streamfunction(stage.omega);
    stage.t = t0 + dt;

    AxiField v1 = reconstruct_velocity(stage, sc);
    Derivs d2 = eval_rhs(sc, mms, stage.f, stage.omega, v1, t0 + dt, !implicit);

    SolverState next;
    next.f = ScalarField2D(g, t0 + dt);
    next.omega = ScalarField2D(g, t0 + dt);
    axpy_state(next.f, cur.f, 0.5 * dt, d1.df, 0.5 * dt, &d2.df);
    axpy_state(next.omega, cur.omega, 0.5 * dt, d1.domega, 0.5 * dt, &d2.domega);
    apply_bcs(mms, wall, next.f, next.omega, t0 + dt);

    if (implicit) {
        std::vector<double> wall_omega(g.nodes_z(), 0.0);
        if (mms.active)
            for (int j = 0; j < g.nodes_z(); ++j)
                wall_omega[j] = mms.mms.omega_wall(g.z(j), t0 + dt);
        next.f = helmholtz_swirl_periodic(next.f, sc.nu * dt, wall.f);
        next.omega = helmholtz_omega_periodic(next.omega, sc.nu * dt, wall_omega);
        apply_bcs(mms, wall, next.f, next.omega, t0 + dt);
    }

    next.psi = solve_streamfunction(next.omega);
    next.t = t0 + dt;
    next.step_count = state.step_count + 1;

    const double worst = std::max(max_abs(next.f), max_abs(next.omega));
    if (!std::isfinite(worst) || worst > 1e12)
        throw BlowupError("non-finite or overflowing state", next.t, next.step_count);
    return next;
}

Trajectory run(const Scenario& sc) {
    const Grid2D g = sc.make_grid();
    if (sc.t_end <= 0.0 || sc.snapshot_dt <= 0.0)
        throw InvalidArgumentError("t_end and snapshot_dt must be positive");

    SolverState state = initial_state(sc);
    AxiField v0 = reconstruct_velocity(state, sc);
    double vmax = 0.0;
    for (std::size_t k = 0; k < v0.v_rho.values.size(); ++k)
        vmax = std::max(vmax, std::sqrt(v0.v_rho.values[k] * v0.v_rho.values[k] +
                                        v0.v_phi.values[k] * v0.v_phi.values[k] +
                                        v0.v_z.values[k] * v0.v_z.values[k]));

    double dt_raw = sc.dt > 0.0 ? sc.dt : sc.stable_dt(vmax);
    if (dt_raw <= 0.0) throw InvalidArgumentError("nonpositive timestep");
    const long per_snap = std::max(1l, std::lround(sc.snapshot_dt / dt_raw));
    const double dt = sc.snapshot_dt / static_cast<double>(per_snap);
    if (sc.dt > 0.0 && dt > sc.stable_dt(vmax) * (1.0 + 1e-9))
        throw InvalidArgumentError("configured dt violates the initial stability bounds");

    const long n_intervals = std::lround(sc.t_end / sc.snapshot_dt);
    if (std::abs(n_intervals * sc.snapshot_dt - sc.t_end) > 1e-9 * sc.t_end)
        throw InvalidArgumentError("t_end must be a multiple of snapshot_dt");

    Trajectory traj;
    traj.grid = g;
    traj.dt = dt;
    traj.snapshot_dt = sc.snapshot_dt;
    traj.scenario_text = sc.text;
    traj.config_hash = sc.config_hash;

    auto emit = [&](const SolverState& s) {
        TrajectorySnapshot snap;
        snap.v = reconstruct_velocity(s, sc);
        if (sc.with_pressure) snap.q = solve_pressure(snap.v);
        traj.snaps.push_back(std::move(snap));
    };
    emit(state);
    traj.max_swirl_history.push_back(max_abs(state.f));

    const double adv_limit = sc.cfl_safety * std::min(g.d_rho, g.d_z);
    try {
        for (long snap_k = 0; snap_k < n_intervals; ++snap_k) {
            for (long s = 0; s < per_snap; ++s) {
                state = step(sc, state, dt);
                traj.max_swirl_history.push_back(max_abs(state.f));

                const AxiField v = reconstruct_velocity(state, sc);
                double vm = 0.0;
                for (std::size_t k = 0; k < v.v_rho.values.size(); ++k)
                    vm = std::max(vm, std::sqrt(v.v_rho.values[k] * v.v_rho.values[k] +
                                                v.v_phi.values[k] * v.v_phi.values[k] +
                                                v.v_z.values[k] * v.v_z.values[k]));
                if (vm * dt > adv_limit * (1.0 + 1e-9))
                    throw BlowupError("advective CFL bound violated at |v| = " +
                                          std::to_string(vm),
                                      state.t, state.step_count);
            }
            // pin the snapshot time exactly to the cadence
            state.t = (snap_k + 1) * sc.snapshot_dt;
            state.f.t = state.omega.t = state.psi.t = state.t;
            emit(state);
        }
    } catch (const BlowupError& e) {
        traj.blowup.triggered = true;
        traj.blowup.step = e.step;
        traj.blowup.t = e.t;
        traj.blowup.reason = e.what();
    }
    return traj;
}

double kinetic_energy(const AxiField& v) {
    ScalarField2D mag2(v.grid, v.t);
    for (std::size_t k = 0; k < mag2.values.size(); ++k)
        mag2.values[k] = v.v_rho.values[k] * v.v_rho.values[k] +
                         v.v_phi.values[k] * v.v_phi.values[k] +
                         v.v_z.values[k] * v.v_z.values[k];
    return 0.5 * integrate_domain(mag2);
}

double max_abs(const ScalarField2D& u) {
    double worst = 0.0;
    for (double v : u.values) worst = std::max(worst, std::abs(v));
    return worst;
}

} // namespace axinse
