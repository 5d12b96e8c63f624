#include "axinse/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "axinse/fields.hpp"

namespace axinse {

namespace {

double wrapped_offset(const Grid2D& g, double z, double center) {
    double d = z - center;
    if (!g.z_periodic) return d;
    const double L = g.z_extent();
    d = std::fmod(d + 0.5 * L, L);
    if (d < 0) d += L;
    return d - 0.5 * L;
}

// Snapshot index range covering [t_begin, t_end] plus the per-snapshot step.
struct TimeRange {
    std::size_t k0, k1;
    double h;
    double t0; // time of snapshot k0
};

TimeRange covering_range(const Trajectory& traj, double t_begin, double t_end) {
    if (traj.size() < 2) throw InvalidArgumentError("trajectory needs at least two snapshots");
    const double h = traj.snapshot_dt > 0.0
                         ? traj.snapshot_dt
                         : (traj.t_last() - traj.t_first()) / (traj.size() - 1);
    const double eps = 1e-9 * std::max(1.0, std::abs(traj.t_last()));
    if (t_begin < traj.t_first() - eps || t_end > traj.t_last() + eps)
        throw OutOfDomainError("time window [" + std::to_string(t_begin) + ", " +
                               std::to_string(t_end) + "] outside the sampled span");
    auto clampi = [&](long k) {
        return static_cast<std::size_t>(std::clamp<long>(k, 0, static_cast<long>(traj.size()) - 1));
    };
    TimeRange r;
    r.h = h;
    r.k0 = clampi(static_cast<long>(std::floor((t_begin - traj.t_first()) / h)));
    r.k1 = clampi(static_cast<long>(std::ceil((t_end - traj.t_first()) / h)));
    if (r.k1 <= r.k0) r.k1 = std::min(r.k0 + 1, traj.size() - 1);
    r.t0 = traj.snaps[r.k0].t();
    return r;
}

double lerp_series(const std::vector<double>& vals, const TimeRange& tr, double t) {
    const double pos = (t - tr.t0) / tr.h;
    const auto k = static_cast<std::size_t>(
        std::clamp<long>(static_cast<long>(std::floor(pos)), 0,
                         static_cast<long>(vals.size()) - 2));
    const double s = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
    return vals[k] * (1.0 - s) + vals[k + 1] * s;
}

double window_trapezoid(const std::vector<double>& vals, const TimeRange& tr, double a,
                        double b) {
    return trapezoid_clipped(vals.data(), static_cast<int>(vals.size()), tr.t0, tr.h, a, b);
}

double smooth5(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }
double dsmooth5(double s) { return 30.0 * s * s * (1.0 + s * (-2.0 + s)); }
double ddsmooth5(double s) { return 60.0 * s * (1.0 + s * (-3.0 + 2.0 * s)); }

// falling C^2 profile: 1 for x <= a, 0 for x >= b
struct Fall {
    double a, b;
    double v(double x) const {
        if (x <= a) return 1.0;
        if (x >= b) return 0.0;
        return 1.0 - smooth5((x - a) / (b - a));
    }
    double d(double x) const {
        if (x <= a || x >= b) return 0.0;
        return -dsmooth5((x - a) / (b - a)) / (b - a);
    }
    double dd(double x) const {
        if (x <= a || x >= b) return 0.0;
        return -ddsmooth5((x - a) / (b - a)) / ((b - a) * (b - a));
    }
};

} // namespace

FunctionalReport compute_functionals(const Trajectory& traj, const ParabolicCylinder& cyl,
                                     const std::vector<MixedNormSpec>& mixed_specs,
                                     bool allow_truncation) {
    const Grid2D& g = traj.grid;
    const double r = cyl.r;
    if (!allow_truncation) require_section_inside(g, cyl.b, r);

    const double t_begin = cyl.t_begin();
    const TimeRange tr = covering_range(traj, t_begin, cyl.t0);
    const std::size_t count = tr.k1 - tr.k0 + 1;

    std::vector<double> i_v2(count), i_v3(count), i_grad(count), i_q32(count);
    std::vector<std::vector<double>> i_ms(mixed_specs.size(), std::vector<double>(count));

    bool need_pressure = true;
    for (std::size_t k = 0; k < count; ++k) {
        const TrajectorySnapshot& snap = traj.snaps[tr.k0 + k];
        const ScalarField2D mag = magnitude(snap.v);
        i_v2[k] = integrate_power_section(mag, cyl.b, r, 2.0, allow_truncation);
        i_v3[k] = integrate_power_section(mag, cyl.b, r, 3.0, allow_truncation);
        const ScalarField2D gn = grad_norm_squared(snap.v);
        i_grad[k] = integrate_section(gn, cyl.b, r, allow_truncation);
        if (snap.has_pressure())
            i_q32[k] = integrate_power_section(snap.q, cyl.b, r, 1.5, allow_truncation);
        else
            need_pressure = false;
        for (std::size_t s = 0; s < mixed_specs.size(); ++s) {
            const double sp = rational_double(mixed_specs[s].s);
            const double lp = rational_double(mixed_specs[s].l);
            const double in = integrate_power_section(mag, cyl.b, r, sp, allow_truncation);
            i_ms[s][k] = std::pow(in, lp / sp);
        }
    }

    FunctionalReport rep;
    rep.cylinder = cyl;

    double a_sup = std::max(lerp_series(i_v2, tr, t_begin), lerp_series(i_v2, tr, cyl.t0));
    for (std::size_t k = 0; k < count; ++k) {
        const double t = tr.t0 + tr.h * static_cast<double>(k);
        if (t >= t_begin && t <= cyl.t0) a_sup = std::max(a_sup, i_v2[k]);
    }
    rep.A = a_sup / r;
    rep.E = window_trapezoid(i_grad, tr, t_begin, cyl.t0) / r;
    rep.C = window_trapezoid(i_v3, tr, t_begin, cyl.t0) / (r * r);
    rep.H = window_trapezoid(i_v2, tr, t_begin, cyl.t0) / (r * r * r);
    rep.D = need_pressure ? window_trapezoid(i_q32, tr, t_begin, cyl.t0) / (r * r)
                          : std::numeric_limits<double>::quiet_NaN();

    for (std::size_t s = 0; s < mixed_specs.size(); ++s) {
        MixedNormValue mv;
        mv.spec = mixed_specs[s];
        const double kappa = rational_double(mixed_specs[s].kappa);
        mv.value = window_trapezoid(i_ms[s], tr, t_begin, cyl.t0) / std::pow(r, kappa);
        rep.M.push_back(mv);
    }

    // monitor suprema over section nodes and window snapshot times
    const double eps_t = 1e-9 * std::max(1.0, std::abs(cyl.t0));
    for (std::size_t k = 0; k < count; ++k) {
        const TrajectorySnapshot& snap = traj.snaps[tr.k0 + k];
        const double t = snap.t();
        if (t < t_begin - eps_t || t > cyl.t0 + eps_t) continue;
        const double sq = std::sqrt(std::max(0.0, cyl.t0 - t));
        for (int i = 0; i < g.nodes_rho(); ++i) {
            if (g.rho(i) >= r) continue;
            for (int j = 0; j < g.nodes_z(); ++j) {
                if (std::abs(wrapped_offset(g, g.z(j), cyl.b)) >= r) continue;
                const double vbar = std::hypot(snap.v.v_rho(i, j), snap.v.v_z(i, j));
                rep.monitors.sup_sqrt_t = std::max(rep.monitors.sup_sqrt_t, sq * vbar);
                rep.monitors.sup_xprime = std::max(rep.monitors.sup_xprime, g.rho(i) * vbar);
                rep.monitors.sup_swirl =
                    std::max(rep.monitors.sup_swirl, g.rho(i) * std::abs(snap.v.v_phi(i, j)));
            }
        }
    }
    return rep;
}

void validate_report_ladder(const std::vector<FunctionalReport>& ladder, double rel_tol) {
    for (std::size_t k = 1; k < ladder.size(); ++k) {
        const FunctionalReport& lo = ladder[k - 1];
        const FunctionalReport& hi = ladder[k];
        if (hi.cylinder.r <= lo.cylinder.r)
            throw InvalidArgumentError("report ladder must have increasing radii");
        const double rl = lo.cylinder.r, rh = hi.cylinder.r;
        auto check = [&](double a, double b, const char* name) {
            if (b < a * (1.0 - rel_tol) - 1e-300)
                throw InvalidArgumentError(std::string("ladder monotonicity violated for ") +
                                           name);
        };
        check(rl * lo.A, rh * hi.A, "r*A");
        check(rl * lo.E, rh * hi.E, "r*E");
        check(rl * rl * lo.C, rh * rh * hi.C, "r^2*C");
        if (std::isfinite(lo.D) && std::isfinite(hi.D))
            check(rl * rl * lo.D, rh * rh * hi.D, "r^2*D");
    }
}

double CutoffBump::value(double rho, double z, double t) const {
    const Fall fr{r_flat, r_supp};
    const double ramp = t_flat > t_start ? std::clamp((t - t_start) / (t_flat - t_start), 0.0, 1.0)
                                         : (t >= t_flat ? 1.0 : 0.0);
    return fr.v(rho) * fr.v(std::abs(z - b)) * smooth5(ramp);
}

double CutoffBump::dt(double rho, double z, double t) const {
    const Fall fr{r_flat, r_supp};
    if (t <= t_start || t >= t_flat) return 0.0;
    const double s = (t - t_start) / (t_flat - t_start);
    return fr.v(rho) * fr.v(std::abs(z - b)) * dsmooth5(s) / (t_flat - t_start);
}

double CutoffBump::laplacian(double rho, double z, double t) const {
    const Fall fr{r_flat, r_supp};
    const double ramp = t_flat > t_start ? std::clamp((t - t_start) / (t_flat - t_start), 0.0, 1.0)
                                         : 1.0;
    const double T = smooth5(ramp);
    const double az = std::abs(z - b);
    const double Pz = fr.v(az);
    const double Pr = fr.v(rho);
    // radial part (Pr'' + Pr'/rho); Pr is flat near the axis so the 1/rho term
    // only acts where rho >= r_flat > 0
    double radial = fr.dd(rho);
    if (rho > 0.0) radial += fr.d(rho) / rho;
    const double zpart = fr.dd(az); // |z-b| second derivative, symmetric
    return (radial * Pz + Pr * zpart) * T;
}

double CutoffBump::grad_rho(double rho, double z, double t) const {
    const Fall fr{r_flat, r_supp};
    const double ramp = t_flat > t_start ? std::clamp((t - t_start) / (t_flat - t_start), 0.0, 1.0)
                                         : 1.0;
    return fr.d(rho) * fr.v(std::abs(z - b)) * smooth5(ramp);
}

double CutoffBump::grad_z(double rho, double z, double t) const {
    const Fall fr{r_flat, r_supp};
    const double ramp = t_flat > t_start ? std::clamp((t - t_start) / (t_flat - t_start), 0.0, 1.0)
                                         : 1.0;
    const double sign = z >= b ? 1.0 : -1.0;
    return fr.v(rho) * sign * fr.d(std::abs(z - b)) * smooth5(ramp);
}

EnergyInequalityReport check_energy_inequality(const Trajectory& traj, const CutoffBump& cutoff,
                                               double t) {
    const Grid2D& g = traj.grid;
    if (cutoff.r_flat <= 0.0 || cutoff.r_supp <= cutoff.r_flat)
        throw InvalidArgumentError("cutoff needs 0 < r_flat < r_supp");
    if (cutoff.r_supp >= g.rho_max)
        throw OutOfDomainError("cutoff support must vanish before the wall");
    if (cutoff.b - cutoff.r_supp <= g.z_min || cutoff.b + cutoff.r_supp >= g.z_max)
        throw OutOfDomainError("cutoff support must lie inside the z range (no wrap)");
    if (cutoff.t_flat <= cutoff.t_start)
        throw InvalidArgumentError("cutoff needs t_start < t_flat");
    if (cutoff.t_flat > t)
        throw InvalidArgumentError("evaluation time precedes the cutoff plateau");

    const TimeRange tr = covering_range(traj, cutoff.t_start, t);
    const std::size_t count = tr.k1 - tr.k0 + 1;

    std::vector<double> dissip(count), rhs_int(count);
    for (std::size_t k = 0; k < count; ++k) {
        const TrajectorySnapshot& snap = traj.snaps[tr.k0 + k];
        if (!snap.has_pressure())
            throw InvalidArgumentError("energy inequality audit needs pressure snapshots");
        const double ts = snap.t();
        const ScalarField2D gn = grad_norm_squared(snap.v);
        ScalarField2D phi_gn(g, ts), rhs_field(g, ts);
        for (int i = 0; i < g.nodes_rho(); ++i) {
            for (int j = 0; j < g.nodes_z(); ++j) {
                const double rho = g.rho(i), zz = g.z(j);
                const double phi = cutoff.value(rho, zz, ts);
                phi_gn(i, j) = phi * gn(i, j);
                const double vr = snap.v.v_rho(i, j), vp = snap.v.v_phi(i, j),
                             vz = snap.v.v_z(i, j);
                const double v2 = vr * vr + vp * vp + vz * vz;
                const double adv = vr * cutoff.grad_rho(rho, zz, ts) +
                                   vz * cutoff.grad_z(rho, zz, ts);
                rhs_field(i, j) = v2 * (cutoff.laplacian(rho, zz, ts) +
                                        cutoff.dt(rho, zz, ts)) +
                                  adv * (v2 + 2.0 * snap.q(i, j));
            }
        }
        dissip[k] = integrate_domain(phi_gn);
        rhs_int[k] = integrate_domain(rhs_field);
    }

    // final-time energy with phi at t: interpolate the snapshot fields linearly
    const auto [kl, kh] = traj.bracket(t);
    const double s = kl == kh ? 0.0
                              : (t - traj.snaps[kl].t()) /
                                    (traj.snaps[kh].t() - traj.snaps[kl].t());
    ScalarField2D phi_v2(g, t);
    for (int i = 0; i < g.nodes_rho(); ++i) {
        for (int j = 0; j < g.nodes_z(); ++j) {
            auto comp = [&](const ScalarField2D& a, const ScalarField2D& b) {
                return a(i, j) * (1.0 - s) + b(i, j) * s;
            };
            const double vr = comp(traj.snaps[kl].v.v_rho, traj.snaps[kh].v.v_rho);
            const double vp = comp(traj.snaps[kl].v.v_phi, traj.snaps[kh].v.v_phi);
            const double vz = comp(traj.snaps[kl].v.v_z, traj.snaps[kh].v.v_z);
            phi_v2(i, j) =
                cutoff.value(g.rho(i), g.z(j), t) * (vr * vr + vp * vp + vz * vz);
        }
    }

    EnergyInequalityReport rep;
    rep.cutoff = cutoff;
    rep.t = t;
    rep.lhs = integrate_domain(phi_v2) +
              2.0 * window_trapezoid(dissip, tr, cutoff.t_start, t);
    rep.rhs = window_trapezoid(rhs_int, tr, cutoff.t_start, t);
    rep.slack = rep.rhs - rep.lhs;

    // declared quadrature tolerance: second-order spatial + temporal error
    // bound with measured field and cutoff scales
    double vmax = 0.0, qmax = 0.0, gmax = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const TrajectorySnapshot& snap = traj.snaps[tr.k0 + k];
        const ScalarField2D mag = magnitude(snap.v);
        for (double m : mag.values) vmax = std::max(vmax, std::abs(m));
        for (double qv : snap.q.values) qmax = std::max(qmax, std::abs(qv));
        const ScalarField2D gn = grad_norm_squared(snap.v);
        for (double gv : gn.values) gmax = std::max(gmax, gv);
    }
    double phi_scale = 1.0;
    const double width = cutoff.r_supp - cutoff.r_flat;
    phi_scale += 2.0 / width + 4.0 / (width * width) +
                 2.0 / (cutoff.t_flat - cutoff.t_start);
    const double window = t - cutoff.t_start;
    const double vol = 20.0 * cutoff.r_supp * cutoff.r_supp * cutoff.r_supp;
    const double theta = (vmax * vmax + vmax * vmax * vmax + qmax * vmax + gmax) * phi_scale;
    const double h2 = g.d_rho * g.d_rho + g.d_z * g.d_z;
    const double dt2 = tr.h * tr.h;
    rep.declared_tolerance = 25.0 * (h2 + dt2) * theta * vol * (1.0 + window);
    return rep;
}

TypeOneMonitors type1_monitors(const Trajectory& traj, double t0, double r1) {
    const Grid2D& g = traj.grid;
    if (traj.empty()) throw InvalidArgumentError("empty trajectory");
    if (t0 < traj.t_last() - 1e-9 * std::max(1.0, std::abs(traj.t_last())))
        throw InvalidArgumentError("t0 must not precede the last snapshot");
    require_section_inside(g, g.z_periodic ? g.z_min : 0.5 * (g.z_min + g.z_max), r1);

    TypeOneMonitors out;
    out.t0 = t0;
    out.r1 = r1;
    const double zc = g.z_periodic ? g.z_min : 0.5 * (g.z_min + g.z_max);

    double running = 0.0;
    double eps_star = std::numeric_limits<double>::infinity();
    for (const TrajectorySnapshot& snap : traj.snaps) {
        const double sq = std::sqrt(std::max(0.0, t0 - snap.t()));
        double gmax = 0.0;
        for (int i = 0; i < g.nodes_rho(); ++i) {
            for (int j = 0; j < g.nodes_z(); ++j) {
                const double vr = snap.v.v_rho(i, j), vp = snap.v.v_phi(i, j),
                             vz = snap.v.v_z(i, j);
                const double vbar = std::hypot(vr, vz);
                const double vmag = std::sqrt(vr * vr + vp * vp + vz * vz);
                out.suprema.sup_sqrt_t = std::max(out.suprema.sup_sqrt_t, sq * vbar);
                out.suprema.sup_xprime = std::max(out.suprema.sup_xprime, g.rho(i) * vbar);
                out.suprema.sup_swirl =
                    std::max(out.suprema.sup_swirl, g.rho(i) * std::abs(vp));
                if (g.rho(i) <= r1 && std::abs(wrapped_offset(g, g.z(j), zc)) <= r1)
                    gmax = std::max(gmax, vmag);
            }
        }
        running = std::max(running, gmax);
        out.times.push_back(snap.t());
        out.g_series.push_back(gmax);
        out.m_series.push_back(running);
        if (sq > 0.0) eps_star = std::min(eps_star, running * sq);
    }
    out.epsilon_star = std::isfinite(eps_star) ? eps_star : 0.0;
    return out;
}

InterpolationAudit interpolation_audit(const FunctionalReport& report, const Rational& s,
                                       const Rational& l) {
    if (!admissible_as3(s, l))
        throw InvalidArgumentError("(s, l) not admissible for the interpolation bound");
    const ExponentReport er = exponent_report(s, l);

    const MixedNormValue* entry = nullptr;
    for (const MixedNormValue& mv : report.M)
        if (mv.spec.s == s && mv.spec.l == l) entry = &mv;
    if (!entry)
        throw InvalidArgumentError("report carries no mixed norm for the requested (s, l)");

    InterpolationAudit audit;
    audit.s = s;
    audit.l = l;
    audit.m = er.m;
    audit.mu = er.mu;

    if (report.C == 0.0) {
        audit.ratio = 0.0; // stated convention for the zero trajectory
        return audit;
    }
    const double m = rational_double(er.m);
    const double mu = rational_double(er.mu);
    const double denom = std::pow(report.A, mu) * std::pow(entry->value, 1.0 / m) *
                         std::pow(report.E + report.H, (m - 1.0) / m);
    if (denom == 0.0 || !std::isfinite(denom)) {
        audit.defined = false;
        audit.ratio = std::numeric_limits<double>::quiet_NaN();
        return audit;
    }
    audit.ratio = report.C / denom;
    return audit;
}

} // namespace axinse
