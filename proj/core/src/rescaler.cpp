#include "axinse/rescaler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "axinse/interp.hpp"

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

double node_speed(const AxiField& v, int i, int j) {
    const double vr = v.v_rho(i, j), vp = v.v_phi(i, j), vz = v.v_z(i, j);
    return std::sqrt(vr * vr + vp * vp + vz * vz);
}

// Velocity sample at (rho, z, t): bicubic in space on the bracketing snapshots,
// linear in time.  rho may be negative for the meridional-slice convention, in
// which case the odd components flip sign.
VelocitySample sample_velocity(const Trajectory& traj, double rho, double z, double t) {
    const double sign = rho < 0.0 ? -1.0 : 1.0;
    const double ar = std::abs(rho);
    const auto [kl, kh] = traj.bracket(t);
    const double w = kl == kh ? 0.0
                              : std::clamp((t - traj.snaps[kl].t()) /
                                               (traj.snaps[kh].t() - traj.snaps[kl].t()),
                                           0.0, 1.0);
    const VelocitySample lo = bicubic_sample(traj.snaps[kl].v, ar, z);
    const VelocitySample hi = w > 0.0 ? bicubic_sample(traj.snaps[kh].v, ar, z) : lo;
    VelocitySample out;
    out.v_rho = sign * ((1.0 - w) * lo.v_rho + w * hi.v_rho);
    out.v_phi = sign * ((1.0 - w) * lo.v_phi + w * hi.v_phi);
    out.v_z = (1.0 - w) * lo.v_z + w * hi.v_z;
    return out;
}

double sample_pressure(const Trajectory& traj, double rho, double z, double t) {
    const auto [kl, kh] = traj.bracket(t);
    const double w = kl == kh ? 0.0
                              : std::clamp((t - traj.snaps[kl].t()) /
                                               (traj.snaps[kh].t() - traj.snaps[kl].t()),
                                           0.0, 1.0);
    const double lo = bicubic_sample(traj.snaps[kl].q, std::abs(rho), z, Parity::Even);
    const double hi =
        w > 0.0 ? bicubic_sample(traj.snaps[kh].q, std::abs(rho), z, Parity::Even) : lo;
    return (1.0 - w) * lo + w * hi;
}

// Resampling budget: spatial part from a stride-2 holdout on the peak snapshot,
// temporal part from the midpoint defect of three consecutive snapshots.
double measure_interp_budget(const Trajectory& traj, const PeakRecord& peak, double lambda,
                             double a) {
    const Grid2D& g = traj.grid;
    const auto [kl, kh] = traj.bracket(peak.t_k);
    const std::size_t kc = kl;
    (void)kh;

    // coarse grid from every second node (requires even interval counts)
    double spatial = 0.0;
    if (g.n_rho % 2 == 0 && g.n_z % 2 == 0 && g.n_rho >= 8 && g.n_z >= 8) {
        Grid2D gc(g.rho_max, g.z_min, g.z_max, g.n_rho / 2, g.n_z / 2, g.z_periodic);
        AxiField coarse(gc, peak.t_k);
        for (int i = 0; i < gc.nodes_rho(); ++i)
            for (int j = 0; j < gc.nodes_z(); ++j) {
                coarse.v_rho(i, j) = traj.snaps[kc].v.v_rho(2 * i, 2 * j);
                coarse.v_phi(i, j) = traj.snaps[kc].v.v_phi(2 * i, 2 * j);
                coarse.v_z(i, j) = traj.snaps[kc].v.v_z(2 * i, 2 * j);
            }
        const double rad = std::min(lambda * a + 4.0 * g.d_rho, g.rho_max);
        for (int i = 1; i < g.nodes_rho(); i += 2) {
            if (g.rho(i) > rad) break;
            for (int j = 1; j < g.nodes_z(); j += 2) {
                if (std::abs(wrapped_offset(g, g.z(j), peak.z_k)) > rad && g.z_periodic)
                    continue;
                const VelocitySample s = bicubic_sample(coarse, g.rho(i), g.z(j));
                spatial = std::max({spatial,
                                    std::abs(s.v_rho - traj.snaps[kc].v.v_rho(i, j)),
                                    std::abs(s.v_phi - traj.snaps[kc].v.v_phi(i, j)),
                                    std::abs(s.v_z - traj.snaps[kc].v.v_z(i, j))});
            }
        }
        spatial /= 16.0; // one refinement level of a fourth-order stencil
    }

    double temporal = 0.0;
    if (traj.size() >= 3) {
        std::size_t k1 = kc > 0 ? kc - 1 : 0;
        if (k1 + 2 >= traj.size()) k1 = traj.size() - 3;
        const AxiField& va = traj.snaps[k1].v;
        const AxiField& vb = traj.snaps[k1 + 1].v;
        const AxiField& vc = traj.snaps[k1 + 2].v;
        for (std::size_t n = 0; n < va.v_rho.values.size(); ++n) {
            temporal = std::max(
                {temporal,
                 std::abs(0.5 * (va.v_rho.values[n] + vc.v_rho.values[n]) - vb.v_rho.values[n]),
                 std::abs(0.5 * (va.v_phi.values[n] + vc.v_phi.values[n]) - vb.v_phi.values[n]),
                 std::abs(0.5 * (va.v_z.values[n] + vc.v_z.values[n]) - vb.v_z.values[n])});
        }
        temporal *= 0.5; // linear-interpolation midpoint defect
    }

    return lambda * 4.0 * (spatial + temporal) + 1e-12;
}

} // namespace

std::vector<PeakRecord> detect_peaks(const Trajectory& traj, double r1,
                                     const PeakOptions& opts) {
    if (traj.empty()) throw InvalidArgumentError("detect_peaks: empty trajectory");
    const Grid2D& g = traj.grid;
    require_section_inside(g, opts.center, r1);
    if (opts.ratio <= 1.0) throw InvalidArgumentError("record ratio must exceed 1");

    std::vector<PeakRecord> records;
    double running = -1.0;
    for (const TrajectorySnapshot& snap : traj.snaps) {
        double best = -1.0;
        int bi = 0, bj = 0;
        for (int i = 0; i < g.nodes_rho(); ++i) {
            if (g.rho(i) > r1) break;
            for (int j = 0; j < g.nodes_z(); ++j) {
                if (std::abs(wrapped_offset(g, g.z(j), opts.center)) > r1) continue;
                const double m = node_speed(snap.v, i, j);
                if (m > best) {
                    best = m;
                    bi = i;
                    bj = j;
                }
            }
        }
        const bool is_record = records.empty() || best > opts.ratio * running;
        if (is_record) {
            PeakRecord rec;
            rec.k = static_cast<int>(records.size());
            rec.t_k = snap.t();
            rec.rho_k = g.rho(bi);
            rec.z_k = g.z(bj);
            rec.M_k = best;
            records.push_back(rec);
            running = best;
        }
    }
    return records;
}

double max_admissible_window(const Trajectory& traj, const PeakRecord& peak,
                             ZoomConvention convention) {
    if (peak.M_k <= 0.0) return 0.0;
    const Grid2D& g = traj.grid;
    const double lambda = 1.0 / peak.M_k;
    double a = std::numeric_limits<double>::infinity();

    // time history: t_k - lambda^2 a^2 >= t_first
    a = std::min(a, std::sqrt(std::max(0.0, peak.t_k - traj.t_first())) / lambda);
    if (convention == ZoomConvention::AxisShift) {
        a = std::min(a, g.rho_max / lambda);
        // the mapped peak y' = M_k rho_k must lie inside C(a)
    } else {
        a = std::min(a, (g.rho_max - peak.rho_k) / lambda);
    }
    if (!g.z_periodic) {
        a = std::min(a, (g.z_max - peak.z_k) / lambda);
        a = std::min(a, (peak.z_k - g.z_min) / lambda);
    } else {
        a = std::min(a, 0.5 * g.z_extent() / lambda);
    }
    return a;
}

ZoomSnapshot zoom(const Trajectory& traj, const PeakRecord& peak, double a,
                  const ZoomOptions& opts) {
    if (peak.M_k <= 0.0)
        throw InvalidArgumentError("zoom: degenerate peak with M_k = 0");
    if (a <= 0.0) throw InvalidArgumentError("zoom: window radius must be positive");
    const double lambda = 1.0 / peak.M_k;

    const double a_max = max_admissible_window(traj, peak, opts.convention);
    if (a > a_max + 1e-12)
        throw OutOfDomainError("zoom window escapes the sampled domain; maximal admissible a = " +
                               std::to_string(a_max));
    if (opts.convention == ZoomConvention::AxisShift && peak.M_k * peak.rho_k > a)
        throw OutOfDomainError(
            "mapped peak lies outside the window; needs a >= " +
            std::to_string(peak.M_k * peak.rho_k));

    ZoomSnapshot snap;
    snap.peak = peak;
    snap.lambda = lambda;
    snap.a = a;
    snap.convention = opts.convention;

    const bool with_pressure = traj.snaps.front().has_pressure();
    const Grid2D zg(a, -a, a, opts.n_rho, opts.n_z, false);
    const int nt = std::max(2, opts.n_t);
    const double ds = a * a / (nt - 1);

    for (int jt = 0; jt < nt; ++jt) {
        const double s = -a * a + ds * jt;
        const double t_src = peak.t_k + lambda * lambda * s;
        AxiField u(zg, s);
        ScalarField2D p(zg, s);
        for (int i = 0; i < zg.nodes_rho(); ++i) {
            const double y1 = zg.rho(i);
            const double rho_src = opts.convention == ZoomConvention::AxisShift
                                       ? lambda * y1
                                       : peak.rho_k + lambda * y1;
            for (int j = 0; j < zg.nodes_z(); ++j) {
                double z_src = peak.z_k + lambda * zg.z(j);
                if (traj.grid.z_periodic) {
                    const double L = traj.grid.z_extent();
                    z_src = traj.grid.z_min + std::fmod(z_src - traj.grid.z_min, L);
                    if (z_src < traj.grid.z_min) z_src += L;
                }
                const VelocitySample vs = sample_velocity(traj, rho_src, z_src, t_src);
                u.v_rho(i, j) = lambda * vs.v_rho;
                u.v_phi(i, j) = lambda * vs.v_phi;
                u.v_z(i, j) = lambda * vs.v_z;
                if (with_pressure)
                    p(i, j) = lambda * lambda * sample_pressure(traj, rho_src, z_src, t_src);
            }
        }
        snap.u.push_back(std::move(u));
        if (with_pressure) snap.p.push_back(std::move(p));
        snap.s_times.push_back(s);
    }

    // normalization sample at the mapped peak: node-exact in space and time
    {
        const double y1 = opts.convention == ZoomConvention::AxisShift ? peak.M_k * peak.rho_k
                                                                       : 0.0;
        const double rho_src = opts.convention == ZoomConvention::AxisShift
                                   ? lambda * y1
                                   : peak.rho_k;
        const VelocitySample vs = sample_velocity(traj, rho_src, peak.z_k, peak.t_k);
        snap.peak_value = lambda * std::sqrt(vs.v_rho * vs.v_rho + vs.v_phi * vs.v_phi +
                                             vs.v_z * vs.v_z);
    }

    snap.interp_tolerance = measure_interp_budget(traj, peak, lambda, a);
    return snap;
}

ZoomVerification verify_zoom(const ZoomSnapshot& snap, const Trajectory& source,
                             const std::vector<MixedNormSpec>& specs,
                             const std::vector<double>& radii) {
    ZoomVerification out;
    out.normalization = snap.peak_value;
    out.normalization_ok = std::abs(snap.peak_value - 1.0) <= 1e-6 + snap.interp_tolerance;

    for (const AxiField& u : snap.u) {
        for (std::size_t n = 0; n < u.v_rho.values.size(); ++n) {
            const double m = std::sqrt(u.v_rho.values[n] * u.v_rho.values[n] +
                                       u.v_phi.values[n] * u.v_phi.values[n] +
                                       u.v_z.values[n] * u.v_z.values[n]);
            out.sup_u = std::max(out.sup_u, m);
        }
        const Grid2D& zg = u.grid;
        for (int i = 0; i < zg.nodes_rho(); ++i)
            for (int j = 0; j < zg.nodes_z(); ++j) {
                const double m = node_speed(u, i, j);
                out.sup_decay = std::max(out.sup_decay, zg.rho(i) * m);
            }
    }
    out.bounded_ok = out.sup_u <= 1.0 + snap.interp_tolerance + 1e-9;

    if (snap.convention != ZoomConvention::AxisShift) return out; // slice surrogate

    // package the zoom window as a trajectory for the functionals module
    Trajectory zt;
    zt.grid = snap.u.front().grid;
    zt.snapshot_dt = snap.s_times.size() > 1 ? snap.s_times[1] - snap.s_times[0] : 0.0;
    zt.dt = zt.snapshot_dt;
    for (std::size_t k = 0; k < snap.u.size(); ++k) {
        TrajectorySnapshot ts;
        ts.v = snap.u[k];
        if (!snap.p.empty()) ts.q = snap.p[k];
        zt.snaps.push_back(std::move(ts));
    }

    for (double r : radii) {
        if (r <= 0.0 || r > snap.a + 1e-12)
            throw InvalidArgumentError("ladder radius outside the zoom window");
        const FunctionalReport fu =
            compute_functionals(zt, ParabolicCylinder(0.0, 0.0, r), specs);
        const FunctionalReport fv = compute_functionals(
            source, ParabolicCylinder(snap.peak.z_k, snap.peak.t_k, snap.lambda * r), specs);
        double sum = fu.A + fu.E + fu.C + (std::isfinite(fu.D) ? fu.D : 0.0);
        out.functional_sum_max = std::max(out.functional_sum_max, sum);

        auto rel = [](double x, double y) {
            const double scale = std::max({std::abs(x), std::abs(y), 1e-12});
            return std::abs(x - y) / scale;
        };
        double worst = std::max({rel(fu.A, fv.A), rel(fu.E, fv.E), rel(fu.C, fv.C),
                                 rel(fu.H, fv.H)});
        if (std::isfinite(fu.D) && std::isfinite(fv.D)) worst = std::max(worst, rel(fu.D, fv.D));
        out.transport_error.push_back(worst);
        out.ladder.push_back(fu);
    }
    return out;
}

double holder_distance(const ZoomSnapshot& a, const ZoomSnapshot& b, double alpha) {
    if (a.u.empty() || b.u.empty() || a.u.size() != b.u.size() ||
        !a.u.front().grid.same_layout(b.u.front().grid) || std::abs(a.a - b.a) > 1e-12)
        throw InvalidArgumentError("holder_distance: zoom windows must share geometry");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw InvalidArgumentError("holder exponent must lie in ]0,1[");

    const Grid2D& g = a.u.front().grid;
    const int nr = g.nodes_rho(), nz = g.nodes_z();
    const int nt = static_cast<int>(a.u.size());

    double sup_diff = 0.0;
    for (int k = 0; k < nt; ++k)
        for (std::size_t n = 0; n < a.u[k].v_rho.values.size(); ++n) {
            const double dr = a.u[k].v_rho.values[n] - b.u[k].v_rho.values[n];
            const double dp = a.u[k].v_phi.values[n] - b.u[k].v_phi.values[n];
            const double dz = a.u[k].v_z.values[n] - b.u[k].v_z.values[n];
            sup_diff = std::max(sup_diff, std::sqrt(dr * dr + dp * dp + dz * dz));
        }

    // decimated sample lattice for the pair scan
    auto stride_for = [](int n, int target) { return std::max(1, (n + target - 1) / target); };
    const int sr = stride_for(nr, 12), sz = stride_for(nz, 12), st = stride_for(nt, 8);

    struct Node {
        double rho, z, s;
        double dr, dp, dz;
    };
    std::vector<Node> pts;
    for (int k = 0; k < nt; k += st)
        for (int i = 0; i < nr; i += sr)
            for (int j = 0; j < nz; j += sz) {
                Node nd;
                nd.rho = g.rho(i);
                nd.z = g.z(j);
                nd.s = a.s_times[k];
                nd.dr = a.u[k].v_rho(i, j) - b.u[k].v_rho(i, j);
                nd.dp = a.u[k].v_phi(i, j) - b.u[k].v_phi(i, j);
                nd.dz = a.u[k].v_z(i, j) - b.u[k].v_z(i, j);
                pts.push_back(nd);
            }

    double quotient = 0.0;
    for (std::size_t p = 0; p < pts.size(); ++p) {
        for (std::size_t q = p + 1; q < pts.size(); ++q) {
            const double dx = std::hypot(pts[p].rho - pts[q].rho, pts[p].z - pts[q].z);
            const double dist = std::max(dx, std::sqrt(std::abs(pts[p].s - pts[q].s)));
            if (dist <= 0.0) continue;
            const double num = std::sqrt((pts[p].dr - pts[q].dr) * (pts[p].dr - pts[q].dr) +
                                         (pts[p].dp - pts[q].dp) * (pts[p].dp - pts[q].dp) +
                                         (pts[p].dz - pts[q].dz) * (pts[p].dz - pts[q].dz));
            quotient = std::max(quotient, num / std::pow(dist, alpha));
        }
    }
    return quotient + sup_diff;
}

} // namespace axinse
