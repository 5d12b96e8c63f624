#include "axinse/fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace axinse {

// d/drho at node i; parity handles the axis, one-sided at the wall.
double d_rho_at(const ScalarField2D& u, int i, int j, Parity par) {
    const auto& g = u.grid;
    const double h = g.d_rho;
    const int n = g.n_rho;
    if (i == 0) return par == Parity::Odd ? u(1, j) / h : 0.0;
    if (i == n) return (3.0 * u(n, j) - 4.0 * u(n - 1, j) + u(n - 2, j)) / (2.0 * h);
    return (u(i + 1, j) - u(i - 1, j)) / (2.0 * h);
}

double d_z_at(const ScalarField2D& u, int i, int j) {
    const auto& g = u.grid;
    const double h = g.d_z;
    const int m = g.nodes_z();
    if (g.z_periodic)
        return (u(i, g.wrap_z(j + 1)) - u(i, g.wrap_z(j - 1))) / (2.0 * h);
    if (j == 0) return (-3.0 * u(i, 0) + 4.0 * u(i, 1) - u(i, 2)) / (2.0 * h);
    if (j == m - 1)
        return (3.0 * u(i, m - 1) - 4.0 * u(i, m - 2) + u(i, m - 3)) / (2.0 * h);
    return (u(i, j + 1) - u(i, j - 1)) / (2.0 * h);
}

double d_zz_at(const ScalarField2D& u, int i, int j) {
    const auto& g = u.grid;
    const double h2 = g.d_z * g.d_z;
    const int m = g.nodes_z();
    if (g.z_periodic)
        return (u(i, g.wrap_z(j + 1)) - 2.0 * u(i, j) + u(i, g.wrap_z(j - 1))) / h2;
    if (j == 0)
        return (2.0 * u(i, 0) - 5.0 * u(i, 1) + 4.0 * u(i, 2) - u(i, 3)) / h2;
    if (j == m - 1)
        return (2.0 * u(i, m - 1) - 5.0 * u(i, m - 2) + 4.0 * u(i, m - 3) - u(i, m - 4)) / h2;
    return (u(i, j + 1) - 2.0 * u(i, j) + u(i, j - 1)) / h2;
}

namespace {

double power_abs(double v, double p) {
    if (p == 1.0) return std::abs(v);
    if (p == 2.0) return v * v;
    if (p == 3.0) return std::abs(v) * v * v;
    return std::pow(std::abs(v), p);
}

struct ZWindow {
    std::array<std::pair<double, double>, 2> piece;
    int count = 0;
};

ZWindow z_window(const Grid2D& g, double b, double r, bool allow_truncation) {
    ZWindow w;
    if (g.z_periodic) {
        const double L = g.z_extent();
        double width = 2.0 * r;
        if (width > L) {
            if (!allow_truncation)
                throw OutOfDomainError("section width exceeds the periodic z extent");
            width = L;
        }
        double s = std::fmod(b - r - g.z_min, L);
        if (s < 0) s += L;
        s += g.z_min;
        if (s + width <= g.z_min + L) {
            w.piece[w.count++] = {s, s + width};
        } else {
            w.piece[w.count++] = {s, g.z_min + L};
            w.piece[w.count++] = {g.z_min, g.z_min + width - (g.z_min + L - s)};
        }
        return w;
    }
    double lo = b - r, hi = b + r;
    if (lo < g.z_min || hi > g.z_max) {
        if (!allow_truncation) require_section_inside(g, b, r); // throws with context
        lo = std::max(lo, g.z_min);
        hi = std::min(hi, g.z_max);
    }
    w.piece[w.count++] = {lo, hi};
    return w;
}

// Shared kernel: integrate transform(field) * rho over the section, times 2 pi.
template <class NodeFn>
double section_quadrature(const ScalarField2D& field, double b, double r,
                          bool allow_truncation, NodeFn&& node_value) {
    const Grid2D& g = field.grid;
    if (r <= 0.0) throw InvalidArgumentError("section radius must be positive");
    double r_eff = r;
    if (r > g.rho_max) {
        if (!allow_truncation)
            throw OutOfDomainError("section radius exceeds rho_max");
        r_eff = g.rho_max;
    }
    const ZWindow zw = z_window(g, b, r, allow_truncation);

    const int nr = g.nodes_rho();
    const int nz = g.nodes_z();
    const int nbuf = g.z_periodic ? nz + 1 : nz;
    std::vector<double> buf(nbuf), radial(nr);
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nz; ++j) buf[j] = node_value(field(i, j));
        if (g.z_periodic) buf[nz] = buf[0];
        double zint = 0.0;
        for (int k = 0; k < zw.count; ++k)
            zint += trapezoid_clipped(buf.data(), nbuf, g.z_min, g.d_z,
                                      zw.piece[k].first, zw.piece[k].second);
        radial[i] = zint * g.rho(i);
    }
    const double pi = 3.14159265358979323846;
    return 2.0 * pi * trapezoid_clipped(radial.data(), nr, 0.0, g.d_rho, 0.0, r_eff);
}

} // namespace

std::pair<AxiField, AxiField> decompose(const AxiField& v) {
    AxiField meridional = v;
    AxiField swirl(v.grid, v.t);
    swirl.v_phi = v.v_phi;
    std::fill(meridional.v_phi.values.begin(), meridional.v_phi.values.end(), 0.0);
    return {std::move(meridional), std::move(swirl)};
}

ScalarField2D swirl_operator(const ScalarField2D& f) {
    const Grid2D& g = f.grid;
    double scale = 0.0;
    for (double v : f.values) scale = std::max(scale, std::abs(v));
    const double axis_tol = 1e-10 * (1.0 + scale);
    for (int j = 0; j < g.nodes_z(); ++j)
        if (std::abs(f(0, j)) > axis_tol)
            throw InvalidArgumentError("swirl variable must vanish on the axis");

    ScalarField2D out(g, f.t);
    const double h2 = g.d_rho * g.d_rho;
    const int n = g.n_rho;
    for (int i = 1; i <= n; ++i) {
        const double rho = g.rho(i);
        for (int j = 0; j < g.nodes_z(); ++j) {
            double frr, fr;
            if (i == n) {
                frr = (2.0 * f(n, j) - 5.0 * f(n - 1, j) + 4.0 * f(n - 2, j) - f(n - 3, j)) / h2;
                fr = (3.0 * f(n, j) - 4.0 * f(n - 1, j) + f(n - 2, j)) / (2.0 * g.d_rho);
            } else {
                frr = (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) / h2;
                fr = (f(i + 1, j) - f(i - 1, j)) / (2.0 * g.d_rho);
            }
            out(i, j) = frr - fr / rho + d_zz_at(f, i, j);
        }
    }
    return out;
}

ScalarField2D magnitude(const AxiField& v) {
    ScalarField2D out(v.grid, v.t);
    for (std::size_t k = 0; k < out.values.size(); ++k)
        out.values[k] = std::sqrt(v.v_rho.values[k] * v.v_rho.values[k] +
                                  v.v_phi.values[k] * v.v_phi.values[k] +
                                  v.v_z.values[k] * v.v_z.values[k]);
    return out;
}

ScalarField2D grad_norm_squared(const AxiField& v) {
    const Grid2D& g = v.grid;
    ScalarField2D out(g, v.t);
    for (int i = 0; i < g.nodes_rho(); ++i) {
        for (int j = 0; j < g.nodes_z(); ++j) {
            const double dr_vr = d_rho_at(v.v_rho, i, j, Parity::Odd);
            const double dr_vp = d_rho_at(v.v_phi, i, j, Parity::Odd);
            const double dr_vz = d_rho_at(v.v_z, i, j, Parity::Even);
            const double dz_vr = d_z_at(v.v_rho, i, j);
            const double dz_vp = d_z_at(v.v_phi, i, j);
            const double dz_vz = d_z_at(v.v_z, i, j);
            double metric;
            if (i == 0) {
                metric = dr_vr * dr_vr + dr_vp * dr_vp; // limit of (v_r^2+v_phi^2)/rho^2
            } else {
                const double rho = g.rho(i);
                metric = (v.v_rho(i, j) * v.v_rho(i, j) + v.v_phi(i, j) * v.v_phi(i, j)) /
                         (rho * rho);
            }
            out(i, j) = dr_vr * dr_vr + dr_vp * dr_vp + dr_vz * dr_vz + dz_vr * dz_vr +
                        dz_vp * dz_vp + dz_vz * dz_vz + metric;
        }
    }
    return out;
}

ScalarField2D divergence(const AxiField& v) {
    const Grid2D& g = v.grid;
    ScalarField2D out(g, v.t);
    for (int i = 0; i < g.nodes_rho(); ++i) {
        for (int j = 0; j < g.nodes_z(); ++j) {
            double radial;
            if (i == 0) {
                // (1/rho) d(rho v_rho)/drho -> 2 dv_rho/drho at the axis
                radial = 2.0 * d_rho_at(v.v_rho, 0, j, Parity::Odd);
            } else if (i == g.n_rho) {
                const int n = g.n_rho;
                radial = (3.0 * g.rho(n) * v.v_rho(n, j) -
                          4.0 * g.rho(n - 1) * v.v_rho(n - 1, j) +
                          g.rho(n - 2) * v.v_rho(n - 2, j)) /
                         (2.0 * g.d_rho * g.rho(n));
            } else {
                radial = (g.rho(i + 1) * v.v_rho(i + 1, j) - g.rho(i - 1) * v.v_rho(i - 1, j)) /
                         (2.0 * g.d_rho * g.rho(i));
            }
            out(i, j) = radial + d_z_at(v.v_z, i, j);
        }
    }
    return out;
}

double trapezoid_clipped(const double* g, int n, double x0, double h, double a, double b) {
    const double xend = x0 + h * (n - 1);
    a = std::max(a, x0);
    b = std::min(b, xend);
    if (b <= a) return 0.0;
    int k0 = std::clamp(static_cast<int>(std::floor((a - x0) / h)), 0, n - 2);
    int k1 = std::clamp(static_cast<int>(std::floor((b - x0) / h)), 0, n - 2);
    double total = 0.0;
    for (int k = k0; k <= k1; ++k) {
        const double xk = x0 + h * k;
        const double xl = std::max(a, xk);
        const double xr = std::min(b, xk + h);
        if (xr <= xl) continue;
        const double sl = (xl - xk) / h, sr = (xr - xk) / h;
        const double gl = g[k] * (1.0 - sl) + g[k + 1] * sl;
        const double gr = g[k] * (1.0 - sr) + g[k + 1] * sr;
        total += 0.5 * (gl + gr) * (xr - xl);
    }
    return total;
}

double integrate_power_section(const ScalarField2D& field, double b, double r, double p,
                               bool allow_truncation) {
    if (p < 1.0) throw InvalidArgumentError("exponent p must be >= 1");
    return section_quadrature(field, b, r, allow_truncation,
                              [p](double v) { return power_abs(v, p); });
}

double integrate_section(const ScalarField2D& field, double b, double r,
                         bool allow_truncation) {
    return section_quadrature(field, b, r, allow_truncation, [](double v) { return v; });
}

double integrate_domain(const ScalarField2D& field) {
    const Grid2D& g = field.grid;
    const int nr = g.nodes_rho();
    const int nz = g.nodes_z();
    std::vector<double> radial(nr);
    for (int i = 0; i < nr; ++i) {
        double zint = 0.0;
        if (g.z_periodic) {
            for (int j = 0; j < nz; ++j) zint += field(i, j);
            zint *= g.d_z;
        } else {
            zint = 0.5 * (field(i, 0) + field(i, nz - 1));
            for (int j = 1; j < nz - 1; ++j) zint += field(i, j);
            zint *= g.d_z;
        }
        radial[i] = zint * g.rho(i);
    }
    const double pi = 3.14159265358979323846;
    return 2.0 * pi * trapezoid_clipped(radial.data(), nr, 0.0, g.d_rho, 0.0, g.rho_max);
}

double section_volume(const Grid2D& g, double b, double r, bool allow_truncation) {
    ScalarField2D ones(g);
    std::fill(ones.values.begin(), ones.values.end(), 1.0);
    return integrate_section(ones, b, r, allow_truncation);
}

} // namespace axinse
