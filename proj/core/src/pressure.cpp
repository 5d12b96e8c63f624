#include "axinse/pressure.hpp"

#include <algorithm>
#include <cmath>

#include "axinse/fields.hpp"

namespace axinse {

namespace {

// Wrapped axial offset from center c, in [-L/2, L/2) on periodic grids.
double z_offset(const Grid2D& g, double z, double c) {
    double d = z - c;
    if (!g.z_periodic) return d;
    const double L = g.z_extent();
    d = std::fmod(d + 0.5 * L, L);
    if (d < 0) d += L;
    return d - 0.5 * L;
}

bool inside_cutoff(const Grid2D& g, int i, int j, double r, double c) {
    return g.rho(i) < r && std::abs(z_offset(g, g.z(j), c)) < r;
}

} // namespace

ScalarField2D pressure_source(const AxiField& v) {
    const Grid2D& g = v.grid;

    // meridional acceleration a = (v.grad v)_rho,z with the centripetal term
    ScalarField2D a_rho(g, v.t), a_z(g, v.t);
    for (int i = 0; i < g.nodes_rho(); ++i) {
        for (int j = 0; j < g.nodes_z(); ++j) {
            const double vr = v.v_rho(i, j), vz = v.v_z(i, j), vp = v.v_phi(i, j);
            double centripetal = 0.0;
            if (i > 0) centripetal = vp * vp / g.rho(i);
            a_rho(i, j) = vr * d_rho_at(v.v_rho, i, j, Parity::Odd) +
                          vz * d_z_at(v.v_rho, i, j) - centripetal;
            a_z(i, j) = vr * d_rho_at(v.v_z, i, j, Parity::Even) + vz * d_z_at(v.v_z, i, j);
        }
    }

    // S = -[(1/rho) d(rho a_rho)/drho + d a_z/dz]
    ScalarField2D rho_a(g, v.t);
    for (int i = 0; i < g.nodes_rho(); ++i)
        for (int j = 0; j < g.nodes_z(); ++j) rho_a(i, j) = g.rho(i) * a_rho(i, j);

    ScalarField2D out(g, v.t);
    for (int i = 0; i < g.nodes_rho(); ++i) {
        for (int j = 0; j < g.nodes_z(); ++j) {
            double radial;
            if (i == 0) {
                radial = 2.0 * d_rho_at(a_rho, 0, j, Parity::Odd);
            } else {
                radial = d_rho_at(rho_a, i, j, Parity::Even) / g.rho(i);
            }
            out(i, j) = -(radial + d_z_at(a_z, i, j));
        }
    }
    return out;
}

std::vector<double> pressure_wall_flux(const AxiField& v) {
    const Grid2D& g = v.grid;
    std::vector<double> flux(g.nodes_z());
    for (int j = 0; j < g.nodes_z(); ++j) {
        const double vp = v.v_phi(g.n_rho, j);
        flux[j] = vp * vp / g.rho_max;
    }
    return flux;
}

ScalarField2D solve_pressure(const AxiField& v, const PoissonOptions& opt) {
    const Grid2D& g = v.grid;
    const ScalarField2D source = pressure_source(v);
    const std::vector<double> flux = pressure_wall_flux(v);

    ScalarField2D q = g.z_periodic ? solve_pressure_periodic(source, flux)
                                   : solve_pressure_sor(source, flux, opt);
    q.t = v.t;

    // zero mean over the unit cylinder clipped to the domain
    const double r_norm =
        std::min({1.0, g.rho_max, g.z_periodic ? 0.5 * g.z_extent() : 0.5 * g.z_extent()});
    const double b_norm = g.z_periodic ? g.z_min : 0.5 * (g.z_min + g.z_max);
    const double vol = section_volume(g, b_norm, r_norm);
    const double mean = integrate_section(q, b_norm, r_norm) / vol;
    for (double& val : q.values) val -= mean;
    return q;
}

ScalarField2D discrete_laplacian(const ScalarField2D& q) {
    const Grid2D& g = q.grid;
    ScalarField2D out(g, q.t);
    const double h = g.d_rho, h2 = h * h;
    for (int i = 0; i < g.nodes_rho(); ++i) {
        for (int j = 0; j < g.nodes_z(); ++j) {
            double radial;
            if (i == 0) {
                radial = 4.0 * (q(1, j) - q(0, j)) / h2;
            } else if (i == g.n_rho) {
                const int n = g.n_rho;
                const double qrr =
                    (2.0 * q(n, j) - 5.0 * q(n - 1, j) + 4.0 * q(n - 2, j) - q(n - 3, j)) / h2;
                radial = qrr + d_rho_at(q, n, j, Parity::Even) / g.rho(n);
            } else {
                radial = (q(i + 1, j) - 2.0 * q(i, j) + q(i - 1, j)) / h2 +
                         (q(i + 1, j) - q(i - 1, j)) / (2.0 * h * g.rho(i));
            }
            out(i, j) = radial + d_zz_at(q, i, j);
        }
    }
    return out;
}

PressureSplit split_pressure(const ScalarField2D& q, const AxiField& v, double cutoff_radius,
                             double cutoff_center, int box_factor, const PoissonOptions&) {
    const Grid2D& g = q.grid;
    if (!g.same_layout(v.grid))
        throw InvalidArgumentError("pressure and velocity grids differ");
    if (box_factor < 2) throw InvalidArgumentError("box factor must be an integer >= 2");
    if (cutoff_radius <= 0.0 || cutoff_radius >= g.rho_max)
        throw OutOfDomainError("cutoff cylinder must lie strictly inside the grid");
    if (!g.z_periodic &&
        (cutoff_center - cutoff_radius <= g.z_min || cutoff_center + cutoff_radius >= g.z_max))
        throw OutOfDomainError("cutoff cylinder must lie strictly inside the z range");
    if (g.z_periodic && 2.0 * cutoff_radius >= g.z_extent())
        throw OutOfDomainError("cutoff cylinder wraps the entire periodic direction");
    if (g.z_periodic &&
        std::abs(z_offset(g, g.z_min, cutoff_center)) < cutoff_radius + 2.0 * g.d_z)
        throw OutOfDomainError("cutoff cylinder must stay clear of the periodic seam");

    const ScalarField2D source = pressure_source(v);

    // Enlarged bounded box with the same spacing, original nodes embedded exactly.
    const int nr_e = box_factor * g.n_rho;
    const int nz_e = box_factor * g.n_z;
    const double half_extra = 0.5 * (box_factor - 1) * g.z_extent();
    const double zmin_e = g.z_min - g.d_z * std::floor(half_extra / g.d_z + 0.5);
    Grid2D ge(box_factor * g.rho_max, zmin_e, zmin_e + box_factor * g.z_extent(), nr_e, nz_e,
              false);
    const int j0 = static_cast<int>(std::floor((g.z_min - zmin_e) / g.d_z + 0.5));

    ScalarField2D embedded(ge, q.t);
    for (int i = 0; i < g.nodes_rho(); ++i)
        for (int j = 0; j < g.nodes_z(); ++j)
            if (inside_cutoff(g, i, j, cutoff_radius, cutoff_center))
                embedded(i, j0 + j) = source(i, j);

    const ScalarField2D q1_big = solve_box_dirichlet(embedded);

    PressureSplit split;
    split.cutoff_radius = cutoff_radius;
    split.cutoff_center = cutoff_center;
    split.q1 = ScalarField2D(g, q.t);
    for (int i = 0; i < g.nodes_rho(); ++i)
        for (int j = 0; j < g.nodes_z(); ++j) split.q1(i, j) = q1_big(i, j0 + j);

    split.q2 = q;
    for (std::size_t k = 0; k < split.q2.values.size(); ++k)
        split.q2.values[k] -= split.q1.values[k];

    // Interior consistency of the input pair bounds the q2 residual (the box
    // solve inverts the same stencil), so declare exactly that.
    const ScalarField2D lap_q = discrete_laplacian(q);
    const int j_lo = g.z_periodic ? 0 : 1;
    const int j_hi = g.z_periodic ? g.nodes_z() - 1 : g.nodes_z() - 2;
    double defect = 0.0;
    for (int i = 0; i + 1 < g.nodes_rho(); ++i)
        for (int j = j_lo; j <= j_hi; ++j)
            defect = std::max(defect, std::abs(lap_q(i, j) - source(i, j)));

    double src_scale = 0.0;
    for (double s : source.values) src_scale = std::max(src_scale, std::abs(s));
    split.harmonicity_tolerance = defect * (1.0 + 1e-9) + 1e-9 * (1.0 + src_scale);

    const ScalarField2D lap_q2 = discrete_laplacian(split.q2);
    const double margin_r = 2.0 * g.d_rho, margin_z = 2.0 * g.d_z;
    double residual = 0.0;
    for (int i = 0; i + 1 < g.nodes_rho(); ++i) {
        for (int j = 0; j < g.nodes_z(); ++j) {
            if (g.rho(i) < cutoff_radius - margin_r &&
                std::abs(z_offset(g, g.z(j), cutoff_center)) < cutoff_radius - margin_z)
                residual = std::max(residual, std::abs(lap_q2(i, j)));
        }
    }
    split.harmonicity_residual = residual;
    return split;
}

double bmo_seminorm(const ScalarField2D& q, const std::vector<double>& radii,
                    int center_count) {
    const Grid2D& g = q.grid;
    if (radii.empty()) throw InvalidArgumentError("bmo_seminorm needs a radius ladder");
    if (center_count < 1) throw InvalidArgumentError("bmo_seminorm needs centers");

    double r_max = 0.0;
    for (double r : radii) {
        if (r <= 0.0) throw InvalidArgumentError("radii must be positive");
        r_max = std::max(r_max, r);
    }
    require_section_inside(g, g.z_periodic ? g.z_min : 0.5 * (g.z_min + g.z_max), r_max);

    std::vector<double> centers;
    if (g.z_periodic) {
        for (int k = 0; k < center_count; ++k)
            centers.push_back(g.z_min + g.z_extent() * k / center_count);
    } else {
        const double lo = g.z_min + r_max, hi = g.z_max - r_max;
        if (hi < lo) throw OutOfDomainError("largest radius does not fit in the z range");
        for (int k = 0; k < center_count; ++k)
            centers.push_back(center_count == 1
                                  ? 0.5 * (lo + hi)
                                  : lo + (hi - lo) * k / (center_count - 1));
    }

    double worst = 0.0;
    ScalarField2D shifted = q;
    for (double c : centers) {
        for (double r : radii) {
            const double vol = section_volume(g, c, r);
            const double mean = integrate_section(q, c, r) / vol;
            for (std::size_t k = 0; k < q.values.size(); ++k)
                shifted.values[k] = q.values[k] - mean;
            const double osc = integrate_power_section(shifted, c, r, 1.0) / vol;
            worst = std::max(worst, osc);
        }
    }
    return worst;
}

} // namespace axinse
