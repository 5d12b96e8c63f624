#pragma once

#include <cstddef>
#include <vector>

#include "axinse/error.hpp"

namespace axinse {

/// Uniform node-centered grid on the meridional half-plane [0, rho_max] x [z_min, z_max].
///
/// Radial nodes are rho_i = i * d_rho for i = 0..n_rho; the first node sits exactly
/// on the axis.  In z the grid holds n_z + 1 nodes when the domain is bounded and
/// n_z nodes when z is periodic (the node at z_max is identified with z_min).
struct Grid2D {
    double rho_max = 1.0;
    double z_min = -1.0;
    double z_max = 1.0;
    int n_rho = 0;   // radial intervals
    int n_z = 0;     // axial intervals
    double d_rho = 0.0;
    double d_z = 0.0;
    bool z_periodic = false;

    Grid2D() = default;
    Grid2D(double rho_max_, double z_min_, double z_max_, int n_rho_, int n_z_,
           bool z_periodic_ = false);

    int nodes_rho() const { return n_rho + 1; }
    int nodes_z() const { return z_periodic ? n_z : n_z + 1; }

    double rho(int i) const { return d_rho * i; }
    double z(int j) const { return z_min + d_z * j; }
    double z_extent() const { return z_max - z_min; }

    /// Wrap a z index into [0, n_z) for periodic grids; no-op bounds otherwise.
    int wrap_z(int j) const {
        if (!z_periodic) return j;
        j %= n_z;
        return j < 0 ? j + n_z : j;
    }

    bool same_layout(const Grid2D& o) const {
        return n_rho == o.n_rho && n_z == o.n_z && z_periodic == o.z_periodic &&
               rho_max == o.rho_max && z_min == o.z_min && z_max == o.z_max;
    }
};

/// Scalar sample on a Grid2D at one time.  Row-major storage, i_rho outer.
struct ScalarField2D {
    Grid2D grid;
    double t = 0.0;
    std::vector<double> values;

    ScalarField2D() = default;
    explicit ScalarField2D(const Grid2D& g, double time = 0.0)
        : grid(g), t(time),
          values(static_cast<std::size_t>(g.nodes_rho()) * g.nodes_z(), 0.0) {}

    double& operator()(int i, int j) {
        return values[static_cast<std::size_t>(i) * grid.nodes_z() + j];
    }
    double operator()(int i, int j) const {
        return values[static_cast<std::size_t>(i) * grid.nodes_z() + j];
    }
    bool empty() const { return values.empty(); }
};

/// Axisymmetric velocity sample (v_rho, v_phi, v_z) on a Grid2D at one time.
struct AxiField {
    Grid2D grid;
    double t = 0.0;
    ScalarField2D v_rho, v_phi, v_z;

    AxiField() = default;
    explicit AxiField(const Grid2D& g, double time = 0.0)
        : grid(g), t(time), v_rho(g, time), v_phi(g, time), v_z(g, time) {}

    /// Largest axis-node violation of v_rho = v_phi = 0.
    double axis_violation() const;
};

/// Space-time region C(b e3, r) x ]t0 - r^2, t0[ with axis-centered spatial section.
struct ParabolicCylinder {
    double b = 0.0;   // axial offset of the center
    double t0 = 0.0;  // top of the time window
    double r = 0.0;

    ParabolicCylinder() = default;
    ParabolicCylinder(double b_, double t0_, double r_) : b(b_), t0(t0_), r(r_) {
        if (r <= 0.0) throw InvalidArgumentError("cylinder radius must be positive");
    }

    double t_begin() const { return t0 - r * r; }
};

/// Throws OutOfDomainError unless the spatial section {rho < r, |z - b| < r} lies
/// inside the grid.  For periodic z only the width 2r <= z extent is required.
void require_section_inside(const Grid2D& g, double b, double r);

} // namespace axinse
