#pragma once

#include <utility>

#include "axinse/grid.hpp"

namespace axinse {

/// Reflection parity across the axis rho = 0 (and across mirrored z ends).
enum class Parity { Even, Odd };

// Centered node derivatives: parity ghosts at the axis, one-sided second order
// at the wall; z wraps when periodic, one-sided at bounded ends.
double d_rho_at(const ScalarField2D& u, int i, int j, Parity axis_parity);
double d_z_at(const ScalarField2D& u, int i, int j);
double d_zz_at(const ScalarField2D& u, int i, int j);

/// Split v into its meridional part (v_rho, 0, v_z) and swirl part (0, v_phi, 0).
/// The two parts recombine to v bit-exactly.
std::pair<AxiField, AxiField> decompose(const AxiField& v);

/// Discrete right-hand side of the swirl equation, Lap f - (2/rho) df/drho,
/// evaluated with centered differences; the axis row is 0 by the parity
/// convention.  Throws if f is nonzero on the axis beyond tolerance.
ScalarField2D swirl_operator(const ScalarField2D& f);

/// Pointwise |v| as a scalar field.
ScalarField2D magnitude(const AxiField& v);

/// Full cylindrical |grad v|^2 including the metric terms
/// (v_rho^2 + v_phi^2)/rho^2; axis nodes use the parity-consistent limit.
ScalarField2D grad_norm_squared(const AxiField& v);

/// Discrete cylindrical divergence (1/rho) d(rho v_rho)/drho + dv_z/dz.
ScalarField2D divergence(const AxiField& v);

/// Integral over the piecewise-linear interpolant of uniformly spaced samples,
/// clipped exactly to [a, b].  Second order for smooth integrands.
double trapezoid_clipped(const double* g, int n, double x0, double h, double a, double b);

/// Integral of |field|^p over the spatial section {rho < r, |z - b| < r},
/// computed as 2 pi Int Int |field|^p rho drho dz.  The section must lie inside
/// the grid unless allow_truncation is set (then it is clipped to the grid).
double integrate_power_section(const ScalarField2D& field, double b, double r, double p,
                               bool allow_truncation = false);

/// Signed integral of field over the same section (no absolute value, p = 1).
double integrate_section(const ScalarField2D& field, double b, double r,
                         bool allow_truncation = false);

/// Signed integral of field over the whole sampled domain.
double integrate_domain(const ScalarField2D& field);

/// Volume 2 pi r^2 * min(2r, z extent) of the section, via the same quadrature.
double section_volume(const Grid2D& g, double b, double r, bool allow_truncation = false);

} // namespace axinse
