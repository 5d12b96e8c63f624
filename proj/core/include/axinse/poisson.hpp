#pragma once

#include <vector>

#include "axinse/grid.hpp"

namespace axinse {

struct PoissonOptions {
    double sor_tol = 1e-10;     // residual target relative to the source scale
    long sor_max_iter = 2000000;
};

// Direct solves for z-periodic grids: FFT in z, Thomas solves in rho per mode.
// The discrete z symbol is used, so these invert the 5-point operators exactly.

/// (d_rr - (1/rho) d_r + d_zz) psi = rhs, psi(0,z) = 0, psi(rho_max,z) = wall(z).
ScalarField2D solve_stream_periodic(const ScalarField2D& rhs,
                                    const std::vector<double>& wall_dirichlet);

/// (d_rr + (1/rho) d_r + d_zz) q = rhs with regular axis and Neumann wall data
/// dq/drho(rho_max,z) = flux(z).  The zero mode is made discretely compatible by
/// subtracting a constant from the source; the returned field has q(0,0) pinned,
/// callers normalize as needed.
ScalarField2D solve_pressure_periodic(const ScalarField2D& rhs,
                                      const std::vector<double>& wall_neumann_flux);

/// (I - coef * (d_rr - (1/rho) d_r + d_zz)) f = rhs, Dirichlet axis 0 / wall(z).
ScalarField2D helmholtz_swirl_periodic(const ScalarField2D& rhs, double coef,
                                       const std::vector<double>& wall_dirichlet);

/// (I - coef * (d_rr + (1/rho) d_r - 1/rho^2 + d_zz)) w = rhs, Dirichlet rows.
ScalarField2D helmholtz_omega_periodic(const ScalarField2D& rhs, double coef,
                                       const std::vector<double>& wall_dirichlet);

/// Laplacian with regular axis, homogeneous Dirichlet at the wall and both z
/// ends, on a bounded grid: DST-I in z plus radial Thomas solves.  Used for the
/// enlarged-box Newtonian-potential surrogate.
ScalarField2D solve_box_dirichlet(const ScalarField2D& rhs);

// Relaxation fallback for bounded (mirrored) z: lexicographic SOR with a fixed
// residual target.  Deterministic; throws ConvergenceError past the iteration cap.

/// Streamfunction operator with Dirichlet data on all four sides.
ScalarField2D solve_stream_sor(const ScalarField2D& rhs, const std::vector<double>& wall,
                               const std::vector<double>& z_lo, const std::vector<double>& z_hi,
                               const PoissonOptions& opt = {});

/// Pressure Laplacian, Neumann wall flux, homogeneous Neumann z ends (mirrored).
ScalarField2D solve_pressure_sor(const ScalarField2D& rhs,
                                 const std::vector<double>& wall_neumann_flux,
                                 const PoissonOptions& opt = {});

} // namespace axinse
