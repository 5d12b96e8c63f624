#pragma once

#include <cmath>

#include "axinse/grid.hpp"

namespace axinse {

/// Closed-form manufactured solution for the coupled swirl / vorticity /
/// streamfunction system, with the forcing terms that make it exact.
///
/// Shapes are separable polynomials and trigonometric factors chosen so that
///   psi ~ rho^2 near the axis (regular streamfunction),
///   f and psi vanish at the wall,
///   omega vanishes on the axis,
/// and every derivative needed by the forcings has a closed form that stays
/// finite at rho = 0.
struct ManufacturedSolution {
    double R = 1.0;      // wall radius
    double kz = 3.14159; // axial wavenumber (set 2 pi m / Lz for periodic grids)
    double c0 = 1.3;     // additive constant in the swirl z profile
    double phase_f = 0.7;
    double phase_psi = 0.3;
    double nu = 1.0;

    // time factors
    double Tf(double t) const { return 1.0 + 0.5 * std::sin(t); }
    double dTf(double t) const { return 0.5 * std::cos(t); }
    double Tp(double t) const { return 0.8 + 0.2 * std::cos(t); }
    double dTp(double t) const { return -0.2 * std::sin(t); }

    double f(double rho, double z, double t) const;
    double psi(double rho, double z, double t) const;
    double omega(double rho, double z, double t) const;
    double v_rho(double rho, double z, double t) const;
    double v_z(double rho, double z, double t) const;

    /// Forcing for d_t f + vbar.grad f = nu (Lap f - (2/rho) f_rho) + F_f.
    double forcing_f(double rho, double z, double t) const;
    /// Forcing for the azimuthal vorticity equation.
    double forcing_omega(double rho, double z, double t) const;

    /// Dirichlet wall trace of omega (f and psi traces are identically zero).
    double omega_wall(double z, double t) const { return omega(R, z, t); }
};

void sample_scalar(ScalarField2D& out, double t,
                   double (ManufacturedSolution::*fn)(double, double, double) const,
                   const ManufacturedSolution& mms);

} // namespace axinse
