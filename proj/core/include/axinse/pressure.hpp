#pragma once

#include <vector>

#include "axinse/grid.hpp"
#include "axinse/poisson.hpp"

namespace axinse {

/// Local/harmonic pressure decomposition q = q1 + q2.
struct PressureSplit {
    ScalarField2D q1; // Newtonian part driven by the cutoff source
    ScalarField2D q2; // remainder, discrete-harmonic inside the cutoff
    double cutoff_radius = 0.0;
    double cutoff_center = 0.0;       // axial center of the cutoff cylinder
    double harmonicity_residual = 0.0; // max |Lap_h q2| strictly inside the cutoff
    double harmonicity_tolerance = 0.0; // declared bound (see split_pressure)
};

/// -div div (v (x) v) in axisymmetric form.
ScalarField2D pressure_source(const AxiField& v);

/// Neumann wall data dq/drho(rho_max, z) = v_phi^2/rho at the wall (radial
/// momentum balance with the wall impermeable).
std::vector<double> pressure_wall_flux(const AxiField& v);

/// Pressure recovery: Lap q = -div div (v (x) v) with the Neumann wall data
/// above, normalized to zero mean over the unit cylinder clipped to the domain.
ScalarField2D solve_pressure(const AxiField& v, const PoissonOptions& opt = {});

/// Splits q against the source restricted to the cutoff cylinder.  q1 solves
/// the cutoff-source problem on a box enlarged by the integer factor
/// `box_factor` with homogeneous Dirichlet far field (the bounded-domain
/// surrogate for the whole-space Newtonian potential); q2 = q - q1 exactly.
///
/// The declared harmonicity tolerance is the measured interior consistency
/// max |Lap_h q - S| of the input pair plus a roundoff margin: the enlarged-box
/// solve inverts the same discrete operator, so the residual of q2 inside the
/// cutoff cannot exceed it.
PressureSplit split_pressure(const ScalarField2D& q, const AxiField& v,
                             double cutoff_radius, double cutoff_center = 0.0,
                             int box_factor = 2, const PoissonOptions& opt = {});

/// Max mean oscillation (1/|C|) Int_C |q - [q]_C| over axis-centered cylinders:
/// a lattice of `center_count` axial centers times the given radius ladder.
double bmo_seminorm(const ScalarField2D& q, const std::vector<double>& radii,
                    int center_count = 5);

/// Discrete cylindrical Laplacian with the regular axis row (exposed because
/// harmonicity checks and tests audit against it).
ScalarField2D discrete_laplacian(const ScalarField2D& q);

} // namespace axinse
