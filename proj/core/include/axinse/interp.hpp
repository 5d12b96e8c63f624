#pragma once

#include "axinse/fields.hpp"
#include "axinse/grid.hpp"

namespace axinse {

/// Cubic Lagrange interpolation in rho and z on 4x4 node stencils.
///
/// Stencils reaching across the axis use parity-reflected ghost values; in z they
/// wrap when the grid is periodic and shift inward near bounded ends.  Sampling
/// exactly at a node reproduces the node value.
double bicubic_sample(const ScalarField2D& u, double rho, double z, Parity axis_parity);

struct VelocitySample {
    double v_rho, v_phi, v_z;
};

/// Component-wise bicubic sample of a velocity field (v_rho, v_phi odd; v_z even).
VelocitySample bicubic_sample(const AxiField& v, double rho, double z);

} // namespace axinse
