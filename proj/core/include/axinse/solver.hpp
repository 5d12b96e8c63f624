#pragma once

#include <optional>
#include <string>
#include <vector>

#include "axinse/grid.hpp"
#include "axinse/mms.hpp"
#include "axinse/poisson.hpp"
#include "axinse/trajectory.hpp"

namespace axinse {

enum class DiffusionMode { Explicit, Implicit };
enum class ZBoundary { Periodic, Mirrored };

/// Raised when a step produces non-finite values or violates its stability
/// bounds; run() converts it into the trajectory's blow-up record.
class BlowupError : public Error {
public:
    BlowupError(const std::string& reason, double t_, long step_)
        : Error(reason), t(t_), step(step_) {}
    double t = 0.0;
    long step = 0;
};

/// Evolving state of the swirl / streamfunction / vorticity formulation.
struct SolverState {
    ScalarField2D f;     // swirl, rho v_phi
    ScalarField2D omega; // azimuthal vorticity
    ScalarField2D psi;   // Stokes streamfunction
    double t = 0.0;
    long step_count = 0;
};

struct Scenario {
    // grid
    double rho_max = 1.0;
    double z_min = -1.0, z_max = 1.0;
    int n_rho = 64, n_z = 64;
    ZBoundary z_boundary = ZBoundary::Periodic;

    // integration
    double nu = 1.0;
    double dt = 0.0; // 0 requests the CFL-derived step
    double t_end = 0.5;
    double snapshot_dt = 0.01;
    double cfl_safety = 0.4;
    DiffusionMode diffusion = DiffusionMode::Explicit;
    bool with_pressure = true;

    // initial condition: zero | rigid_rotation | decaying_vortex | random_swirl
    std::string initial_condition = "zero";
    double ic_amplitude = 1.0;
    unsigned long long ic_seed = 1;
    int ic_modes = 2;
    double ic_meridional = 0.0; // target max |vbar| of the random meridional part

    // forcing: none | ramped_swirl | mms
    std::string forcing = "none";
    double forcing_amplitude = 1.0;
    double forcing_rate = 2.0;       // contraction rate of the ramped bump
    double forcing_sigma = 0.35;     // initial bump width
    double forcing_sigma_min = 0.06; // width floor (grid must resolve it)
    double forcing_ramp_start = 0.0;
    double forcing_z_center = 0.0;

    bool no_swirl = false;
    std::optional<double> swirl_wall; // Dirichlet f at the wall; default: IC trace

    std::string text; // verbatim scenario section, carried as provenance
    std::uint64_t config_hash = 0;

    Grid2D make_grid() const;
    /// Largest explicit step honoring the diffusive bound and, given a velocity
    /// scale, the advective bound, with the configured safety factor.
    double stable_dt(double vmax) const;
};

/// Initial (f, omega, psi) for the scenario; solves psi once.
SolverState initial_state(const Scenario& scenario);

/// psi from omega: solves d_rr psi - (1/rho) d_r psi + d_zz psi = -rho omega
/// with psi = 0 on the axis.  Null boundary pointers mean homogeneous data
/// (stress-free wall, mirrored ends); periodic grids use the direct solver.
ScalarField2D solve_streamfunction(const ScalarField2D& omega_phi,
                                   const std::vector<double>* wall_dirichlet = nullptr,
                                   const std::vector<double>* z_lo = nullptr,
                                   const std::vector<double>* z_hi = nullptr,
                                   const PoissonOptions& opt = {});

/// Velocity reconstruction v_rho = -(1/rho) dpsi/dz, v_z = (1/rho) dpsi/drho,
/// v_phi = f / rho, with parity-consistent axis values.
AxiField reconstruct_velocity(const SolverState& state, const Scenario& scenario);

/// One explicit step (Heun) with optional implicit diffusion.  Throws on
/// NaN/overflow; the caller wraps this in blow-up reporting.
SolverState step(const Scenario& scenario, const SolverState& state, double dt);

/// Integrates the scenario and emits snapshots at the configured cadence.
/// Terminates early with a blow-up record on NaN/overflow or CFL violation.
Trajectory run(const Scenario& scenario);

/// Kinetic energy (1/2) Int |v|^2 dx over the domain.
double kinetic_energy(const AxiField& v);

double max_abs(const ScalarField2D& u);

} // namespace axinse
