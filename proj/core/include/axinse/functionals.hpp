#pragma once

#include <string>
#include <vector>

#include "axinse/exponents.hpp"
#include "axinse/grid.hpp"
#include "axinse/trajectory.hpp"

namespace axinse {

struct MixedNormValue {
    MixedNormSpec spec;
    double value = 0.0;
};

struct MonitorSuprema {
    double sup_sqrt_t = 0.0; // sup sqrt(t0 - t) |vbar| over the cylinder
    double sup_xprime = 0.0; // sup |x'| |vbar|
    double sup_swirl = 0.0;  // sup rho |v_phi|
};

/// Scale-invariant functionals of one parabolic cylinder.  The essential
/// supremum is realized as a max over grid nodes and snapshot times (window
/// endpoints linearly interpolated); that convention is carried in the report.
struct FunctionalReport {
    ParabolicCylinder cylinder;
    double A = 0.0; // sup_t (1/r) Int |v|^2
    double E = 0.0; // (1/r) IntInt |grad v|^2
    double C = 0.0; // (1/r^2) IntInt |v|^3
    double D = 0.0; // (1/r^2) IntInt |q|^{3/2}
    double H = 0.0; // (1/r^3) IntInt |v|^2
    std::vector<MixedNormValue> M;
    MonitorSuprema monitors;
    std::string sup_convention = "max over grid nodes and snapshot times";
};

FunctionalReport compute_functionals(const Trajectory& traj, const ParabolicCylinder& cyl,
                                     const std::vector<MixedNormSpec>& mixed_specs,
                                     bool allow_truncation = false);

/// Asserts the nested-region monotonicity r A, r E, r^2 C, r^2 D nondecreasing
/// on a ladder of reports sorted by increasing radius; throws on violation.
void validate_report_ladder(const std::vector<FunctionalReport>& ladder, double rel_tol = 1e-9);

/// C^2 product bump vanishing near the parabolic boundary: flat 1 inside
/// C(b, r_flat) after t_flat, 0 outside C(b, r_supp) and before t_start,
/// quintic-smoothstep ramps in between.  Closed-form derivatives.
struct CutoffBump {
    double b = 0.0;
    double r_flat = 0.3;
    double r_supp = 0.45;
    double t_start = 0.0;
    double t_flat = 0.1;

    double value(double rho, double z, double t) const;
    double dt(double rho, double z, double t) const;
    double laplacian(double rho, double z, double t) const; // cylindrical
    double grad_rho(double rho, double z, double t) const;
    double grad_z(double rho, double z, double t) const;
};

struct EnergyInequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // rhs - lhs, signed, never clamped
    CutoffBump cutoff;
    double t = 0.0;
    double declared_tolerance = 0.0;
};

/// Local energy inequality audit at time t for the given cutoff.
EnergyInequalityReport check_energy_inequality(const Trajectory& traj,
                                               const CutoffBump& cutoff, double t);

struct TypeOneMonitors {
    double t0 = 0.0;
    double r1 = 0.0;
    MonitorSuprema suprema;          // over the full sampled domain
    std::vector<double> times;       // snapshot times
    std::vector<double> g_series;    // G(t): max |v| over C(r1)
    std::vector<double> m_series;    // M(t): running max of G
    double epsilon_star = 0.0;       // min_t M(t) sqrt(t0 - t)
};

/// Amplitude/criterion monitors against a prospective singular time t0
/// (t0 must not precede the last snapshot).
TypeOneMonitors type1_monitors(const Trajectory& traj, double t0, double r1);

struct InterpolationAudit {
    Rational s, l, m, mu;
    double ratio = 0.0;   // empirical constant of the interpolation bound
    bool defined = true;  // false when the bound degenerates inconsistently
};

/// Empirical constant C / (A^mu M_{s,l}^{1/m} (E+H)^{(m-1)/m}) of the report.
InterpolationAudit interpolation_audit(const FunctionalReport& report, const Rational& s,
                                       const Rational& l);

} // namespace axinse
