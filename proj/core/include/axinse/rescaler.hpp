#pragma once

#include <vector>

#include "axinse/functionals.hpp"
#include "axinse/trajectory.hpp"

namespace axinse {

/// One record-breaking amplitude event: M_k = G(t_k) = |v(x_k, t_k)|.
struct PeakRecord {
    int k = 0;
    double t_k = 0.0;
    double rho_k = 0.0;
    double z_k = 0.0;
    double M_k = 0.0;
};

struct PeakOptions {
    double ratio = 1.1;  // a new record must exceed the running max by this factor
    double center = 0.0; // axial center of the search cylinder
};

/// Scans G(t) = max |v| over the cylinder C(center, r1) and emits the records
/// where the running maximum strictly jumps by the configured ratio.  The
/// first snapshot always yields record k = 0.
std::vector<PeakRecord> detect_peaks(const Trajectory& traj, double r1,
                                     const PeakOptions& opts = {});

/// AxisShift rescales around (0, 0, z_k): the shift acts on x3 only so the
/// zoomed field stays axisymmetric and supports the functional ladder.
/// FullRecenter zooms around the peak itself; for off-axis peaks the result is
/// a meridional half-slice surrogate (normalization and boundedness are still
/// checkable, the functional ladder is not).
enum class ZoomConvention { AxisShift, FullRecenter };

struct ZoomOptions {
    int n_rho = 48;
    int n_z = 64;
    int n_t = 9;
    ZoomConvention convention = ZoomConvention::AxisShift;
};

struct ZoomSnapshot {
    PeakRecord peak;
    double lambda = 0.0; // 1 / M_k
    double a = 0.0;      // rescaled window radius: y in C(a), s in ]-a^2, 0]
    ZoomConvention convention = ZoomConvention::AxisShift;
    std::vector<AxiField> u;      // rescaled velocity, one field per s time
    std::vector<ScalarField2D> p; // rescaled pressure (empty without source q)
    std::vector<double> s_times;
    double peak_value = 0.0;        // |u| at the mapped peak (node-exact)
    double interp_tolerance = 0.0;  // measured resampling budget for |u|
};

/// Largest window radius a for which Q(a) maps inside the sampled trajectory.
double max_admissible_window(const Trajectory& traj, const PeakRecord& peak,
                             ZoomConvention convention = ZoomConvention::AxisShift);

/// u(y, s) = lambda v(..., t_k + lambda^2 s) with lambda = 1 / M_k, resampled
/// by bicubic space / linear time interpolation.  Throws OutOfDomainError
/// naming the maximal admissible a when the window escapes the samples.
ZoomSnapshot zoom(const Trajectory& traj, const PeakRecord& peak, double a,
                  const ZoomOptions& opts = {});

struct ZoomVerification {
    double normalization = 0.0; // |u(y'_k, 0, 0)|
    bool normalization_ok = false;
    double sup_u = 0.0; // max |u| over the window
    bool bounded_ok = false;
    double sup_decay = 0.0; // sup |y'| |u|
    double functional_sum_max = 0.0; // max over the ladder of A + E + C + D
    std::vector<FunctionalReport> ladder;
    // per ladder radius: worst relative transport mismatch across A, E, C, H
    // (and D when pressure is available)
    std::vector<double> transport_error;
};

/// Normalization, boundedness, decay and the functional-transport identity
/// F(0, r; u) = F(z_k, lambda r; v) over a radius ladder.
ZoomVerification verify_zoom(const ZoomSnapshot& snap, const Trajectory& source,
                             const std::vector<MixedNormSpec>& specs,
                             const std::vector<double>& radii);

/// Computable Hoelder-quotient distance between two zooms on the same window:
/// max over sampled node pairs of |D(u_a - u_b)| / dist^alpha plus the sup-norm
/// difference, with the parabolic distance max(|y1-y2|, sqrt|s1-s2|).
double holder_distance(const ZoomSnapshot& a, const ZoomSnapshot& b, double alpha = 0.25);

} // namespace axinse
