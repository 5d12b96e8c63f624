#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "axinse/grid.hpp"

namespace axinse {

/// One stored time level: velocity plus (optionally) recovered pressure.
struct TrajectorySnapshot {
    AxiField v;
    ScalarField2D q; // may be empty when pressure was not requested
    double t() const { return v.t; }
    bool has_pressure() const { return !q.empty(); }
};

struct BlowupInfo {
    bool triggered = false;
    long step = 0;
    double t = 0.0;
    std::string reason;
};

/// Time-ordered snapshots with uniform spacing, plus run provenance.
struct Trajectory {
    Grid2D grid;
    double dt = 0.0;          // solver step used to produce the snapshots
    double snapshot_dt = 0.0; // spacing between stored snapshots
    std::vector<TrajectorySnapshot> snaps;
    std::string scenario_text;           // provenance: the scenario section verbatim
    std::uint64_t config_hash = 0;
    BlowupInfo blowup;
    std::vector<double> max_swirl_history; // per solver step, max |f|

    double t_first() const { return snaps.front().t(); }
    double t_last() const { return snaps.back().t(); }
    std::size_t size() const { return snaps.size(); }
    bool empty() const { return snaps.empty(); }

    /// Indices bracketing time t; throws OutOfDomainError outside the span.
    std::pair<std::size_t, std::size_t> bracket(double t) const;

    /// Verify strictly increasing, uniformly spaced snapshot times.
    void validate_spacing(double rel_tol = 1e-9) const;
};

} // namespace axinse
