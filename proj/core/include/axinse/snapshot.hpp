#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "axinse/grid.hpp"
#include "axinse/trajectory.hpp"

namespace axinse {

/// Ordered key/value metadata stored in a snapshot header (used for zoom
/// provenance: k, lambda, t_k, ...).  Keys are short ASCII strings.
struct SnapshotMeta {
    std::vector<std::pair<std::string, double>> entries;

    void set(const std::string& key, double value);
    std::optional<double> get(const std::string& key) const;
};

// Binary snapshot format "AXSNAP1": little-endian header (grid metadata, time,
// flags, metadata entries) followed by the component arrays as raw f64 in
// row-major order with i_rho outer.  Round-trips bit exactly.  The full layout
// is documented in the project README.

void write_velocity_snapshot(const std::string& path, const AxiField& v,
                             const SnapshotMeta& meta = {});
void write_scalar_snapshot(const std::string& path, const ScalarField2D& s,
                           const SnapshotMeta& meta = {});

struct LoadedSnapshot {
    int kind = 0; // 0 velocity, 1 scalar
    AxiField v;
    ScalarField2D s;
    SnapshotMeta meta;
};

LoadedSnapshot read_snapshot(const std::string& path);

/// Write a trajectory as a directory: manifest.json plus one velocity (and
/// optional pressure) snapshot file per stored time level.
void save_trajectory(const Trajectory& traj, const std::string& dir);

Trajectory load_trajectory(const std::string& dir);

} // namespace axinse
