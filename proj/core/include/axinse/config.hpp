#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "axinse/exponents.hpp"
#include "axinse/rescaler.hpp"
#include "axinse/solver.hpp"

namespace axinse {

struct DiagnosticsConfig {
    double cylinder_b = 0.0;
    std::optional<double> cylinder_t0; // default: last snapshot time
    std::vector<double> radii = {0.125, 0.25, 0.5}; // dyadic, ascending
    std::vector<MixedNormSpec> mixed_norms;         // validated against (as3) and (e7)
    double cutoff_flat = 0.3;
    double cutoff_supp = 0.45;
    double cutoff_ramp = 0.1; // plateau reached this long after the window start
    double monitor_r1 = 0.5;
    std::vector<double> energy_times; // empty: every snapshot past the plateau
};

struct RescalerConfig {
    double r1 = 0.5;
    double record_ratio = 1.1;
    double window = 0.5;
    int zoom_n_rho = 48;
    int zoom_n_z = 64;
    int zoom_n_t = 9;
    ZoomConvention convention = ZoomConvention::AxisShift;
    std::vector<double> ladder = {0.125, 0.25}; // functional radii inside the window
};

struct OutputConfig {
    std::string dir = "out";
    bool csv = true;
    bool json = true;
};

struct Config {
    Scenario scenario;
    DiagnosticsConfig diagnostics;
    RescalerConfig rescaler;
    OutputConfig output;
    std::uint64_t hash = 0;
    std::string raw_text;
};

/// Parses the line-based `key = value` grammar with [section] headers
/// documented in the README.  Unknown keys and semantic violations are hard
/// errors carrying the offending line or key.
Config parse_config(const std::string& text);

Config load_config_file(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);

} // namespace axinse
