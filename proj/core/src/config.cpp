#include "axinse/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace axinse {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& v, const std::string& key) {
    try {
        return rational_double(parse_rational(v));
    } catch (const Error&) {
        throw ConfigError("key '" + key + "': cannot parse number '" + v + "'");
    }
}

long to_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long n = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse integer '" + v + "'");
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> items;
    std::string cur;
    for (char c : v) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) items.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) items.push_back(cur);
    return items;
}

std::vector<double> to_real_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    for (const std::string& item : split_list(v)) out.push_back(to_real(item, key));
    return out;
}

// "(7/4,10) (4,12/7)" -> validated mixed norm specs
std::vector<MixedNormSpec> to_specs(const std::string& v, const std::string& key) {
    std::vector<MixedNormSpec> out;
    std::size_t pos = 0;
    while (true) {
        const auto open = v.find('(', pos);
        if (open == std::string::npos) break;
        const auto close = v.find(')', open);
        if (close == std::string::npos)
            throw ConfigError("key '" + key + "': unbalanced parenthesis");
        const std::string body = v.substr(open + 1, close - open - 1);
        const auto comma = body.find(',');
        if (comma == std::string::npos)
            throw ConfigError("key '" + key + "': pair needs 's, l'");
        Rational s, l;
        try {
            s = parse_rational(body.substr(0, comma));
            l = parse_rational(body.substr(comma + 1));
        } catch (const Error& e) {
            throw ConfigError("key '" + key + "': " + e.what());
        }
        if (!admissible_as3(s, l) || !feasible_e7(s, l))
            throw ConfigError("key '" + key + "': pair (" + rational_string(s) + ", " +
                              rational_string(l) +
                              ") rejected: must satisfy the interpolation admissibility "
                              "(as3) and the bootstrap feasibility triangle (e7)");
        out.push_back(make_mixed_norm_spec(s, l));
        pos = close + 1;
    }
    if (out.empty()) throw ConfigError("key '" + key + "': no (s, l) pairs found");
    return out;
}

void validate_dyadic_ladder(std::vector<double>& radii, const std::string& key) {
    if (radii.empty()) throw ConfigError("key '" + key + "': empty ladder");
    std::sort(radii.begin(), radii.end());
    for (double r : radii)
        if (r <= 0.0) throw ConfigError("key '" + key + "': radii must be positive");
    for (std::size_t k = 1; k < radii.size(); ++k) {
        if (std::abs(radii[k] - 2.0 * radii[k - 1]) > 1e-12 * radii[k])
            throw ConfigError("key '" + key + "': ladder must be dyadic (each radius twice "
                              "the previous)");
    }
}

struct Parser {
    Config cfg;
    std::string section;
    bool saw_mixed_norms = false;

    void handle(const std::string& key, const std::string& value, int line);
    void scenario_key(const std::string& key, const std::string& value);
    void diagnostics_key(const std::string& key, const std::string& value);
    void rescaler_key(const std::string& key, const std::string& value);
    void output_key(const std::string& key, const std::string& value);
};

void Parser::scenario_key(const std::string& k, const std::string& v) {
    Scenario& sc = cfg.scenario;
    if (k == "rho_max") sc.rho_max = to_real(v, k);
    else if (k == "z_min") sc.z_min = to_real(v, k);
    else if (k == "z_max") sc.z_max = to_real(v, k);
    else if (k == "n_rho") sc.n_rho = static_cast<int>(to_int(v, k));
    else if (k == "n_z") sc.n_z = static_cast<int>(to_int(v, k));
    else if (k == "z_boundary") {
        if (v == "periodic") sc.z_boundary = ZBoundary::Periodic;
        else if (v == "mirrored") sc.z_boundary = ZBoundary::Mirrored;
        else throw ConfigError("key 'z_boundary': expected periodic or mirrored");
    } else if (k == "nu") sc.nu = to_real(v, k);
    else if (k == "dt") sc.dt = v == "auto" ? 0.0 : to_real(v, k);
    else if (k == "t_end") sc.t_end = to_real(v, k);
    else if (k == "snapshot_dt") sc.snapshot_dt = to_real(v, k);
    else if (k == "cfl_safety") sc.cfl_safety = to_real(v, k);
    else if (k == "diffusion") {
        if (v == "explicit") sc.diffusion = DiffusionMode::Explicit;
        else if (v == "implicit") sc.diffusion = DiffusionMode::Implicit;
        else throw ConfigError("key 'diffusion': expected explicit or implicit");
    } else if (k == "with_pressure") sc.with_pressure = to_bool(v, k);
    else if (k == "initial_condition") sc.initial_condition = v;
    else if (k == "ic_amplitude") sc.ic_amplitude = to_real(v, k);
    else if (k == "ic_seed") sc.ic_seed = static_cast<unsigned long long>(to_int(v, k));
    else if (k == "ic_modes") sc.ic_modes = static_cast<int>(to_int(v, k));
    else if (k == "ic_meridional") sc.ic_meridional = to_real(v, k);
    else if (k == "forcing") sc.forcing = v;
    else if (k == "forcing_amplitude") sc.forcing_amplitude = to_real(v, k);
    else if (k == "forcing_rate") sc.forcing_rate = to_real(v, k);
    else if (k == "forcing_sigma") sc.forcing_sigma = to_real(v, k);
    else if (k == "forcing_sigma_min") sc.forcing_sigma_min = to_real(v, k);
    else if (k == "forcing_ramp_start") sc.forcing_ramp_start = to_real(v, k);
    else if (k == "forcing_z_center") sc.forcing_z_center = to_real(v, k);
    else if (k == "no_swirl") sc.no_swirl = to_bool(v, k);
    else if (k == "swirl_wall") {
        if (v == "from_ic") sc.swirl_wall.reset();
        else sc.swirl_wall = to_real(v, k);
    } else throw ConfigError("unknown key '" + k + "' in [scenario]");
}

void Parser::diagnostics_key(const std::string& k, const std::string& v) {
    DiagnosticsConfig& d = cfg.diagnostics;
    if (k == "cylinder_b") d.cylinder_b = to_real(v, k);
    else if (k == "cylinder_t0") {
        if (v == "auto") d.cylinder_t0.reset();
        else d.cylinder_t0 = to_real(v, k);
    } else if (k == "radii") {
        d.radii = to_real_list(v, k);
        validate_dyadic_ladder(d.radii, k);
    } else if (k == "mixed_norms") {
        d.mixed_norms = to_specs(v, k);
        saw_mixed_norms = true;
    } else if (k == "cutoff_flat") d.cutoff_flat = to_real(v, k);
    else if (k == "cutoff_supp") d.cutoff_supp = to_real(v, k);
    else if (k == "cutoff_ramp") d.cutoff_ramp = to_real(v, k);
    else if (k == "monitor_r1") d.monitor_r1 = to_real(v, k);
    else if (k == "energy_times") {
        if (v == "auto") d.energy_times.clear();
        else d.energy_times = to_real_list(v, k);
    } else throw ConfigError("unknown key '" + k + "' in [diagnostics]");
}

void Parser::rescaler_key(const std::string& k, const std::string& v) {
    RescalerConfig& r = cfg.rescaler;
    if (k == "r1") r.r1 = to_real(v, k);
    else if (k == "record_ratio") r.record_ratio = to_real(v, k);
    else if (k == "window") r.window = to_real(v, k);
    else if (k == "zoom_n_rho") r.zoom_n_rho = static_cast<int>(to_int(v, k));
    else if (k == "zoom_n_z") r.zoom_n_z = static_cast<int>(to_int(v, k));
    else if (k == "zoom_n_t") r.zoom_n_t = static_cast<int>(to_int(v, k));
    else if (k == "convention") {
        if (v == "axis") r.convention = ZoomConvention::AxisShift;
        else if (v == "full") r.convention = ZoomConvention::FullRecenter;
        else throw ConfigError("key 'convention': expected axis or full");
    } else if (k == "ladder") {
        r.ladder = to_real_list(v, k);
        validate_dyadic_ladder(r.ladder, k);
    } else throw ConfigError("unknown key '" + k + "' in [rescaler]");
}

void Parser::output_key(const std::string& k, const std::string& v) {
    OutputConfig& o = cfg.output;
    if (k == "dir") o.dir = v;
    else if (k == "formats") {
        o.csv = o.json = false;
        for (const std::string& f : split_list(v)) {
            if (f == "csv") o.csv = true;
            else if (f == "json") o.json = true;
            else throw ConfigError("key 'formats': unknown format '" + f + "'");
        }
    } else throw ConfigError("unknown key '" + k + "' in [output]");
}

void Parser::handle(const std::string& key, const std::string& value, int line) {
    try {
        if (section == "scenario") scenario_key(key, value);
        else if (section == "diagnostics") diagnostics_key(key, value);
        else if (section == "rescaler") rescaler_key(key, value);
        else if (section == "output") output_key(key, value);
        else throw ConfigError("key outside of any [section]");
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), line);
    }
}

void semantic_checks(Config& cfg) {
    Scenario& sc = cfg.scenario;
    if (sc.rho_max <= 0.0 || sc.z_max <= sc.z_min)
        throw ConfigError("scenario extents must be positive");
    if (sc.n_rho < 8 || sc.n_z < 8) throw ConfigError("grid needs at least 8 intervals");
    if (sc.nu <= 0.0) throw ConfigError("viscosity nu must be positive");
    if (sc.t_end <= 0.0 || sc.snapshot_dt <= 0.0)
        throw ConfigError("t_end and snapshot_dt must be positive");
    if (sc.cfl_safety <= 0.0 || sc.cfl_safety > 1.0)
        throw ConfigError("cfl_safety must lie in ]0, 1]");
    if (sc.diffusion == DiffusionMode::Implicit && sc.z_boundary != ZBoundary::Periodic)
        throw ConfigError("implicit diffusion requires periodic z");

    DiagnosticsConfig& d = cfg.diagnostics;
    if (d.mixed_norms.empty()) {
        d.mixed_norms.push_back(make_mixed_norm_spec(Rational(7, 4), Rational(10)));
        d.mixed_norms.push_back(make_mixed_norm_spec(Rational(4), Rational(12, 7)));
        d.mixed_norms.push_back(make_mixed_norm_spec(Rational(3), Rational(3)));
    }
    if (d.cutoff_flat <= 0.0 || d.cutoff_supp <= d.cutoff_flat)
        throw ConfigError("cutoff needs 0 < cutoff_flat < cutoff_supp");
    if (d.cutoff_ramp <= 0.0) throw ConfigError("cutoff_ramp must be positive");

    RescalerConfig& r = cfg.rescaler;
    if (r.record_ratio <= 1.0) throw ConfigError("record_ratio must exceed 1");
    if (r.window <= 0.0) throw ConfigError("rescaler window must be positive");
    if (r.zoom_n_rho < 8 || r.zoom_n_z < 8 || r.zoom_n_t < 2)
        throw ConfigError("zoom grid too small");
    for (double rad : r.ladder)
        if (rad > r.window + 1e-12)
            throw ConfigError("rescaler ladder radius exceeds the window");
}

} // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Config parse_config(const std::string& text) {
    Parser parser;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::string scenario_lines;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError("malformed section header", line_no);
            const std::string name = trim(t.substr(1, t.size() - 2));
            if (name != "scenario" && name != "diagnostics" && name != "rescaler" &&
                name != "output")
                throw ConfigError("unknown section [" + name + "]", line_no);
            parser.section = name;
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + t + "'", line_no);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("expected 'key = value', got '" + t + "'", line_no);
        parser.handle(key, value, line_no);
        if (parser.section == "scenario") scenario_lines += t + "\n";
    }

    semantic_checks(parser.cfg);
    parser.cfg.raw_text = text;
    parser.cfg.hash = fnv1a64(text);
    parser.cfg.scenario.text = scenario_lines;
    parser.cfg.scenario.config_hash = parser.cfg.hash;
    return parser.cfg;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

} // namespace axinse
