#include "axinse/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts are unsupported");

namespace axinse {

namespace {

constexpr char kMagic[8] = {'A', 'X', 'S', 'N', 'A', 'P', '1', '\0'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
    buf.append(reinterpret_cast<const char*>(&v), 4);
}
void put_f64(std::string& buf, double v) {
    buf.append(reinterpret_cast<const char*>(&v), 8);
}

struct Reader {
    const char* p;
    const char* end;
    void need(std::size_t n) const {
        if (static_cast<std::size_t>(end - p) < n)
            throw Error("snapshot file truncated");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v;
        std::memcpy(&v, p, 4);
        p += 4;
        return v;
    }
    double f64() {
        need(8);
        double v;
        std::memcpy(&v, p, 8);
        p += 8;
        return v;
    }
    std::string str(std::size_t n) {
        need(n);
        std::string s(p, n);
        p += n;
        return s;
    }
};

std::string header_bytes(const Grid2D& g, double t, int kind, const SnapshotMeta& meta) {
    std::string buf;
    buf.append(kMagic, 8);
    put_u32(buf, kVersion);
    put_u32(buf, static_cast<std::uint32_t>(kind));
    put_u32(buf, static_cast<std::uint32_t>(g.n_rho));
    put_u32(buf, static_cast<std::uint32_t>(g.n_z));
    put_u32(buf, g.z_periodic ? 1u : 0u);
    put_u32(buf, static_cast<std::uint32_t>(meta.entries.size()));
    put_f64(buf, g.rho_max);
    put_f64(buf, g.z_min);
    put_f64(buf, g.z_max);
    put_f64(buf, t);
    for (const auto& [key, value] : meta.entries) {
        put_u32(buf, static_cast<std::uint32_t>(key.size()));
        buf.append(key);
        put_f64(buf, value);
    }
    return buf;
}

void append_array(std::string& buf, const std::vector<double>& a) {
    buf.append(reinterpret_cast<const char*>(a.data()), a.size() * sizeof(double));
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for " + path);
}

} // namespace

void SnapshotMeta::set(const std::string& key, double value) {
    for (auto& e : entries)
        if (e.first == key) {
            e.second = value;
            return;
        }
    entries.emplace_back(key, value);
}

std::optional<double> SnapshotMeta::get(const std::string& key) const {
    for (const auto& e : entries)
        if (e.first == key) return e.second;
    return std::nullopt;
}

void write_velocity_snapshot(const std::string& path, const AxiField& v,
                             const SnapshotMeta& meta) {
    std::string buf = header_bytes(v.grid, v.t, 0, meta);
    append_array(buf, v.v_rho.values);
    append_array(buf, v.v_phi.values);
    append_array(buf, v.v_z.values);
    write_file(path, buf);
}

void write_scalar_snapshot(const std::string& path, const ScalarField2D& s,
                           const SnapshotMeta& meta) {
    std::string buf = header_bytes(s.grid, s.t, 1, meta);
    append_array(buf, s.values);
    write_file(path, buf);
}

LoadedSnapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reader r{bytes.data(), bytes.data() + bytes.size()};

    if (r.str(8) != std::string(kMagic, 8)) throw Error(path + ": bad snapshot magic");
    if (r.u32() != kVersion) throw Error(path + ": unsupported snapshot version");
    const int kind = static_cast<int>(r.u32());
    const int n_rho = static_cast<int>(r.u32());
    const int n_z = static_cast<int>(r.u32());
    const bool zper = (r.u32() & 1u) != 0;
    const std::uint32_t n_meta = r.u32();
    const double rho_max = r.f64();
    const double z_min = r.f64();
    const double z_max = r.f64();
    const double t = r.f64();

    LoadedSnapshot out;
    out.kind = kind;
    for (std::uint32_t k = 0; k < n_meta; ++k) {
        const std::uint32_t len = r.u32();
        std::string key = r.str(len);
        out.meta.entries.emplace_back(std::move(key), r.f64());
    }

    Grid2D g(rho_max, z_min, z_max, n_rho, n_z, zper);
    const std::size_t count = static_cast<std::size_t>(g.nodes_rho()) * g.nodes_z();
    auto read_array = [&](std::vector<double>& a) {
        a.resize(count);
        r.need(count * sizeof(double));
        std::memcpy(a.data(), r.p, count * sizeof(double));
        r.p += count * sizeof(double);
    };

    if (kind == 0) {
        out.v = AxiField(g, t);
        read_array(out.v.v_rho.values);
        read_array(out.v.v_phi.values);
        read_array(out.v.v_z.values);
    } else if (kind == 1) {
        out.s = ScalarField2D(g, t);
        read_array(out.s.values);
    } else {
        throw Error(path + ": unknown snapshot kind");
    }
    return out;
}

void save_trajectory(const Trajectory& traj, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    nlohmann::ordered_json manifest;
    manifest["format"] = 1;
    manifest["dt"] = traj.dt;
    manifest["snapshot_dt"] = traj.snapshot_dt;
    manifest["config_hash"] = traj.config_hash;
    manifest["scenario"] = traj.scenario_text;
    manifest["blowup"] = {{"triggered", traj.blowup.triggered},
                          {"step", traj.blowup.step},
                          {"t", traj.blowup.t},
                          {"reason", traj.blowup.reason}};

    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    char name[64];
    for (std::size_t k = 0; k < traj.snaps.size(); ++k) {
        std::snprintf(name, sizeof(name), "snap_%06zu.axs", k);
        const std::string vfile = name;
        write_velocity_snapshot(dir + "/" + vfile, traj.snaps[k].v);
        nlohmann::ordered_json entry;
        entry["t"] = traj.snaps[k].t();
        entry["v"] = vfile;
        if (traj.snaps[k].has_pressure()) {
            std::snprintf(name, sizeof(name), "pres_%06zu.axs", k);
            write_scalar_snapshot(dir + "/" + std::string(name), traj.snaps[k].q);
            entry["q"] = std::string(name);
        }
        files.push_back(entry);
    }
    manifest["snapshots"] = files;

    if (!traj.max_swirl_history.empty()) {
        std::string bytes;
        bytes.append(reinterpret_cast<const char*>(traj.max_swirl_history.data()),
                     traj.max_swirl_history.size() * sizeof(double));
        write_file(dir + "/max_swirl.bin", bytes);
        manifest["max_swirl"] = "max_swirl.bin";
    }

    std::ofstream out(dir + "/manifest.json");
    if (!out) throw Error("cannot write manifest in " + dir);
    out << manifest.dump(2) << "\n";
}

Trajectory load_trajectory(const std::string& dir) {
    std::ifstream in(dir + "/manifest.json");
    if (!in) throw Error("no manifest.json in " + dir);
    nlohmann::json manifest = nlohmann::json::parse(in);

    Trajectory traj;
    traj.dt = manifest.at("dt").get<double>();
    traj.snapshot_dt = manifest.at("snapshot_dt").get<double>();
    traj.config_hash = manifest.value("config_hash", 0ull);
    traj.scenario_text = manifest.value("scenario", std::string());
    if (manifest.contains("blowup")) {
        const auto& b = manifest["blowup"];
        traj.blowup.triggered = b.value("triggered", false);
        traj.blowup.step = b.value("step", 0l);
        traj.blowup.t = b.value("t", 0.0);
        traj.blowup.reason = b.value("reason", std::string());
    }
    for (const auto& entry : manifest.at("snapshots")) {
        TrajectorySnapshot snap;
        LoadedSnapshot lv = read_snapshot(dir + "/" + entry.at("v").get<std::string>());
        if (lv.kind != 0) throw Error("expected a velocity snapshot");
        snap.v = std::move(lv.v);
        if (entry.contains("q")) {
            LoadedSnapshot lq = read_snapshot(dir + "/" + entry.at("q").get<std::string>());
            if (lq.kind != 1) throw Error("expected a scalar snapshot");
            snap.q = std::move(lq.s);
        }
        traj.snaps.push_back(std::move(snap));
    }
    if (traj.snaps.empty()) throw Error("trajectory in " + dir + " holds no snapshots");
    traj.grid = traj.snaps.front().v.grid;

    if (manifest.contains("max_swirl")) {
        std::ifstream ms(dir + "/" + manifest["max_swirl"].get<std::string>(),
                         std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(ms)),
                          std::istreambuf_iterator<char>());
        traj.max_swirl_history.resize(bytes.size() / sizeof(double));
        std::memcpy(traj.max_swirl_history.data(), bytes.data(),
                    traj.max_swirl_history.size() * sizeof(double));
    }
    traj.validate_spacing();
    return traj;
}

} // namespace axinse
