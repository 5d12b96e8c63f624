#include "axinse/reports.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace axinse {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::trunc) {
    if (!out_) throw Error("cannot open " + path + " for writing");
}

void CsvWriter::header(const std::vector<std::string>& cols) {
    width_ = cols.size();
    for (std::size_t k = 0; k < cols.size(); ++k)
        out_ << cols[k] << (k + 1 < cols.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw Error("CSV row width mismatch");
    for (std::size_t k = 0; k < cells.size(); ++k)
        out_ << cells[k] << (k + 1 < cells.size() ? "," : "\n");
}

std::string mixed_norm_label(const MixedNormSpec& spec) {
    return "M(" + rational_string(spec.s) + ";" + rational_string(spec.l) + ")";
}

namespace {

nlohmann::ordered_json report_to_json(const FunctionalReport& rep) {
    nlohmann::ordered_json j;
    j["cylinder"] = {{"b", rep.cylinder.b}, {"t0", rep.cylinder.t0}, {"r", rep.cylinder.r}};
    j["A"] = rep.A;
    j["E"] = rep.E;
    j["C"] = rep.C;
    j["D"] = rep.D;
    j["H"] = rep.H;
    nlohmann::ordered_json ms = nlohmann::ordered_json::array();
    for (const MixedNormValue& mv : rep.M) {
        ms.push_back({{"s", rational_string(mv.spec.s)},
                      {"l", rational_string(mv.spec.l)},
                      {"kappa", rational_string(mv.spec.kappa)},
                      {"value", mv.value}});
    }
    j["mixed_norms"] = ms;
    j["monitors"] = {{"sup_sqrt_t", rep.monitors.sup_sqrt_t},
                     {"sup_xprime", rep.monitors.sup_xprime},
                     {"sup_swirl", rep.monitors.sup_swirl}};
    j["sup_convention"] = rep.sup_convention;
    return j;
}

} // namespace

std::string functional_reports_json(const std::vector<FunctionalReport>& ladder,
                                    const std::vector<std::vector<InterpolationAudit>>& audits,
                                    const Config& cfg) {
    nlohmann::ordered_json j;
    j["config_hash"] = hash_hex(cfg.hash);
    j["wall_bc_note"] = "stress-free wall (psi = omega = 0, Dirichlet swirl); "
                        "artifact choice, not part of the interior statements";
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        nlohmann::ordered_json jr = report_to_json(ladder[k]);
        if (k < audits.size()) {
            nlohmann::ordered_json ja = nlohmann::ordered_json::array();
            for (const InterpolationAudit& a : audits[k]) {
                ja.push_back({{"s", rational_string(a.s)},
                              {"l", rational_string(a.l)},
                              {"m", rational_string(a.m)},
                              {"mu", rational_string(a.mu)},
                              {"ratio", a.ratio},
                              {"defined", a.defined}});
            }
            jr["interpolation_audits"] = ja;
        }
        reps.push_back(jr);
    }
    j["reports"] = reps;
    return j.dump(2) + "\n";
}

std::string exponent_reports_json(const std::vector<ExponentReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ExponentReport& rep : reports) {
        nlohmann::ordered_json j;
        j["s"] = rational_string(rep.spec.s);
        j["l"] = rational_string(rep.spec.l);
        j["kappa"] = rational_string(rep.spec.kappa);
        j["m"] = rational_string(rep.m);
        j["mu"] = rational_string(rep.mu);
        j["alpha"] = {rational_string(rep.alpha1), rational_string(rep.alpha2),
                      rational_string(rep.alpha3)};
        j["admissible_as3"] = rep.admissible;
        j["feasible_e7"] = rep.feasible;
        j["bootstrap_closes"] = rep.bootstrap_closes;
        if (rep.quoted_m) {
            j["quoted_m"] = rational_string(*rep.quoted_m);
            j["m_matches_quoted"] = rep.m_matches_quoted;
        }
        if (rep.quoted_mu) {
            j["quoted_mu"] = rational_string(*rep.quoted_mu);
            j["mu_matches_quoted"] = rep.mu_matches_quoted;
            if (!rep.mu_matches_quoted)
                j["note"] = "formula value kept; quoted value reported side by side "
                            "(known discrepancy, not silently resolved)";
        }
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

std::string zoom_verifications_json(const std::vector<ZoomSnapshot>& snaps,
                                    const std::vector<ZoomVerification>& checks,
                                    const Config& cfg) {
    nlohmann::ordered_json j;
    j["config_hash"] = hash_hex(cfg.hash);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < snaps.size(); ++k) {
        const ZoomSnapshot& s = snaps[k];
        nlohmann::ordered_json e;
        e["k"] = s.peak.k;
        e["t_k"] = s.peak.t_k;
        e["rho_k"] = s.peak.rho_k;
        e["z_k"] = s.peak.z_k;
        e["M_k"] = s.peak.M_k;
        e["lambda"] = s.lambda;
        e["window"] = s.a;
        e["interp_tolerance"] = s.interp_tolerance;
        if (k < checks.size()) {
            const ZoomVerification& v = checks[k];
            e["normalization"] = v.normalization;
            e["normalization_ok"] = v.normalization_ok;
            e["sup_u"] = v.sup_u;
            e["bounded_ok"] = v.bounded_ok;
            e["sup_decay"] = v.sup_decay;
            e["functional_sum_max"] = v.functional_sum_max;
            e["transport_error"] = v.transport_error;
        }
        arr.push_back(e);
    }
    j["zooms"] = arr;
    return j.dump(2) + "\n";
}

} // namespace axinse
