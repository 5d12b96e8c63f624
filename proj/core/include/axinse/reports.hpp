#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "axinse/config.hpp"
#include "axinse/functionals.hpp"
#include "axinse/rescaler.hpp"

namespace axinse {

/// 17 significant digits: CSV cells round-trip to the same double.
std::string format_double(double v);

std::string hash_hex(std::uint64_t h);

/// CSV with a fixed header, LF endings, fully deterministic cell content.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t width_ = 0;
};

std::string mixed_norm_label(const MixedNormSpec& spec);

std::string functional_reports_json(const std::vector<FunctionalReport>& ladder,
                                    const std::vector<std::vector<InterpolationAudit>>& audits,
                                    const Config& cfg);

std::string exponent_reports_json(const std::vector<ExponentReport>& reports);

std::string zoom_verifications_json(const std::vector<ZoomSnapshot>& snaps,
                                    const std::vector<ZoomVerification>& checks,
                                    const Config& cfg);

} // namespace axinse
