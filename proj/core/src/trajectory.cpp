#include "axinse/trajectory.hpp"

#include <cmath>

namespace axinse {

std::pair<std::size_t, std::size_t> Trajectory::bracket(double t) const {
    if (empty()) throw InvalidArgumentError("empty trajectory");
    const double eps = 1e-9 * std::max(1.0, std::abs(t_last()));
    if (t < t_first() - eps || t > t_last() + eps)
        throw OutOfDomainError("time " + std::to_string(t) + " outside sampled span [" +
                               std::to_string(t_first()) + ", " + std::to_string(t_last()) + "]");
    if (snaps.size() == 1) return {0, 0};
    const double step = snapshot_dt > 0.0 ? snapshot_dt
                                          : (t_last() - t_first()) / (snaps.size() - 1);
    double pos = (t - t_first()) / step;
    auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo >= snaps.size() - 1) lo = snaps.size() - 2;
    return {lo, lo + 1};
}

void Trajectory::validate_spacing(double rel_tol) const {
    if (snaps.size() < 2) return;
    const double step = snaps[1].t() - snaps[0].t();
    if (step <= 0.0) throw InvalidArgumentError("snapshot times must increase");
    for (std::size_t k = 1; k < snaps.size(); ++k) {
        const double d = snaps[k].t() - snaps[k - 1].t();
        if (std::abs(d - step) > rel_tol * std::max(1.0, std::abs(step)) + 1e-12)
            throw InvalidArgumentError("snapshot times are not uniformly spaced");
    }
}

} // namespace axinse
