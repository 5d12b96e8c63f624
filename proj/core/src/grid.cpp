#include "axinse/grid.hpp"

#include <cmath>
#include <string>

namespace axinse {

Grid2D::Grid2D(double rho_max_, double z_min_, double z_max_, int n_rho_, int n_z_,
               bool z_periodic_)
    : rho_max(rho_max_), z_min(z_min_), z_max(z_max_), n_rho(n_rho_), n_z(n_z_),
      z_periodic(z_periodic_) {
    if (n_rho < 2 || n_z < 2)
        throw InvalidArgumentError("grid needs at least two intervals per direction");
    if (rho_max <= 0.0 || z_max <= z_min)
        throw InvalidArgumentError("grid extents must be positive");
    d_rho = rho_max / n_rho;
    d_z = (z_max - z_min) / n_z;
}

double AxiField::axis_violation() const {
    double worst = 0.0;
    for (int j = 0; j < grid.nodes_z(); ++j) {
        worst = std::max(worst, std::abs(v_rho(0, j)));
        worst = std::max(worst, std::abs(v_phi(0, j)));
    }
    return worst;
}

void require_section_inside(const Grid2D& g, double b, double r) {
    const double eps = 1e-12 * std::max(1.0, g.rho_max);
    if (r > g.rho_max + eps)
        throw OutOfDomainError("cylinder radius " + std::to_string(r) +
                               " exceeds rho_max " + std::to_string(g.rho_max));
    if (g.z_periodic) {
        if (2.0 * r > g.z_extent() + eps)
            throw OutOfDomainError("cylinder width exceeds the periodic z extent");
        return;
    }
    if (b - r < g.z_min - eps || b + r > g.z_max + eps)
        throw OutOfDomainError("cylinder [" + std::to_string(b - r) + ", " +
                               std::to_string(b + r) + "] leaves the z range");
}

} // namespace axinse
