#include "axinse/interp.hpp"

#include <algorithm>
#include <cmath>

namespace axinse {

namespace {

// Lagrange cubic weights for 4 consecutive nodes, evaluated at local offset u
// measured in cells from the first stencil node.
void cubic_weights(double u, double w[4]) {
    w[0] = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    w[1] = u * (u - 2.0) * (u - 3.0) / 2.0;
    w[2] = -u * (u - 1.0) * (u - 3.0) / 2.0;
    w[3] = u * (u - 1.0) * (u - 2.0) / 6.0;
}

double ghost_value(const ScalarField2D& f, int i, int j, Parity par) {
    if (i >= 0) return f(i, j);
    return par == Parity::Odd ? -f(-i, j) : f(-i, j);
}

} // namespace

double bicubic_sample(const ScalarField2D& f, double rho, double z, Parity axis_parity) {
    const Grid2D& g = f.grid;
    const int nr = g.nodes_rho();
    const int nz = g.nodes_z();
    if (nr < 4 || nz < 4)
        throw InvalidArgumentError("bicubic sampling needs at least 4 nodes per direction");

    const double eps_r = 1e-9 * g.d_rho;
    if (rho < -eps_r || rho > g.rho_max + eps_r)
        throw OutOfDomainError("bicubic sample outside the radial range");
    rho = std::clamp(rho, 0.0, g.rho_max);

    // Radial stencil: allow start at -2 via parity ghosts, clamp at the wall.
    int ki = static_cast<int>(std::floor(rho / g.d_rho));
    int si = std::min(ki - 1, g.n_rho - 3);
    si = std::max(si, -2);
    const double ur = rho / g.d_rho - si;

    int sj;
    double uz;
    if (g.z_periodic) {
        const double zr = (z - g.z_min) / g.d_z;
        const int kj = static_cast<int>(std::floor(zr));
        sj = kj - 1;
        uz = zr - sj;
    } else {
        const double eps_z = 1e-9 * g.d_z;
        if (z < g.z_min - eps_z || z > g.z_max + eps_z)
            throw OutOfDomainError("bicubic sample outside the z range");
        const double zc = std::clamp(z, g.z_min, g.z_max);
        const double zr = (zc - g.z_min) / g.d_z;
        const int kj = static_cast<int>(std::floor(zr));
        sj = std::clamp(kj - 1, 0, nz - 4);
        uz = zr - sj;
    }

    double wr[4], wz[4];
    cubic_weights(ur, wr);
    cubic_weights(uz, wz);

    double total = 0.0;
    for (int a = 0; a < 4; ++a) {
        const int i = si + a;
        double row = 0.0;
        for (int b = 0; b < 4; ++b) {
            const int j = g.z_periodic ? g.wrap_z(sj + b) : sj + b;
            row += wz[b] * ghost_value(f, i, j, axis_parity);
        }
        total += wr[a] * row;
    }
    return total;
}

VelocitySample bicubic_sample(const AxiField& v, double rho, double z) {
    return {bicubic_sample(v.v_rho, rho, z, Parity::Odd),
            bicubic_sample(v.v_phi, rho, z, Parity::Odd),
            bicubic_sample(v.v_z, rho, z, Parity::Even)};
}

} // namespace axinse
