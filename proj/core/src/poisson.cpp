#include "axinse/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>

namespace axinse {

namespace {

constexpr double kPi = 3.14159265358979323846;

// FFTW planning is not thread safe; executions on distinct plans are.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

enum class Family { Stream, PressureLap, OmegaDiff };
enum class WallKind { Dirichlet, Neumann };

struct Tridiag {
    std::vector<double> sub, diag, sup;
    void resize(int n) {
        sub.assign(n, 0.0);
        diag.assign(n, 0.0);
        sup.assign(n, 0.0);
    }
};

// Radial rows of the transformed operator with -sigma on the diagonal
// (sigma = z-mode symbol plus any Helmholtz shift).  Dirichlet rows are identity.
void build_radial(Family fam, WallKind wall, const Grid2D& g, double sigma, Tridiag& T) {
    const int n = g.n_rho;
    const double h = g.d_rho, h2 = h * h;
    T.resize(n + 1);
    if (fam == Family::PressureLap) {
        T.diag[0] = -4.0 / h2 - sigma;
        T.sup[0] = 4.0 / h2;
    } else {
        T.diag[0] = 1.0;
    }
    for (int i = 1; i < n; ++i) {
        const double rho = g.rho(i);
        const double drift = 1.0 / (2.0 * rho * h);
        if (fam == Family::Stream) {
            T.sub[i] = 1.0 / h2 + drift;
            T.sup[i] = 1.0 / h2 - drift;
        } else {
            T.sub[i] = 1.0 / h2 - drift;
            T.sup[i] = 1.0 / h2 + drift;
        }
        T.diag[i] = -2.0 / h2 - sigma;
        if (fam == Family::OmegaDiff) T.diag[i] -= 1.0 / (rho * rho);
    }
    if (wall == WallKind::Dirichlet) {
        T.diag[n] = 1.0;
    } else {
        T.sub[n] = 2.0 / h2;
        T.diag[n] = -2.0 / h2 - sigma;
    }
}

void thomas(const Tridiag& T, std::vector<double>& x, std::vector<double>& cp,
            std::vector<double>& dp) {
    const int n = static_cast<int>(x.size());
    cp.resize(n);
    dp.resize(n);
    double beta = T.diag[0];
    if (beta == 0.0) throw ConvergenceError("tridiagonal solve hit a zero pivot");
    cp[0] = T.sup[0] / beta;
    dp[0] = x[0] / beta;
    for (int i = 1; i < n; ++i) {
        beta = T.diag[i] - T.sub[i] * cp[i - 1];
        if (beta == 0.0) throw ConvergenceError("tridiagonal solve hit a zero pivot");
        cp[i] = T.sup[i] / beta;
        dp[i] = (x[i] - T.sub[i] * dp[i - 1]) / beta;
    }
    x[n - 1] = dp[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = dp[i] - cp[i] * x[i + 1];
}

// Left null vector of the singular zero-mode matrix (PressureLap, Neumann wall):
// solves T^t w = 0 with w_0 = 1 by the three-term recurrence over columns.
std::vector<double> left_null_vector(const Tridiag& T) {
    const int n = static_cast<int>(T.diag.size());
    std::vector<double> w(n, 0.0);
    w[0] = 1.0;
    w[1] = -T.diag[0] * w[0] / T.sub[1];
    for (int j = 1; j < n - 1; ++j)
        w[j + 1] = -(T.sup[j - 1] * w[j - 1] + T.diag[j] * w[j]) / T.sub[j + 1];
    return w;
}

struct PeriodicPlan {
    int nr, nz, nzc;
    std::vector<double> real;
    std::vector<std::complex<double>> spec;
    fftw_plan fwd = nullptr, inv = nullptr;

    PeriodicPlan(int nr_, int nz_) : nr(nr_), nz(nz_), nzc(nz_ / 2 + 1) {
        real.assign(static_cast<std::size_t>(nr) * nz, 0.0);
        spec.assign(static_cast<std::size_t>(nr) * nzc, {0.0, 0.0});
        std::lock_guard<std::mutex> lk(fftw_mutex());
        fwd = fftw_plan_many_dft_r2c(1, &nz, nr, real.data(), nullptr, 1, nz,
                                     reinterpret_cast<fftw_complex*>(spec.data()), nullptr, 1,
                                     nzc, FFTW_ESTIMATE);
        inv = fftw_plan_many_dft_c2r(1, &nz, nr, reinterpret_cast<fftw_complex*>(spec.data()),
                                     nullptr, 1, nzc, real.data(), nullptr, 1, nz,
                                     FFTW_ESTIMATE);
        if (!fwd || !inv) throw ConvergenceError("fftw planning failed");
    }
    ~PeriodicPlan() {
        std::lock_guard<std::mutex> lk(fftw_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
    }
};

// Generic z-periodic solve.  helm_coef > 0 solves (I - helm_coef * Op) u = rhs,
// helm_coef == 0 solves Op u = rhs.  wall_data is a Dirichlet trace or Neumann flux.
ScalarField2D solve_periodic_impl(const ScalarField2D& rhs, Family fam, WallKind wall,
                                  const std::vector<double>& wall_data, double helm_coef) {
    const Grid2D& g = rhs.grid;
    if (!g.z_periodic) throw InvalidArgumentError("periodic solver requires a periodic grid");
    const int nr = g.nodes_rho();
    const int nz = g.nodes_z();
    if (static_cast<int>(wall_data.size()) != nz)
        throw InvalidArgumentError("wall data must have one entry per z node");

    PeriodicPlan plan(nr + 1, nz); // one extra row carries the wall data transform
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nz; ++j) plan.real[static_cast<std::size_t>(i) * nz + j] = rhs(i, j);
    for (int j = 0; j < nz; ++j)
        plan.real[static_cast<std::size_t>(nr) * nz + j] = wall_data[j];
    fftw_execute(plan.fwd);

    const double shift = helm_coef > 0.0 ? 1.0 / helm_coef : 0.0;
    const double rhs_scale = helm_coef > 0.0 ? -1.0 / helm_coef : 1.0;

    Tridiag T;
    std::vector<double> xre(nr), xim(nr), cp, dp;
    const int nzc = plan.nzc;
    for (int m = 0; m < nzc; ++m) {
        const double k2 = (2.0 - 2.0 * std::cos(2.0 * kPi * m / nz)) / (g.d_z * g.d_z);
        const double sigma = k2 + shift;
        build_radial(fam, wall, g, sigma, T);

        const std::complex<double> wall_m = plan.spec[static_cast<std::size_t>(nr) * nzc + m];
        for (int part = 0; part < 2; ++part) {
            std::vector<double>& x = part == 0 ? xre : xim;
            for (int i = 0; i < nr; ++i) {
                const std::complex<double> s = plan.spec[static_cast<std::size_t>(i) * nzc + m];
                x[i] = rhs_scale * (part == 0 ? s.real() : s.imag());
            }
            const double wv = part == 0 ? wall_m.real() : wall_m.imag();
            if (fam != Family::PressureLap) x[0] = 0.0; // Dirichlet axis
            if (wall == WallKind::Dirichlet) {
                x[nr - 1] = wv;
            } else {
                x[nr - 1] -= (2.0 / g.d_rho + 1.0 / g.rho_max) * wv;
            }
        }

        const bool singular = fam == Family::PressureLap && wall == WallKind::Neumann &&
                              m == 0 && shift == 0.0;
        if (singular) {
            const std::vector<double> w = left_null_vector(T);
            double wsum = 0.0, wdot = 0.0;
            for (int i = 0; i < nr; ++i) {
                wsum += w[i];
                wdot += w[i] * xre[i];
            }
            const double c = wdot / wsum;
            for (int i = 0; i < nr; ++i) xre[i] -= c;
            // pin the axis value; the dropped row is satisfied by consistency
            T.sub[0] = 0.0;
            T.diag[0] = 1.0;
            T.sup[0] = 0.0;
            xre[0] = 0.0;
            std::fill(xim.begin(), xim.end(), 0.0);
        }

        thomas(T, xre, cp, dp);
        thomas(T, xim, cp, dp);
        for (int i = 0; i < nr; ++i)
            plan.spec[static_cast<std::size_t>(i) * nzc + m] = {xre[i], xim[i]};
    }
    // zero the scratch wall row before the inverse transform
    for (int m = 0; m < nzc; ++m)
        plan.spec[static_cast<std::size_t>(nr) * nzc + m] = {0.0, 0.0};

    fftw_execute(plan.inv);
    ScalarField2D out(g, rhs.t);
    const double norm = 1.0 / nz;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nz; ++j)
            out(i, j) = plan.real[static_cast<std::size_t>(i) * nz + j] * norm;
    return out;
}

enum class ZEnd { Dirichlet, Neumann };

// Lexicographic SOR on the bounded-z five-point system.
ScalarField2D sor_impl(const ScalarField2D& rhs, Family fam, WallKind wall,
                       const std::vector<double>& wall_data, ZEnd zend,
                       const std::vector<double>* zlo, const std::vector<double>* zhi,
                       bool pin_origin, const PoissonOptions& opt) {
    const Grid2D& g = rhs.grid;
    if (g.z_periodic) throw InvalidArgumentError("SOR path expects a bounded grid");
    const int nr = g.nodes_rho();
    const int nz = g.nodes_z();
    const int n = g.n_rho;
    const double dz2 = g.d_z * g.d_z;

    Tridiag T;
    build_radial(fam, wall, g, 0.0, T);

    ScalarField2D u(g, rhs.t);
    ScalarField2D b = rhs;

    // Move boundary data into b and freeze Dirichlet rows.
    if (wall == WallKind::Dirichlet) {
        for (int j = 0; j < nz; ++j) u(n, j) = wall_data[j];
    } else {
        for (int j = 0; j < nz; ++j)
            b(n, j) -= (2.0 / g.d_rho + 1.0 / g.rho_max) * wall_data[j];
    }
    if (fam != Family::PressureLap)
        for (int j = 0; j < nz; ++j) u(0, j) = 0.0;
    if (zend == ZEnd::Dirichlet) {
        for (int i = 0; i < nr; ++i) {
            u(i, 0) = zlo ? (*zlo)[i] : 0.0;
            u(i, nz - 1) = zhi ? (*zhi)[i] : 0.0;
        }
    }

    double scale = 0.0;
    for (double v : b.values) scale = std::max(scale, std::abs(v));
    if (wall == WallKind::Dirichlet)
        for (double v : wall_data) scale = std::max(scale, std::abs(v));
    if (zend == ZEnd::Dirichlet) {
        const double hz2_scale = 1.0 / dz2;
        if (zlo)
            for (double v : *zlo) scale = std::max(scale, std::abs(v) * hz2_scale);
        if (zhi)
            for (double v : *zhi) scale = std::max(scale, std::abs(v) * hz2_scale);
    }
    if (scale == 0.0) scale = 1.0;

    if (pin_origin) {
        // Make the all-Neumann problem discretely consistent, then fix one value.
        double wsum = 0.0, wdot = 0.0;
        for (int i = 0; i < nr; ++i) {
            const double wr = (i == 0 || i == n) ? 0.5 : 1.0;
            for (int j = 0; j < nz; ++j) {
                const double wz = (j == 0 || j == nz - 1) ? 0.5 : 1.0;
                const double wgt = wr * wz * std::max(g.rho(i), 0.25 * g.d_rho);
                wsum += wgt;
                wdot += wgt * b(i, j);
            }
        }
        const double c = wdot / wsum;
        for (double& v : b.values) v -= c;
    }

    const bool row0_active = fam == Family::PressureLap;
    const int i_lo = row0_active ? 0 : 1;
    const int i_hi = wall == WallKind::Neumann ? n : n - 1;
    const int j_lo = zend == ZEnd::Neumann ? 0 : 1;
    const int j_hi = zend == ZEnd::Neumann ? nz - 1 : nz - 2;

    auto apply_row = [&](int i, int j) -> std::pair<double, double> {
        // returns (off-diagonal sum, diagonal) of the operator at (i, j)
        double off = 0.0;
        double diag = T.diag[i];
        if (i > 0) off += T.sub[i] * u(i - 1, j);
        if (i < n) off += T.sup[i] * u(i + 1, j);
        // z coupling
        if (j == 0) {
            off += 2.0 * u(i, 1) / dz2;
            diag += -2.0 / dz2;
        } else if (j == nz - 1) {
            off += 2.0 * u(i, nz - 2) / dz2;
            diag += -2.0 / dz2;
        } else {
            off += (u(i, j + 1) + u(i, j - 1)) / dz2;
            diag += -2.0 / dz2;
        }
        return {off, diag};
    };

    const int n_eff = std::max(g.n_rho, g.n_z);
    const double omega = 2.0 / (1.0 + std::sin(kPi / n_eff));

    long iter = 0;
    for (;; ++iter) {
        if (iter >= opt.sor_max_iter)
            throw ConvergenceError("SOR failed to reach residual target " +
                                   std::to_string(opt.sor_tol));
        for (int i = i_lo; i <= i_hi; ++i) {
            for (int j = j_lo; j <= j_hi; ++j) {
                if (pin_origin && i == 0 && j == 0) continue;
                auto [off, diag] = apply_row(i, j);
                const double unew = (b(i, j) - off) / diag;
                u(i, j) += omega * (unew - u(i, j));
            }
        }
        if (iter % 20 == 19) {
            double res = 0.0;
            for (int i = i_lo; i <= i_hi; ++i)
                for (int j = j_lo; j <= j_hi; ++j) {
                    if (pin_origin && i == 0 && j == 0) continue;
                    auto [off, diag] = apply_row(i, j);
                    res = std::max(res, std::abs(off + diag * u(i, j) - b(i, j)));
                }
            if (res <= opt.sor_tol * scale) break;
        }
    }
    return u;
}

} // namespace

ScalarField2D solve_stream_periodic(const ScalarField2D& rhs,
                                    const std::vector<double>& wall_dirichlet) {
    return solve_periodic_impl(rhs, Family::Stream, WallKind::Dirichlet, wall_dirichlet, 0.0);
}

ScalarField2D solve_pressure_periodic(const ScalarField2D& rhs,
                                      const std::vector<double>& wall_neumann_flux) {
    return solve_periodic_impl(rhs, Family::PressureLap, WallKind::Neumann, wall_neumann_flux,
                               0.0);
}

ScalarField2D helmholtz_swirl_periodic(const ScalarField2D& rhs, double coef,
                                       const std::vector<double>& wall_dirichlet) {
    if (coef <= 0.0) throw InvalidArgumentError("helmholtz coefficient must be positive");
    return solve_periodic_impl(rhs, Family::Stream, WallKind::Dirichlet, wall_dirichlet, coef);
}

ScalarField2D helmholtz_omega_periodic(const ScalarField2D& rhs, double coef,
                                       const std::vector<double>& wall_dirichlet) {
    if (coef <= 0.0) throw InvalidArgumentError("helmholtz coefficient must be positive");
    return solve_periodic_impl(rhs, Family::OmegaDiff, WallKind::Dirichlet, wall_dirichlet,
                               coef);
}

ScalarField2D solve_box_dirichlet(const ScalarField2D& rhs) {
    const Grid2D& g = rhs.grid;
    if (g.z_periodic) throw InvalidArgumentError("Dirichlet box solve expects a bounded grid");
    const int nr = g.nodes_rho();
    const int nzi = g.n_z - 1; // interior z nodes
    if (nzi < 2) throw InvalidArgumentError("Dirichlet box needs at least 3 z intervals");

    std::vector<double> data(static_cast<std::size_t>(nr) * nzi);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nzi; ++j)
            data[static_cast<std::size_t>(i) * nzi + j] = rhs(i, j + 1);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lk(fftw_mutex());
        const fftw_r2r_kind kind = FFTW_RODFT00;
        int nzi_copy = nzi;
        plan = fftw_plan_many_r2r(1, &nzi_copy, nr, data.data(), nullptr, 1, nzi, data.data(),
                                  nullptr, 1, nzi, &kind, FFTW_ESTIMATE);
    }
    fftw_execute(plan);

    Tridiag T;
    std::vector<double> x(nr), cp, dp;
    for (int k = 0; k < nzi; ++k) {
        const double k2 = (2.0 - 2.0 * std::cos(kPi * (k + 1) / g.n_z)) / (g.d_z * g.d_z);
        build_radial(Family::PressureLap, WallKind::Dirichlet, g, k2, T);
        for (int i = 0; i < nr; ++i) x[i] = data[static_cast<std::size_t>(i) * nzi + k];
        x[nr - 1] = 0.0;
        thomas(T, x, cp, dp);
        for (int i = 0; i < nr; ++i) data[static_cast<std::size_t>(i) * nzi + k] = x[i];
    }

    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lk(fftw_mutex());
        fftw_destroy_plan(plan);
    }

    ScalarField2D out(g, rhs.t);
    const double norm = 1.0 / (2.0 * g.n_z);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nzi; ++j)
            out(i, j + 1) = data[static_cast<std::size_t>(i) * nzi + j] * norm;
    return out;
}

ScalarField2D solve_stream_sor(const ScalarField2D& rhs, const std::vector<double>& wall,
                               const std::vector<double>& z_lo, const std::vector<double>& z_hi,
                               const PoissonOptions& opt) {
    return sor_impl(rhs, Family::Stream, WallKind::Dirichlet, wall, ZEnd::Dirichlet, &z_lo,
                    &z_hi, false, opt);
}

ScalarField2D solve_pressure_sor(const ScalarField2D& rhs,
                                 const std::vector<double>& wall_neumann_flux,
                                 const PoissonOptions& opt) {
    return sor_impl(rhs, Family::PressureLap, WallKind::Neumann, wall_neumann_flux,
                    ZEnd::Neumann, nullptr, nullptr, true, opt);
}

} // namespace axinse
