#include "axinse/mms.hpp"

namespace axinse {

namespace {

// Swirl radial profile P_f = rho^2 (R^2 - rho^2) and derivatives.
double Pf(double rho, double R) { return rho * rho * (R * R - rho * rho); }
double dPf(double rho, double R) { return 2.0 * R * R * rho - 4.0 * rho * rho * rho; }
// P_f'' - P_f'/rho collapses to -8 rho^2 (no 1/rho left at the axis).
double Pf_swirl_bracket(double rho) { return -8.0 * rho * rho; }

// Streamfunction radial profile P = rho^2 (R^2 - rho^2)^2 = R^4 r^2 - 2 R^2 r^4 + r^6.
double Pp(double rho, double R) {
    const double r2 = rho * rho;
    return r2 * (R * R - r2) * (R * R - r2);
}
double dPp(double rho, double R) {
    const double R2 = R * R, r2 = rho * rho;
    return 2.0 * R2 * R2 * rho - 8.0 * R2 * r2 * rho + 6.0 * r2 * r2 * rho;
}
// P / rho and P' / rho, both polynomial.
double Pp_over_rho(double rho, double R) {
    const double R2 = R * R, r2 = rho * rho;
    return rho * (R2 * R2 - 2.0 * R2 * r2 + r2 * r2);
}
double dPp_over_rho(double rho, double R) {
    const double R2 = R * R, r2 = rho * rho;
    return 2.0 * R2 * R2 - 8.0 * R2 * r2 + 6.0 * r2 * r2;
}

} // namespace

// omega = -Tp * Z(z) * W(rho) with W = a rho + b rho^3 + c rho^5,
// a = -16 R^2 - kz^2 R^4, b = 24 + 2 kz^2 R^2, c = -kz^2.
// (W collects (P'' - P'/rho)/1 plus the -kz^2 P/rho part of the z Laplacian.)
namespace {
struct OmegaPoly {
    double a, b, c;
    OmegaPoly(double R, double kz) {
        const double R2 = R * R;
        a = -16.0 * R2 - kz * kz * R2 * R2;
        b = 24.0 + 2.0 * kz * kz * R2;
        c = -kz * kz;
    }
    double W(double rho) const { return rho * (a + rho * rho * (b + rho * rho * c)); }
    double dW(double rho) const {
        const double r2 = rho * rho;
        return a + 3.0 * b * r2 + 5.0 * c * r2 * r2;
    }
    // W'' + W'/rho - W/rho^2 = 8 b rho + 24 c rho^3 (exact cancellation of 1/rho)
    double diffusion_bracket(double rho) const {
        return 8.0 * b * rho + 24.0 * c * rho * rho * rho;
    }
};
} // namespace

double ManufacturedSolution::f(double rho, double z, double t) const {
    return Tf(t) * Pf(rho, R) * (c0 + std::sin(kz * z + phase_f));
}

double ManufacturedSolution::psi(double rho, double z, double t) const {
    return Tp(t) * Pp(rho, R) * std::sin(kz * z + phase_psi);
}

double ManufacturedSolution::omega(double rho, double z, double t) const {
    const OmegaPoly w(R, kz);
    return -Tp(t) * std::sin(kz * z + phase_psi) * w.W(rho);
}

double ManufacturedSolution::v_rho(double rho, double z, double t) const {
    return -Tp(t) * Pp_over_rho(rho, R) * kz * std::cos(kz * z + phase_psi);
}

double ManufacturedSolution::v_z(double rho, double z, double t) const {
    return Tp(t) * dPp_over_rho(rho, R) * std::sin(kz * z + phase_psi);
}

double ManufacturedSolution::forcing_f(double rho, double z, double t) const {
    const double Zf = c0 + std::sin(kz * z + phase_f);
    const double dZf = kz * std::cos(kz * z + phase_f);
    const double ddZf = -kz * kz * std::sin(kz * z + phase_f);

    const double f_t = dTf(t) * Pf(rho, R) * Zf;
    const double f_r = Tf(t) * dPf(rho, R) * Zf;
    const double f_z = Tf(t) * Pf(rho, R) * dZf;
    // nu * (f_rr - f_r/rho + f_zz)
    const double diff = nu * Tf(t) * (Zf * Pf_swirl_bracket(rho) + Pf(rho, R) * ddZf);
    return f_t + v_rho(rho, z, t) * f_r + v_z(rho, z, t) * f_z - diff;
}

double ManufacturedSolution::forcing_omega(double rho, double z, double t) const {
    const OmegaPoly w(R, kz);
    const double S = std::sin(kz * z + phase_psi);
    const double C = std::cos(kz * z + phase_psi);

    const double om = -Tp(t) * S * w.W(rho);
    const double om_t = -dTp(t) * S * w.W(rho);
    const double om_r = -Tp(t) * S * w.dW(rho);
    const double om_z = -Tp(t) * kz * C * w.W(rho);
    // nu (om_rr + om_r/rho - om/rho^2 + om_zz)
    const double diff =
        nu * (-Tp(t) * S * w.diffusion_bracket(rho) + Tp(t) * kz * kz * S * w.W(rho));

    const double vr = v_rho(rho, z, t);
    const double vz = v_z(rho, z, t);
    // v_rho/rho stays finite: -Tp kz cos(..) (R^4 - 2 R^2 rho^2 + rho^4)
    const double R2 = R * R, r2 = rho * rho;
    const double vr_over_rho_exact = -Tp(t) * (R2 * R2 - 2.0 * R2 * r2 + r2 * r2) * kz * C;

    // swirl source d_z(f^2)/rho^3 = 2 f f_z / rho^3 with f^2/rho^3 polynomial
    const double Zf = c0 + std::sin(kz * z + phase_f);
    const double dZf = kz * std::cos(kz * z + phase_f);
    const double pf_sq_over_r3 = rho * (R2 - r2) * (R2 - r2); // P_f^2 / rho^3
    const double swirl_src = 2.0 * Tf(t) * Tf(t) * Zf * dZf * pf_sq_over_r3;

    return om_t + vr * om_r + vz * om_z - vr_over_rho_exact * om - swirl_src - diff;
}

void sample_scalar(ScalarField2D& out, double t,
                   double (ManufacturedSolution::*fn)(double, double, double) const,
                   const ManufacturedSolution& mms) {
    const Grid2D& g = out.grid;
    out.t = t;
    for (int i = 0; i < g.nodes_rho(); ++i)
        for (int j = 0; j < g.nodes_z(); ++j)
            out(i, j) = (mms.*fn)(g.rho(i), g.z(j), t);
}

} // namespace axinse
