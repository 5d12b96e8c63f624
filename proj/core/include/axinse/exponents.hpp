#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "axinse/error.hpp"

namespace axinse {

/// Exact rational scalar; all exponent algebra is drift-free and converted to
/// doubles only at reporting boundaries.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "7/4", "10", "-3/2" and decimal literals like "1.9" exactly.
Rational parse_rational(const std::string& text);
std::string rational_string(const Rational& r);
double rational_double(const Rational& r);

/// Mixed space-time norm exponents with the scale-invariance weight
/// kappa = l (3/s + 2/l - 1).
struct MixedNormSpec {
    Rational s, l, kappa;
};

MixedNormSpec make_mixed_norm_spec(const Rational& s, const Rational& l);

/// Admissibility of the interpolation inequality:
/// 3/s + 2/l - 3/2 >= max(1/2 - 1/s, 1/s - 1/6).
bool admissible_as3(const Rational& s, const Rational& l);

/// Feasibility of the bootstrap triangle:
/// 1/s + 1/l >= 2/3,  2/s + 1/l >= 1,  3/s + 2/l < 2.
bool feasible_e7(const Rational& s, const Rational& l);

struct ExponentReport {
    MixedNormSpec spec;
    Rational m, mu;
    Rational alpha1, alpha2, alpha3;
    bool admissible = false;       // admissible_as3
    bool feasible = false;         // feasible_e7
    bool bootstrap_closes = false; // alpha1 + alpha2 < 2/3
    // Known published constants for this (s, l) pair, when tabulated; the mu
    // mismatch for (4, 12/7) is deliberately surfaced rather than resolved.
    std::optional<Rational> quoted_m, quoted_mu;
    bool m_matches_quoted = true;
    bool mu_matches_quoted = true;
};

/// Closed-form exponents for n = 3.  Throws InvalidArgumentError when s < 1,
/// l < 1, or the denominator 3/s + 2/l - 3/2 vanishes.
ExponentReport exponent_report(const Rational& s, const Rational& l);

/// Independent oracle: exact Gaussian elimination on the 3x3 Hoelder system
/// with Sobolev exponent 2* from 1/2* = 1/2 - 1/n.  Returns nullopt when the
/// system is singular.
std::optional<std::array<Rational, 3>> solve_holder_system(const Rational& s,
                                                           const Rational& l, int n = 3);

/// True iff the scalar bootstrap closes unconditionally: alpha1 + alpha2 < 2/3.
bool heuristic_bootstrap_check(const ExponentReport& report);

struct ScanPoint {
    Rational x, y; // x = 1/s, y = 1/l in ]0,1]^2
    bool feasible = false;
    bool degenerate = false; // 3x + 2y = 3/2; alphas undefined there
    Rational alpha1, alpha2, alpha3;
};

struct ScanResult {
    int resolution = 0;
    std::vector<ScanPoint> points;
    long feasible_count = 0;
    bool has_l_below_2_s_above_1 = false; // some feasible point with y > 1/2, x < 1
};

ScanResult scan_feasible_region(int resolution);

/// One scalar energy-certificate recursion x <- contraction * x + additive with
/// contraction = c (theta + epsilon / theta^2).
struct CertificateTrace {
    double theta = 0.0;
    double epsilon = 0.0;
    double contraction = 0.0;
    double additive = 0.0;
    std::vector<double> sequence;
    bool bounded = false;
    bool bound_defined = false;
    double bound = 0.0; // additive / (1 - contraction) when defined
};

CertificateTrace certificate_iteration(double E0, double c, double theta, double epsilon,
                                       double additive, int steps);

/// Picks (theta, epsilon) satisfying the quarter conditions c*theta < 1/4 and
/// c*epsilon/theta^2 < 1/4, which force contraction <= 1/2.
std::pair<double, double> choose_certificate_params(double c);

} // namespace axinse
