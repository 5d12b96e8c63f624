#include "axinse/exponents.hpp"

#include <algorithm>
#include <cctype>

namespace axinse {

namespace {

using Int = boost::multiprecision::cpp_int;

Rational rat(long num, long den = 1) { return Rational(num, den); }

Rational pow10(int k) {
    Int v = 1;
    for (int i = 0; i < k; ++i) v *= 10;
    return Rational(v);
}

struct QuotedConstants {
    Rational s, l, m, mu;
};

// Constants quoted for the two worked mixed-norm choices; the mu value for
// (4, 12/7) disagrees with the displayed formula and is reported side by side.
const std::array<QuotedConstants, 2>& quoted_table() {
    static const std::array<QuotedConstants, 2> table = {
        QuotedConstants{rat(7, 4), rat(10), rat(58, 7), rat(1, 58)},
        QuotedConstants{rat(4), rat(12, 7), rat(10, 7), rat(3, 14)},
    };
    return table;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InvalidArgumentError("empty rational literal");

    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw InvalidArgumentError("bad rational: " + text);
        const Rational d{Int(den)};
        if (d == 0) throw InvalidArgumentError("zero denominator: " + text);
        return Rational{Int(num)} / d;
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const int frac = static_cast<int>(s.size() - dot - 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw InvalidArgumentError("bad decimal: " + text);
        return Rational(Int(digits)) / pow10(frac);
    }
    return Rational(Int(s));
}

std::string rational_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double rational_double(const Rational& r) { return r.convert_to<double>(); }

MixedNormSpec make_mixed_norm_spec(const Rational& s, const Rational& l) {
    if (s < 1 || l < 1) throw InvalidArgumentError("mixed norm requires s >= 1 and l >= 1");
    MixedNormSpec spec;
    spec.s = s;
    spec.l = l;
    spec.kappa = l * (rat(3) / s + rat(2) / l - 1);
    return spec;
}

bool admissible_as3(const Rational& s, const Rational& l) {
    if (s < 1 || l < 1) return false;
    const Rational lhs = rat(3) / s + rat(2) / l - rat(3, 2);
    const Rational rhs = std::max(rat(1, 2) - 1 / s, 1 / s - rat(1, 6));
    return lhs >= rhs;
}

bool feasible_e7(const Rational& s, const Rational& l) {
    if (s < 1 || l < 1) return false;
    return 1 / s + 1 / l >= rat(2, 3) && rat(2) / s + 1 / l >= 1 && rat(3) / s + rat(2) / l < 2;
}

ExponentReport exponent_report(const Rational& s, const Rational& l) {
    ExponentReport rep;
    rep.spec = make_mixed_norm_spec(s, l);

    const Rational den = rat(3) / s + rat(2) / l - rat(3, 2);
    if (den == 0)
        throw InvalidArgumentError("degenerate exponent pair: 3/s + 2/l = 3/2");

    rep.m = 2 * l * den;
    rep.mu = (l / rep.m) * (rat(3) / s + rat(3) / l - 2);
    rep.alpha1 = (1 / s + 1 / l - rat(2, 3)) / den;
    rep.alpha2 = (rat(2) / s + 1 / l - 1) / den;
    rep.alpha3 = rat(1, 6) / den;
    rep.admissible = admissible_as3(s, l);
    rep.feasible = feasible_e7(s, l);
    rep.bootstrap_closes = rep.alpha1 + rep.alpha2 < rat(2, 3);

    for (const auto& q : quoted_table()) {
        if (q.s == s && q.l == l) {
            rep.quoted_m = q.m;
            rep.quoted_mu = q.mu;
            rep.m_matches_quoted = rep.m == q.m;
            rep.mu_matches_quoted = rep.mu == q.mu;
        }
    }
    return rep;
}

std::optional<std::array<Rational, 3>> solve_holder_system(const Rational& s,
                                                           const Rational& l, int n) {
    if (n < 3) throw InvalidArgumentError("dimension must be >= 3");
    const Rational inv_2star = rat(1, 2) - Rational(1, n);

    // rows of [A | b] for (alpha1, alpha2, alpha3)
    std::array<std::array<Rational, 4>, 3> M = {{
        {rat(1), rat(1), rat(1), rat(1)},
        {rat(1, 2), inv_2star, 1 / s, rat(1, 3)},
        {rat(0), rat(1, 2), 1 / l, rat(1, 3)},
    }};

    for (int col = 0; col < 3; ++col) {
        int pivot = -1;
        for (int row = col; row < 3; ++row)
            if (M[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(M[col], M[pivot]);
        for (int row = 0; row < 3; ++row) {
            if (row == col) continue;
            const Rational factor = M[row][col] / M[col][col];
            for (int k = col; k < 4; ++k) M[row][k] -= factor * M[col][k];
        }
    }
    return std::array<Rational, 3>{M[0][3] / M[0][0], M[1][3] / M[1][1], M[2][3] / M[2][2]};
}

bool heuristic_bootstrap_check(const ExponentReport& report) {
    return report.alpha1 + report.alpha2 < rat(2, 3);
}

ScanResult scan_feasible_region(int resolution) {
    if (resolution < 8) throw InvalidArgumentError("scan resolution must be >= 8");
    ScanResult result;
    result.resolution = resolution;
    result.points.reserve(static_cast<std::size_t>(resolution) * resolution);

    for (int i = 1; i <= resolution; ++i) {
        for (int j = 1; j <= resolution; ++j) {
            ScanPoint p;
            p.x = Rational(i, resolution);
            p.y = Rational(j, resolution);
            const Rational s = 1 / p.x, l = 1 / p.y;
            p.feasible = feasible_e7(s, l);
            const Rational den = 3 * p.x + 2 * p.y - rat(3, 2);
            p.degenerate = den == 0;
            if (!p.degenerate) {
                p.alpha1 = (p.x + p.y - rat(2, 3)) / den;
                p.alpha2 = (2 * p.x + p.y - 1) / den;
                p.alpha3 = rat(1, 6) / den;
            }
            if (p.feasible) {
                ++result.feasible_count;
                if (p.y > rat(1, 2) && p.x < 1) result.has_l_below_2_s_above_1 = true;
            }
            result.points.push_back(std::move(p));
        }
    }
    return result;
}

CertificateTrace certificate_iteration(double E0, double c, double theta, double epsilon,
                                       double additive, int steps) {
    if (E0 < 0.0 || c < 0.0 || theta <= 0.0 || epsilon < 0.0 || additive < 0.0)
        throw InvalidArgumentError("certificate inputs must be nonnegative (theta positive)");
    if (steps < 1) throw InvalidArgumentError("certificate iteration needs steps >= 1");

    CertificateTrace trace;
    trace.theta = theta;
    trace.epsilon = epsilon;
    trace.additive = additive;
    trace.contraction = c * (theta + epsilon / (theta * theta));
    trace.bounded = trace.contraction < 1.0;
    trace.bound_defined = trace.bounded;
    if (trace.bounded) trace.bound = additive / (1.0 - trace.contraction);

    trace.sequence.reserve(static_cast<std::size_t>(steps) + 1);
    double x = E0;
    trace.sequence.push_back(x);
    for (int k = 0; k < steps; ++k) {
        x = trace.contraction * x + additive;
        trace.sequence.push_back(x);
    }
    return trace;
}

std::pair<double, double> choose_certificate_params(double c) {
    if (c <= 0.0) throw InvalidArgumentError("certificate constant must be positive");
    const double theta = std::min(0.5, 1.0 / (8.0 * c));
    const double epsilon = theta * theta / (8.0 * c);
    return {theta, epsilon};
}

} // namespace axinse
