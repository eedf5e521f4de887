#include "gpsq/resultants.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gpsq/kernel.hpp"

namespace gpsq {

namespace {

/// Stable real-quadratic roots (no cancellation in the small root).
struct QRoots {
    std::complex<double> r1, r2; // r1 has the larger real part when complex
    bool complex_pair;
};

QRoots solve_quadratic(const QuadraticPoly& q) {
    QRoots out{};
    if (q.a2 == 0.0) {
        if (q.a1 == 0.0) throw ParameterDomainError("degenerate quadratic (a2 = a1 = 0)");
        out.r1 = -q.a0 / q.a1;
        out.r2 = std::numeric_limits<double>::infinity();
        out.complex_pair = false;
        return out;
    }
    const double disc = q.a1 * q.a1 - 4.0 * q.a2 * q.a0;
    if (disc < 0.0) {
        const double re = -q.a1 / (2.0 * q.a2);
        const double im = std::sqrt(-disc) / (2.0 * std::abs(q.a2));
        out.r1 = {re, im};
        out.r2 = {re, -im};
        out.complex_pair = true;
        return out;
    }
    const double s = q.a1 >= 0.0 ? 1.0 : -1.0;
    const double big = -(q.a1 + s * std::sqrt(disc)) / 2.0; // |big| maximal numerator
    double x1, x2v;
    if (big == 0.0) { // a1 = 0 and disc = 0
        x1 = x2v = 0.0;
    } else {
        x1 = big / q.a2;
        x2v = q.a0 / big;
    }
    out.r1 = std::max(x1, x2v);
    out.r2 = std::min(x1, x2v);
    out.complex_pair = false;
    return out;
}

} // namespace

QuadraticPoly poly_R_Y(const ModelParams& p) {
    const DerivedRates d = derive_rates(p);
    const double m1 = d.mu1, m2 = d.mu2;
    const double f1 = p.phi1, f2 = p.phi2, l1 = p.lambda1, l2 = p.lambda2;
    const double gap = f2 * m2 - (1.0 - f1) * m1;
    return QuadraticPoly{
        (1.0 - f2) * l1 * gap,
        ((1.0 - f1) * (1.0 - f2) * (l1 + l2) - f1 * gap) * m1,
        -f1 * (1.0 - f1) * m1 * m1,
    };
}

QuadraticPoly poly_R_X(const ModelParams& p) { return poly_R_Y(swap_indices(p)); }

QuadraticPoly poly_P_X(const ModelParams& p) {
    const DerivedRates d = derive_rates(p);
    const double m1 = d.mu1, m2 = d.mu2;
    const double f1 = p.phi1, f2 = p.phi2, l1 = p.lambda1, l2 = p.lambda2;
    const double gap = f2 * m2 - (1.0 - f1) * m1;
    return QuadraticPoly{
        l2 * (1.0 - f1) * gap,
        -f2 * m2 * ((1.0 - f1) * (l1 + l2) - m1 * (1.0 - f1) + m2 * f2),
        f2 * f2 * m2 * m2,
    };
}

QuadraticPoly poly_Q_X(const ModelParams& p) {
    const DerivedRates d = derive_rates(p);
    const double m1 = d.mu1, m2 = d.mu2;
    const double f1 = p.phi1, f2 = p.phi2, l1 = p.lambda1, l2 = p.lambda2;
    const double gap = f1 * m1 - (1.0 - f2) * m2;
    return QuadraticPoly{
        l2 * gap,
        ((1.0 - f2) * (l1 + l2) - gap) * m2,
        -(1.0 - f2) * m2 * m2,
    };
}

QuadraticPoly poly_P_Y(const ModelParams& p) {
    const DerivedRates d = derive_rates(p);
    const double m1 = d.mu1, m2 = d.mu2;
    const double f1 = p.phi1, f2 = p.phi2, l1 = p.lambda1, l2 = p.lambda2;
    const double gap = f2 * m2 - (1.0 - f1) * m1;
    return QuadraticPoly{
        l1 * gap,
        ((1.0 - f1) * (l1 + l2) - gap) * m1,
        -(1.0 - f1) * m1 * m1,
    };
}

QuadraticPoly poly_Q_Y(const ModelParams& p) {
    const DerivedRates d = derive_rates(p);
    const double m1 = d.mu1, m2 = d.mu2;
    const double f1 = p.phi1, f2 = p.phi2, l1 = p.lambda1, l2 = p.lambda2;
    const double gap = f1 * m1 - (1.0 - f2) * m2;
    return QuadraticPoly{
        l1 * (1.0 - f2) * gap,
        -f1 * m1 * ((1.0 - f2) * (l1 + l2) - m2 * (1.0 - f2) + m1 * f1),
        f1 * f1 * m1 * m1,
    };
}

PXRoots roots_P_X(const ModelParams& p) {
    const QRoots r = solve_quadratic(poly_P_X(p));
    PXRoots out{};
    out.complex_pair = r.complex_pair;
    if (r.complex_pair) {
        out.y_plus = r.r1.imag() >= 0.0 ? r.r1 : r.r2;
        out.y_minus = std::conj(out.y_plus);
    } else {
        out.y_plus = r.r1;
        out.y_minus = r.r2;
    }
    return out;
}

XiRoots roots_Q_X(const ModelParams& p) {
    const QRoots r = solve_quadratic(poly_Q_X(p));
    if (r.complex_pair) {
        throw NumericalError("Q_X produced a complex root pair; no real pole candidate");
    }
    const double a = r.r1.real(), b = r.r2.real();
    XiRoots out{};
    const bool a_pos = a > 0.0, b_pos = b > 0.0 && std::isfinite(b);
    if (a_pos && b_pos) {
        // Both positive: xi_plus is the one of smallest modulus (ties within
        // 1e-12 pick either; they are numerically the same point).
        if (std::abs(a) <= std::abs(b) + 1e-12 * std::max(std::abs(a), std::abs(b))) {
            out.xi_plus = std::min(a, b);
            out.xi_minus = std::max(a, b);
        } else {
            out.xi_plus = b;
            out.xi_minus = a;
        }
    } else if (a_pos || b_pos) {
        out.xi_plus = a_pos ? a : b;
        out.xi_minus = a_pos ? b : a;
    } else {
        throw NumericalError(
            fmt::format("Q_X has no positive root (roots {:.17g}, {:.17g})", a, b));
    }
    return out;
}

PoleReport locate_poles(const ModelParams& p) {
    const Kernel k(p);
    const BranchPoints& bp = k.branch_points();
    const DerivedRates d = k.rates();

    PoleReport rep{};
    const XiRoots xi = roots_Q_X(p);
    rep.xi_plus = xi.xi_plus;
    rep.xi_minus = xi.xi_minus;
    const PXRoots py = roots_P_X(p);
    rep.y_plus = py.y_plus;
    rep.y_minus = py.y_minus;
    rep.complex_y_roots = py.complex_pair;

    // Closed-form pole test: a pole exists in (sqrt(phi2/rho2), y3) iff
    // phi1 > rho1 and Q_Y is negative at sqrt(phi1/rho1).
    const QuadraticPoly qY = poly_Q_Y(p);
    const double xc = std::sqrt(p.phi1 / d.rho1);
    rep.has_pole_in_annulus = p.phi1 > d.rho1 && qY(xc) < 0.0;
    rep.rho_Y = rep.has_pole_in_annulus ? xi.xi_plus : bp.y3;

    // Diagnostic cross-check: scan h3(X*(y), y) for a sign change across the
    // open interval. X* is real there (between the y-cuts), so this is a
    // plain real root scan; disagreement is surfaced, not thrown.
    const double lo = k.circleY_radius(), hi = bp.y3;
    const int grid = 257;
    bool sign_change = false;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 1; i + 1 < grid; ++i) {
        const double y = lo + (hi - lo) * i / (grid - 1);
        const double v = k.h3(k.X_star(y), y).real();
        if (have_prev && prev * v < 0.0) sign_change = true;
        prev = v;
        have_prev = true;
    }
    rep.diagnostic_agrees = (sign_change == rep.has_pole_in_annulus);
    return rep;
}

} // namespace gpsq
