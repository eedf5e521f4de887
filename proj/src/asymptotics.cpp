#include "gpsq/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "gpsq/errors.hpp"
#include "gpsq/resultants.hpp"

namespace gpsq {

namespace {

constexpr double pi = std::numbers::pi;

// N(y*) = phi2 P10 - (1-phi2) P(0,y*) + (1-phi2) P00 in closed form for the
// non-removable case. Every factor is positive there (phi1 < rho1 forces
// phi2 > rho2 under stability), so this doubles as the case-(d) residue
// numerator.
double pole_numerator_closed_form(const ModelParams& p, const DerivedRates& d) {
    const double m1 = (1.0 - p.phi1) * d.mu1;
    const double m2 = (1.0 - p.phi2) * d.mu2;
    const double num =
        p.phi2 * (d.rho1 - p.phi1) * (p.phi2 - d.rho2) * (m1 + m2);
    const double den =
        (1.0 - p.phi1) *
        (p.phi2 * (d.rho1 - p.phi1) * d.mu1 + (1.0 - p.phi2) * (p.phi2 - d.rho2) * d.mu2);
    return num / den;
}

// Case (d): geometric tail from the y* = phi2/rho2 pole of P(1,y).
TailRegime case_d(const Solution& sol) {
    const ModelParams& p = sol.params();
    const DerivedRates d = derive_rates(p);
    const double y_star = p.phi2 / d.rho2;
    TailRegime t;
    t.regime = TailCase::d;
    t.singularity = y_star;
    t.decay_rate = d.rho2 / p.phi2;
    t.power = 0.0;
    t.prefactor = pole_numerator_closed_form(p, d) / p.phi2;
    return t;
}

// Case (a): residue of the continued P(0,y) at xi+, pushed through the
// P(1,y) relation. The residue needs d/dy of h3 along the kernel curve
// x = X*(y); the implicit derivative is cross-checked against a finite
// difference so a wrong branch selection cannot slip through silently.
TailRegime case_a(const Solution& sol) {
    const ModelParams& p = sol.params();
    const DerivedRates d = derive_rates(p);
    const YSideSolver& ys = sol.yside();
    const Kernel& k = ys.kernel();
    const PoleReport& pr = ys.poles();

    if (!pr.has_pole_in_annulus)
        throw NumericalError(
            "tail classified as case (a) but no pole of the continuation was "
            "located between the inversion circle and the branch point");
    const double xi = pr.xi_plus;

    const Cplx Xc = k.X_star(Cplx(xi, 0.0));

    // dX*/dy at xi from h1(X(y), y) = 0.
    const double dX_implicit =
        -(k.dh1_dy(Xc, Cplx(xi, 0.0)) / k.dh1_dx(Xc, Cplx(xi, 0.0))).real();
    const double delta = 1e-6 * xi;
    const double dX_fd = (k.X_star(Cplx(xi + delta, 0.0)).real() -
                          k.X_star(Cplx(xi - delta, 0.0)).real()) /
                         (2.0 * delta);
    const double scale =
        std::max({std::abs(dX_implicit), std::abs(dX_fd), 1e-300});
    if (std::abs(dX_implicit - dX_fd) > 1e-3 * scale)
        throw NumericalError(fmt::format(
            "dX*/dy at the pole disagrees between implicit ({:.6e}) and "
            "finite-difference ({:.6e}) evaluation",
            dX_implicit, dX_fd));

    // d/dy of h3(X*(y), y) at xi: the simple-zero slope of the pole factor.
    const Cplx xic(xi, 0.0);
    const double D =
        (k.dh3_dx(Xc, xic) * dX_implicit + k.dh3_dy(Xc, xic)).real();

    const double refl = p.phi2 / (d.rho2 * xi);
    const Cplx reflc(refl, 0.0);
    const double r_xi =
        (k.h3(Xc, reflc) * k.h2(Xc, xic)).real() / ((k.h2(Xc, reflc)).real() * D);

    const double phi_at_xi = ys.varphi(xic).real();
    const double p00 = sol.P00();

    TailRegime t;
    t.regime = TailCase::a;
    t.singularity = xi;
    t.decay_rate = 1.0 / xi;
    t.power = 0.0;
    t.prefactor = -p.phi2 * (1.0 - p.phi2) * p00 * r_xi * phi_at_xi /
                  (xi * (1.0 - p.phi1 - p.phi2) * (p.phi2 - d.rho2 * xi));
    return t;
}

// Cases (b) and (c): the sqrt-type coefficient of P(0,y) at the branch point
// y3, extracted numerically from the solved boundary function and converted
// to tail constants by Darboux's method. With sigma = sqrt(y3 - y):
//   (c)  P(0, y3 - sigma^2) = P0 + C sigma + O(sigma^2)
//   (b)  P(0, y3 - sigma^2) = K / sigma + O(1)
// Three nodes at sigma = s, s/2, s/4 eliminate the neighbouring orders, with
// O(s^2) (resp. O(s^3)) extrapolation error; s is small enough for ~1e-5
// relative accuracy yet keeps the nodes clear of the pole guard around y3.
TailRegime case_bc(const Solution& sol, TailCase which) {
    const ModelParams& p = sol.params();
    const DerivedRates d = derive_rates(p);
    const YSideSolver& ys = sol.yside();
    const double y3 = ys.kernel().branch_points().y3;

    const double s = 4e-3 * std::sqrt(y3);
    auto boundary = [&](double sigma) {
        return ys.P0y(Cplx(y3 - sigma * sigma, 0.0)).value.real();
    };
    const double v1 = boundary(s);
    const double v2 = boundary(s / 2.0);
    const double v3 = boundary(s / 4.0);

    // rho2 y3 - phi2 > 0: the y* pole of P(1,y) sits strictly below y3.
    const double gap = d.rho2 * y3 - p.phi2;

    TailRegime t;
    t.regime = which;
    t.singularity = y3;
    t.decay_rate = 1.0 / y3;
    if (which == TailCase::b) {
        // Lagrange extrapolation of U(sigma) = sigma P(0, y3 - sigma^2) to 0.
        const double U1 = s * v1;
        const double U2 = (s / 2.0) * v2;
        const double U3 = (s / 4.0) * v3;
        const double K = U1 / 3.0 - 2.0 * U2 + (8.0 / 3.0) * U3;
        t.power = -0.5;
        t.prefactor = (1.0 - p.phi2) * K / (gap * std::sqrt(pi * y3));
    } else {
        // Difference quotients kill P0; their combination kills the sigma^2
        // term, leaving C + O(s^2).
        const double A1 = (v1 - v2) / (s / 2.0);
        const double A2 = (v2 - v3) * 4.0 / s;
        const double C = 2.0 * A2 - A1;
        t.power = -1.5;
        t.prefactor =
            -(1.0 - p.phi2) * C * std::sqrt(y3) / (2.0 * std::sqrt(pi) * gap);
    }
    return t;
}

} // namespace

const char* tail_case_name(TailCase c) {
    switch (c) {
    case TailCase::a: return "a";
    case TailCase::b: return "b";
    case TailCase::c: return "c";
    case TailCase::d: return "d";
    }
    return "?";
}

CaseDecision classify_case(const ModelParams& p) {
    require_stable(p);
    const DerivedRates d = derive_rates(p);

    CaseDecision out;
    const double band = 1e-10 * std::max(p.phi1, d.rho1);
    out.ambiguous = std::abs(p.phi1 - d.rho1) <= band;
    if (p.phi1 < d.rho1 - band) {
        // phi1 < rho1: queue 1 keeps queue 2's surplus capacity busy, the
        // y* pole of P(1,y) is live and dominates everything else.
        out.primary = TailCase::d;
        return out;
    }

    // phi1 >= rho1: the decider is the sign of Q_Y at X*(y3) = sqrt(phi1/rho1);
    // negative means h3 vanishes on the X* branch before y3 (a live pole of
    // the continuation), zero means the pole collides with the branch point.
    const QuadraticPoly qy = poly_Q_Y(p);
    const double x3v = std::sqrt(p.phi1 / d.rho1);
    out.q = qy(x3v);
    out.q_tol = 1e-10 * qy.magnitude_at(x3v);
    if (out.q < -out.q_tol)
        out.primary = TailCase::a;
    else if (out.q <= out.q_tol)
        out.primary = TailCase::b;
    else
        out.primary = TailCase::c;
    return out;
}

TailEstimate tail_estimate(const Solution& sol) {
    TailEstimate est;
    est.decision = classify_case(sol.params());

    switch (est.decision.primary) {
    case TailCase::a: est.primary = case_a(sol); break;
    case TailCase::b: est.primary = case_bc(sol, TailCase::b); break;
    case TailCase::c: est.primary = case_bc(sol, TailCase::c); break;
    case TailCase::d: est.primary = case_d(sol); break;
    }
    if (est.decision.ambiguous)
        est.alternate = case_d(sol);

    // A stationary tail has a positive constant; a sign flip here means a
    // branch or residue error upstream, not a property of the model. Skip
    // the check inside the ambiguity band, where the constant legitimately
    // degenerates towards 0.
    if (!est.decision.ambiguous && !(est.primary.prefactor > 0.0))
        throw NumericalError(fmt::format(
            "tail prefactor for case ({}) came out non-positive ({:.6e})",
            tail_case_name(est.primary.regime), est.primary.prefactor));
    return est;
}

double tail_eval(const TailRegime& t, int n) {
    if (n < 1)
        throw ParameterDomainError("tail_eval needs n >= 1");
    return t.prefactor * std::pow(static_cast<double>(n), t.power) *
           std::pow(t.decay_rate, n);
}

RemovabilityReport removable_singularity_check(const Solution& sol) {
    const ModelParams& p = sol.params();
    const DerivedRates d = derive_rates(p);
    const double y_star = p.phi2 / d.rho2;

    RemovabilityReport rep;
    rep.removable = (p.phi1 >= d.rho1) || (p.phi2 <= d.rho2);
    const double p0y_star = sol.P0y(Cplx(y_star, 0.0)).value.real();
    rep.numerator_at_pole = p.phi2 * sol.P10() -
                            (1.0 - p.phi2) * p0y_star +
                            (1.0 - p.phi2) * sol.P00();
    rep.residue_constant =
        rep.removable ? 0.0 : pole_numerator_closed_form(p, d);
    return rep;
}

} // namespace gpsq
