#include "gpsq/rh_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "gpsq/errors.hpp"

namespace gpsq {

namespace {

constexpr double pi = std::numbers::pi;

/// Distance from a complex point to the real segment [a, b].
double segment_distance(Cplx z, double a, double b) {
    const double c = std::clamp(z.real(), a, b);
    return std::hypot(z.real() - c, z.imag());
}

/// Phase numerator/denominator shared by both evaluation routes; the
/// denominator is strictly positive on [x1, x2] (that sign is what pins the
/// index of the boundary problem to zero), so its failure is a branch error,
/// not a value.
double theta_from_parts(double scale, double t1, double ry, double snd, double x) {
    const double den = scale * t1 - 2.0 * ry;
    if (!(den > 0.0))
        throw BranchAmbiguity(fmt::format(
            "phase denominator {:.6e} is not positive at x = {:.12f}; "
            "the principal-branch angle is undefined here",
            den, x));
    return std::atan(scale * snd / den);
}

/// The kernel root in [x1, x2] paired with the circle point R e^{i angle}:
/// smaller root of lambda1 x^2 - B x + phi1 mu1, B = S - 2 lambda2 Re(y).
double on_circle_xhat(double S, double lambda1, double lambda2, double p1m1, double R,
                      double angle, double x1, double x2) {
    const double b = S - 2.0 * lambda2 * R * std::cos(angle);
    double disc = b * b - 4.0 * lambda1 * p1m1;
    if (disc < 0.0) {
        if (disc < -1e-10 * b * b)
            throw BranchAmbiguity(fmt::format(
                "circle pairing discriminant {:.6e} is negative at angle {:.9f}", disc, angle));
        disc = 0.0;
    }
    return std::clamp(2.0 * p1m1 / (b + std::sqrt(disc)), x1, x2);
}

} // namespace

YSideSolver::YSideSolver(const ModelParams& p, SolverConfig cfg)
    : params_(p), cfg_(cfg), kernel_(p), RY_(poly_R_Y(p)), poles_(locate_poles(p)) {
    const auto& bp = kernel_.branch_points(); // checks stability and ordering
    R_ = kernel_.circleY_radius();
    m_ = 0.5 * (bp.x1 + bp.x2);
    h_ = 0.5 * (bp.x2 - bp.x1);
    theta_scale_ = kernel_.rates().mu1 * (p.phi1 + p.phi2 - 1.0);
}

double YSideSolver::theta(double x) const {
    return theta_from_parts(theta_scale_, kernel_.T1(x).real(), RY_(x),
                            kernel_.sqrt_neg_Delta1(x), x);
}

double YSideSolver::theta_from_phi(double phi, double& x_out) const {
    const auto& bp = kernel_.branch_points();
    const double x = m_ - h_ * std::cos(phi);
    x_out = x;
    // Under x = m - h cos(phi), (x-x1)(x2-x) = (h sin(phi))^2 exactly, which
    // keeps sqrt(-Delta1) full-precision right up to the segment endpoints.
    const double snd = params_.lambda1 * h_ * std::abs(std::sin(phi)) *
                       std::sqrt((bp.x3 - x) * (bp.x4 - x));
    return theta_from_parts(theta_scale_, kernel_.T1(x).real(), RY_(x), snd, x);
}

Cplx YSideSolver::star_pair(Cplx y, Cplx& Asub) const {
    const auto& bp = kernel_.branch_points();
    const double tol = Kernel::cut_tol;
    Cplx A;
    if (std::abs(y.imag()) <= tol &&
        ((y.real() >= bp.y1 - tol && y.real() <= bp.y2 + tol) ||
         (y.real() >= bp.y3 - tol && y.real() <= bp.y4 + tol))) {
        const double lo = (y.real() <= bp.y2 + tol) ? bp.y1 : bp.y3;
        const double hi = (y.real() <= bp.y2 + tol) ? bp.y2 : bp.y4;
        A = kernel_.X_star_onesided(std::clamp(y.real(), lo, hi), Side::above);
    } else {
        A = kernel_.X_star(y);
    }
    // The two x-roots of h1(., y) multiply to phi1 mu1 / lambda1 for every y,
    // so the companion root never needs its own branch selection.
    Asub = (params_.phi1 * kernel_.rates().mu1 / params_.lambda1) / A;
    return A;
}

Cplx YSideSolver::exponent_integral(Cplx A, Cplx Asub) const {
    const auto& bp = kernel_.branch_points();
    const double x1 = bp.x1, x2 = bp.x2;
    const bool a_real = (A.imag() == 0.0);
    bool right_side = false; // real A beyond x2 (vs. below x1)
    double d_end = 0.0;      // offset from the nearer endpoint to A
    if (a_real) {
        // Real images sit outside the open segment for every real y (interior
        // images force |y| onto the circle); anything else is a caller bug.
        if (A.real() > x1 && A.real() < x2)
            throw NearSingularity(fmt::format(
                "real image X* = {:.12f} lies inside [{:.12f}, {:.12f}]; "
                "this point needs the one-sided circle evaluator",
                A.real(), x1, x2));
        right_side = A.real() >= x2;
        d_end = right_side ? x2 - A.real() : x1 - A.real();
    } else if (segment_distance(A, x1, x2) < cfg_.pole_guard) {
        throw NearSingularity(fmt::format(
            "X*(y) = {:+.12e}{:+.12e}i is within {:.1e} of [{:.9f}, {:.9f}]; "
            "evaluate through circle_values instead",
            A.real(), A.imag(), cfg_.pole_guard, x1, x2));
    }
    const double l1 = params_.lambda1;
    const double p1m1 = params_.phi1 * kernel_.rates().mu1;
    auto density = [&](double x, double theta_x) -> Cplx {
        return -((l1 * x * x - p1m1) / x) * theta_x / (pi * l1 * (x - Asub));
    };
    // Subtract the density at the projection of A onto the segment; at a
    // clamped endpoint the phase vanishes and the subtraction drops out.
    const double c = std::clamp(A.real(), x1, x2);
    const Cplx sc = density(c, theta(c));
    auto f = [&](double phi) -> Cplx {
        double x;
        const double th = theta_from_phi(phi, x);
        Cplx dx;
        if (a_real) {
            // Under x = m - h cos(phi) the endpoint gaps are exactly
            // 2h sin^2(phi/2) and 2h cos^2(phi/2); assembling x - A from the
            // nearer gap keeps full relative accuracy even when A hugs an
            // endpoint (rho2 -> phi2 drives x2 -> X*(1) = 1 to ~1e-10, where
            // the plain difference is all rounding noise and the quadrature
            // would grind down to its minimum panel width).
            const double t = right_side ? std::cos(0.5 * phi) : std::sin(0.5 * phi);
            dx = Cplx(d_end + (right_side ? -2.0 : 2.0) * h_ * t * t, 0.0);
        } else {
            dx = x - A;
        }
        return (density(x, th) - sc) * (h_ * std::sin(phi)) / dx;
    };
    Cplx val = adaptive_integrate(f, 0.0, pi, cfg_.quad);
    if (sc != Cplx(0.0))
        val += sc * (std::log(Cplx(x2, 0.0) - A) - std::log(Cplx(x1, 0.0) - A));
    return val;
}

double YSideSolver::pv_exponent_integral(double x_hat, double x_sub) const {
    const auto& bp = kernel_.branch_points();
    const double l1 = params_.lambda1;
    const double S = kernel_.S();
    const double p1m1 = params_.phi1 * kernel_.rates().mu1;
    // The subtracted integrand is the divided difference
    //   [density(x) - density(x_hat)] / (x - x_hat),
    // density(x) = G(x) Theta(x), which a literal quotient turns into 0/0
    // rounding noise near x_hat. When x_hat pins close to a segment endpoint
    // (circle angles near 0 and pi) the sqrt kink of Theta forces panels small
    // enough that this noise exceeds the width-proportional error budget and
    // the quadrature tiles a whole strip at minimum panel width. So assemble
    // the divided difference analytically instead:
    //   G(x_hat) = -1/pi and (G(x)-G(x_hat))/(x-x_hat) = -x_sub/(pi x (x-x_sub))
    //     exactly, because x_hat x_sub = phi1 mu1 / lambda1;
    //   Theta = atan(v), v = scale snd/den, and v(x)-v(x_hat) carries an exact
    //     factor (x - x_hat) through the polynomial divided differences of
    //     den (quadratic) and snd^2 = -Delta1 = 4 lambda2 phi2 mu2 x^2 - T1^2.
    // No small denominator survives anywhere.
    const double phi_hat = std::acos(std::clamp((m_ - x_hat) / h_, -1.0, 1.0));
    // den(x) = theta_scale T1(x) - 2 R_Y(x), with T1 = l1 x^2 - S x + phi1 mu1.
    const double da = theta_scale_ * l1 - 2.0 * RY_.a2;
    const double db = -theta_scale_ * S - 2.0 * RY_.a1;
    const double dc = theta_scale_ * p1m1 - 2.0 * RY_.a0;
    const double c4 = 4.0 * params_.lambda2 * params_.phi2 * kernel_.rates().mu2;
    auto T1_at = [&](double x) { return (l1 * x - S) * x + p1m1; };
    auto den_at = [&](double x) {
        const double den = (da * x + db) * x + dc;
        if (!(den > 0.0))
            throw BranchAmbiguity(fmt::format(
                "phase denominator {:.6e} is not positive at x = {:.12f}; "
                "the principal-branch angle is undefined here",
                den, x));
        return den;
    };
    const double snd_hat = l1 * h_ * std::sin(phi_hat) *
                           std::sqrt((bp.x3 - x_hat) * (bp.x4 - x_hat));
    const double den_hat = den_at(x_hat);
    const double v_hat = theta_scale_ * snd_hat / den_hat;
    const double th_hat = std::atan(v_hat);
    const double T1_hat = T1_at(x_hat);
    auto atanc = [](double z) { // atan(z)/z, stable through z = 0
        return std::abs(z) < 1e-5 ? 1.0 - z * z / 3.0 : std::atan(z) / z;
    };
    auto f = [&](double phi) {
        const double x = m_ - h_ * std::cos(phi);
        const double sphi = std::sin(phi); // > 0 on (0, pi)
        const double snd =
            l1 * h_ * sphi * std::sqrt((bp.x3 - x) * (bp.x4 - x));
        const double den = den_at(x);
        const double v = theta_scale_ * snd / den;
        // x - x_hat in exact product form (both points live on the phi circle)
        const double dxh = 2.0 * h_ * std::sin(0.5 * (phi + phi_hat)) *
                           std::sin(0.5 * (phi - phi_hat));
        const double T1dd = l1 * (x + x_hat) - S;
        // snd^2 is the quadratic-free polynomial -Delta1, so its divided
        // difference is exact; divide by snd + snd_hat (> 0 at every node).
        const double snd_dd = (c4 * (x + x_hat) - (T1_at(x) + T1_hat) * T1dd) /
                              (snd + snd_hat);
        const double den_dd = da * (x + x_hat) + db;
        const double v_dd =
            theta_scale_ * (den_hat * snd_dd - snd_hat * den_dd) / (den * den_hat);
        const double opp = 1.0 + v * v_hat; // >= 1, both phases nonnegative
        const double z = dxh * v_dd / opp;
        const double theta_dd = atanc(z) * v_dd / opp; // (Theta(x)-Theta(x_hat))/(x-x_hat)
        const double G = -((l1 * x * x - p1m1) / x) / (pi * l1 * (x - x_sub));
        const double G_dd = -x_sub / (pi * x * (x - x_sub));
        return (G * theta_dd + th_hat * G_dd) * h_ * sphi;
    };
    double val = adaptive_integrate(f, 0.0, pi, cfg_.quad);
    // Subtraction constant density(x_hat) = -Theta(x_hat)/pi, taken from the
    // same phi-circle route as the integrand so it vanishes exactly when
    // x_hat clamps onto an endpoint -- there the log factor diverges and only
    // an exact zero keeps the (finite) limit.
    const double s_hat = -th_hat / pi;
    if (s_hat != 0.0) val += s_hat * std::log((bp.x2 - x_hat) / (x_hat - bp.x1));
    return val;
}

CircleValues YSideSolver::circle_values(double angle) const {
    const auto& bp = kernel_.branch_points();
    const double p1m1 = params_.phi1 * kernel_.rates().mu1;
    const double x_hat = on_circle_xhat(kernel_.S(), params_.lambda1, params_.lambda2, p1m1,
                                        R_, angle, bp.x1, bp.x2);
    const double x_sub = (p1m1 / params_.lambda1) / x_hat;
    const double th = theta(x_hat);
    const double pv = pv_exponent_integral(x_hat, x_sub);
    // The interior image approaches the segment from below on the upper
    // semicircle and from above on the lower one; Plemelj then gives
    // I_in = PV + i sgn(Im y) Theta and I_out its reflection.
    const double sgn = (std::sin(angle) >= 0.0) ? 1.0 : -1.0;
    CircleValues cv;
    cv.x_hat = x_hat;
    cv.theta = th;
    cv.pv = pv;
    cv.varphi_in = std::exp(Cplx(pv, sgn * th));
    cv.varphi_out = std::exp(Cplx(pv, -sgn * th));
    return cv;
}

Cplx YSideSolver::varphi(Cplx y) const {
    if (y == Cplx(0.0)) return 1.0;
    const double ay = std::abs(y);
    if (std::abs(ay - R_) <= cfg_.near_circle_band * R_)
        throw NearSingularity(fmt::format(
            "|y| = {:.12f} is inside the circle band around R = {:.12f}; "
            "use circle_values for one-sided boundary values",
            ay, R_));
    Cplx asub;
    const Cplx a = star_pair(y, asub);
    return std::exp(exponent_integral(a, asub));
}

double YSideSolver::varphi_pv(double y) const {
    if (y == 0.0) return 1.0;
    Cplx asub;
    const Cplx a = star_pair(Cplx(y, 0.0), asub);
    return std::exp(exponent_integral(a, asub).real());
}

Cplx YSideSolver::alpha(Cplx y, AlphaForm form) const {
    const auto& d = kernel_.rates();
    if (y == Cplx(0.0)) return {params_.phi2 / (1.0 - params_.phi1), 0.0};
    Cplx asub;
    const Cplx x = star_pair(y, asub);
    Cplx num, den;
    if (form == AlphaForm::rational) {
        const double c = 1.0 - params_.phi1 - params_.phi2;
        const Cplx ry = RY_.eval(x);
        num = -d.mu1 * c * params_.phi2 * d.mu2 * x + y * ry;
        den = y * (-params_.lambda2 * d.mu1 * c * x * y + ry);
    } else {
        const Cplx refl = (params_.phi2 / d.rho2) / y;
        num = kernel_.h3(x, refl) * kernel_.h2(x, y);
        den = kernel_.h2(x, refl) * kernel_.h3(x, y);
    }
    if (!(std::abs(den) > cfg_.pole_guard * (std::abs(num) + 1e-300)))
        throw PoleOfAlpha(fmt::format(
            "alpha_Y denominator vanishes at y = {:+.12e}{:+.12e}i (xi+ = {:.12e})",
            y.real(), y.imag(), poles_.xi_plus));
    return num / den;
}

Cplx YSideSolver::circle_alpha(double angle, Cplx* w_out) const {
    const auto& bp = kernel_.branch_points();
    const auto& d = kernel_.rates();
    const double p1m1 = params_.phi1 * d.mu1;
    const double x_hat = on_circle_xhat(kernel_.S(), params_.lambda1, params_.lambda2, p1m1,
                                        R_, angle, bp.x1, bp.x2);
    const Cplx y = R_ * Cplx(std::cos(angle), std::sin(angle));
    const double c = 1.0 - params_.phi1 - params_.phi2;
    const double ry = RY_(x_hat);
    const Cplx w = -params_.lambda2 * d.mu1 * c * x_hat * y + ry;
    if (w_out) *w_out = w;
    const Cplx num = -d.mu1 * c * params_.phi2 * d.mu2 * x_hat + y * ry;
    const Cplx den = y * w;
    if (!(std::abs(den) > cfg_.pole_guard * (std::abs(num) + 1e-300)))
        throw PoleOfAlpha(fmt::format("alpha_Y pole on the circle at angle {:.9f}", angle));
    return num / den;
}

int YSideSolver::winding(int samples) const {
    const int n = samples > 0 ? samples : cfg_.winding_samples;
    double prev = std::arg(circle_alpha(0.0, nullptr));
    double total = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double a = std::arg(circle_alpha(2.0 * pi * k / n, nullptr));
        double step = a - prev;
        while (step > pi) step -= 2.0 * pi;
        while (step <= -pi) step += 2.0 * pi;
        if (std::abs(step) > 0.5 * pi)
            throw PhaseAliasing(fmt::format(
                "alpha_Y phase jumps {:.4f} rad between adjacent circle samples "
                "({} samples); refine winding_samples",
                step, n));
        total += step;
        prev = a;
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

double YSideSolver::contour_max_re(int samples) const {
    const int n = samples > 0 ? samples : cfg_.winding_samples;
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        Cplx w;
        circle_alpha(2.0 * pi * k / n, &w);
        worst = std::max(worst, w.real());
    }
    return worst;
}

double YSideSolver::P00() const {
    if (p00_) return *p00_;
    const auto& d = kernel_.rates();
    const double phi_at_1 = varphi_pv(1.0);
    double v;
    if (params_.phi2 > d.rho2) {
        v = (1.0 - d.rho1 - (1.0 - params_.phi1) * d.rho2 / params_.phi2) / phi_at_1;
    } else {
        v = params_.phi1 * (1.0 - (1.0 - params_.phi2) * d.rho1 / params_.phi1 - d.rho2) /
            ((1.0 - params_.phi2) * phi_at_1);
    }
    if (!(v > 0.0 && v < 1.0))
        throw NumericalError(fmt::format(
            "empty-system probability {:.12e} fell outside (0, 1)", v));
    p00_ = v;
    return v;
}

double YSideSolver::c0() const {
    return -params_.phi2 * P00() / (1.0 - params_.phi1 - params_.phi2);
}

double YSideSolver::c1() const {
    return (1.0 - params_.phi1) * P00() / (1.0 - params_.phi1 - params_.phi2);
}

GFValue YSideSolver::P0y(Cplx y) const {
    const double a0 = c0();
    const double a1 = c1();
    const double ay = std::abs(y);
    if (std::abs(ay - R_) <= cfg_.near_circle_band * R_) {
        const CircleValues cv = circle_values(std::arg(y));
        return {a0 * cv.varphi_in + a1, GFRegion::on_circle};
    }
    if (ay < R_) return {a0 * varphi(y) + a1, GFRegion::inside};
    if (poles_.has_pole_in_annulus) {
        const double guard = cfg_.pole_guard * std::max(1.0, poles_.xi_plus);
        if (std::abs(y - Cplx(poles_.xi_plus, 0.0)) <= guard)
            throw AtPole(fmt::format(
                "y = {:+.12e}{:+.12e}i coincides with the pole xi+ = {:.12e} of the "
                "continued boundary function",
                y.real(), y.imag(), poles_.xi_plus));
    }
    return {a0 * alpha(y) * varphi(y) + a1, GFRegion::outside};
}

Solution::Solution(const ModelParams& p, SolverConfig cfg)
    : params_(p), y_(p, cfg), x_(swap_indices(p), cfg) {
    const double from_y = y_.P00();
    const double from_x = x_.P00();
    if (std::abs(from_y - from_x) > 1e-8)
        throw NumericalError(fmt::format(
            "index-swapped solvers disagree on the empty-system probability: "
            "{:.12e} vs {:.12e}",
            from_y, from_x));
    p00_ = from_y;
}

double Solution::P00_swapped() const { return x_.P00(); }

Cplx Solution::Pxy(Cplx x, Cplx y) const {
    if (x == Cplx(1.0) && y == Cplx(1.0)) return 1.0; // removable by normalization
    const Kernel& k = y_.kernel();
    const auto& d = k.rates();
    const Cplx h1v = k.h1(x, y);
    const double ax = std::abs(x), ay = std::abs(y);
    const double scale = params_.lambda1 * ax * ax * ay + params_.lambda2 * ax * ay * ay +
                         k.S() * ax * ay + params_.phi1 * d.mu1 * ay +
                         params_.phi2 * d.mu2 * ax + 1e-300;
    if (std::abs(h1v) < 1e-12 * scale)
        throw KernelZero(fmt::format(
            "kernel vanishes at x = {:+.9e}{:+.9e}i, y = {:+.9e}{:+.9e}i; "
            "P(x,y) is only defined off the zero set",
            x.real(), x.imag(), y.real(), y.imag()));
    const Cplx num = k.h2(x, y) * Px0(x).value + k.h3(x, y) * P0y(y).value +
                     k.h4(x, y) * p00_;
    return num / h1v;
}

Cplx Solution::P1y(Cplx y) const {
    const auto& d = y_.kernel().rates();
    const double y_star = params_.phi2 / d.rho2;
    if (std::abs(y - Cplx(y_star, 0.0)) < 1e-5 * y_star) {
        const bool removable = (params_.phi1 >= d.rho1) || (params_.phi2 <= d.rho2);
        if (!removable)
            throw PoleEncountered(fmt::format(
                "P(1,y) has a genuine pole at y* = {:.12e}", y_star));
        const double delta = 1e-6 * y_star;
        const Cplx slope = (P0y(Cplx(y_star + delta, 0.0)).value -
                            P0y(Cplx(y_star - delta, 0.0)).value) /
                           (2.0 * delta);
        return (1.0 - params_.phi2) * slope / d.rho2;
    }
    const Cplx num = params_.phi2 * P10() - (1.0 - params_.phi2) * P0y(y).value +
                     (1.0 - params_.phi2) * p00_;
    return num / (params_.phi2 - d.rho2 * y);
}

Cplx Solution::Px1(Cplx x) const {
    const auto& d = y_.kernel().rates();
    const double x_star = params_.phi1 / d.rho1;
    if (std::abs(x - Cplx(x_star, 0.0)) < 1e-5 * x_star) {
        const bool removable = (params_.phi2 >= d.rho2) || (params_.phi1 <= d.rho1);
        if (!removable)
            throw PoleEncountered(fmt::format(
                "P(x,1) has a genuine pole at x* = {:.12e}", x_star));
        const double delta = 1e-6 * x_star;
        const Cplx slope = (Px0(Cplx(x_star + delta, 0.0)).value -
                            Px0(Cplx(x_star - delta, 0.0)).value) /
                           (2.0 * delta);
        return (1.0 - params_.phi1) * slope / d.rho1;
    }
    const Cplx num = params_.phi1 * P01() - (1.0 - params_.phi1) * Px0(x).value +
                     (1.0 - params_.phi1) * p00_;
    return num / (params_.phi1 - d.rho1 * x);
}

double Solution::P10() const {
    const auto& d = y_.kernel().rates();
    return (-params_.phi1 + (1.0 - params_.phi2) * d.rho1 + params_.phi1 * d.rho2 +
            (1.0 - params_.phi2) * p00_) /
           (1.0 - params_.phi1 - params_.phi2);
}

double Solution::P01() const {
    const auto& d = y_.kernel().rates();
    return (-params_.phi2 + (1.0 - params_.phi1) * d.rho2 + params_.phi2 * d.rho1 +
            (1.0 - params_.phi1) * p00_) /
           (1.0 - params_.phi1 - params_.phi2);
}

std::vector<double> Solution::taylor_edge(double avoid_radius,
                                          const std::function<Cplx(Cplx)>& f,
                                          int nmax) const {
    if (nmax < 0) throw ParameterDomainError("series order must be nonnegative");
    const int m = std::max(64, 8 * (nmax + 1));
    double r = 0.5;
    for (double cand : {0.5, 0.44, 0.56, 0.38}) {
        if (std::abs(cand - avoid_radius) > 1e-3) {
            r = cand;
            break;
        }
    }
    std::vector<Cplx> fv(m);
    for (int k = 0; k <= m / 2; ++k) {
        const double t = 2.0 * pi * k / m;
        fv[k] = f(Cplx(r * std::cos(t), r * std::sin(t)));
    }
    for (int k = m / 2 + 1; k < m; ++k) fv[k] = std::conj(fv[m - k]);
    std::vector<double> out(static_cast<size_t>(nmax) + 1);
    double rn = 1.0;
    for (int n = 0; n <= nmax; ++n) {
        Cplx acc = 0.0;
        for (int k = 0; k < m; ++k) {
            const double t = 2.0 * pi * k * n / m;
            acc += fv[k] * Cplx(std::cos(t), -std::sin(t));
        }
        out[n] = acc.real() / (m * rn);
        rn *= r;
    }
    return out;
}

std::vector<double> Solution::taylor_of(const YSideSolver& s, int nmax) const {
    return taylor_edge(
        s.circle_radius(), [&s](Cplx y) { return s.P0y(y).value; }, nmax);
}

std::vector<double> Solution::taylor_P0y(int nmax) const { return taylor_of(y_, nmax); }
std::vector<double> Solution::taylor_Px0(int nmax) const { return taylor_of(x_, nmax); }

std::vector<double> Solution::taylor_P1y(int nmax) const {
    return taylor_edge(
        y_.circle_radius(), [this](Cplx y) { return P1y(y); }, nmax);
}

std::vector<double> Solution::taylor_Px1(int nmax) const {
    return taylor_edge(
        x_.circle_radius(), [this](Cplx x) { return Px1(x); }, nmax);
}

std::vector<std::vector<double>> Solution::joint_pmf(int nmax) const {
    if (nmax < 0) throw ParameterDomainError("grid order must be nonnegative");
    const int m = std::max(64, 8 * (nmax + 1));
    const Kernel& k = y_.kernel();
    // Shared inversion radius: keep clear of both solver circles and of the
    // kernel's zero set on the bi-circle.
    double r = -1.0;
    for (double cand : {0.5, 0.47, 0.44, 0.41}) {
        if (std::abs(cand - y_.circle_radius()) <= 1e-3) continue;
        if (std::abs(cand - x_.circle_radius()) <= 1e-3) continue;
        double min_h1 = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 64 && min_h1 >= 1e-4; ++i) {
            const double ti = 2.0 * pi * i / 64;
            const Cplx xv = cand * Cplx(std::cos(ti), std::sin(ti));
            for (int j = 0; j < 64; ++j) {
                const double tj = 2.0 * pi * j / 64;
                const Cplx yv = cand * Cplx(std::cos(tj), std::sin(tj));
                min_h1 = std::min(min_h1, std::abs(k.h1(xv, yv)));
                if (min_h1 < 1e-4) break;
            }
        }
        if (min_h1 >= 1e-4) {
            r = cand;
            break;
        }
    }
    if (r < 0.0)
        throw NearSingularity(
            "no inversion radius in {0.5, 0.47, 0.44, 0.41} keeps |h1| >= 1e-4 on the bi-circle");
    std::vector<Cplx> px(m), py(m);
    for (int i = 0; i <= m / 2; ++i) {
        const double t = 2.0 * pi * i / m;
        const Cplx z(r * std::cos(t), r * std::sin(t));
        px[i] = Px0(z).value;
        py[i] = P0y(z).value;
    }
    for (int i = m / 2 + 1; i < m; ++i) {
        px[i] = std::conj(px[m - i]);
        py[i] = std::conj(py[m - i]);
    }
    // First sum out the y-angle for every x-node, then the x-angle.
    std::vector<std::vector<Cplx>> partial(m, std::vector<Cplx>(nmax + 1, Cplx(0.0)));
    for (int i = 0; i < m; ++i) {
        const double ti = 2.0 * pi * i / m;
        const Cplx xv = r * Cplx(std::cos(ti), std::sin(ti));
        for (int j = 0; j < m; ++j) {
            const double tj = 2.0 * pi * j / m;
            const Cplx yv = r * Cplx(std::cos(tj), std::sin(tj));
            const Cplx pxy = (k.h2(xv, yv) * px[i] + k.h3(xv, yv) * py[j] +
                              k.h4(xv, yv) * p00_) /
                             k.h1(xv, yv);
            for (int n2 = 0; n2 <= nmax; ++n2) {
                const double t = tj * n2;
                partial[i][n2] += pxy * Cplx(std::cos(t), -std::sin(t));
            }
        }
    }
    std::vector<std::vector<double>> out(static_cast<size_t>(nmax) + 1,
                                         std::vector<double>(static_cast<size_t>(nmax) + 1));
    for (int n1 = 0; n1 <= nmax; ++n1) {
        for (int n2 = 0; n2 <= nmax; ++n2) {
            Cplx acc = 0.0;
            for (int i = 0; i < m; ++i) {
                const double t = 2.0 * pi * i * n1 / m;
                acc += partial[i][n2] * Cplx(std::cos(t), -std::sin(t));
            }
            out[n1][n2] = acc.real() / (double(m) * double(m) * std::pow(r, n1 + n2));
        }
    }
    return out;
}

} // namespace gpsq
