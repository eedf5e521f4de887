#include "gpsq/kernel.hpp"

#include <cmath>

#include <fmt/format.h>

namespace gpsq {

namespace {

/// s(z; a, b) = sqrt(z-a) * sqrt(z-b) with principal square roots. For real
/// z < a < b this is -sqrt((a-z)(b-z)); for real z > b it is +sqrt(...); the
/// product of the two factors' signed-zero conventions cancels, so off-cut
/// real arguments are insensitive to the sign of a zero imaginary part.
Cplx cut_sqrt(Cplx z, double a, double b) {
    return std::sqrt(z - a) * std::sqrt(z - b);
}

bool near_segment(Cplx z, double a, double b, double tol) {
    return std::abs(z.imag()) <= tol && z.real() >= a - tol && z.real() <= b + tol;
}

} // namespace

Kernel::Kernel(const ModelParams& p) : params_(p), rates_(derive_rates(p)) {
    S_ = p.lambda1 + p.lambda2 + p.phi1 * rates_.mu1 + p.phi2 * rates_.mu2;
}

Cplx eval_h(const ModelParams& p, int which, Cplx x, Cplx y) {
    return Kernel(p).h(which, x, y);
}

Cplx Kernel::h(int which, Cplx x, Cplx y) const {
    switch (which) {
        case 1: return h1(x, y);
        case 2: return h2(x, y);
        case 3: return h3(x, y);
        case 4: return h4(x, y);
        default: throw ParameterDomainError(fmt::format("h index must be 1..4 (got {})", which));
    }
}

Cplx Kernel::h1(Cplx x, Cplx y) const {
    const double l1 = params_.lambda1, l2 = params_.lambda2;
    return -l1 * x * x * y - l2 * x * y * y + S_ * x * y - params_.phi1 * rates_.mu1 * y -
           params_.phi2 * rates_.mu2 * x;
}

Cplx Kernel::h2(Cplx x, Cplx y) const {
    return params_.phi2 * rates_.mu2 * x * (y - 1.0) -
           (1.0 - params_.phi1) * rates_.mu1 * y * (x - 1.0);
}

Cplx Kernel::h3(Cplx x, Cplx y) const {
    return params_.phi1 * rates_.mu1 * y * (x - 1.0) -
           (1.0 - params_.phi2) * rates_.mu2 * x * (y - 1.0);
}

Cplx Kernel::h4(Cplx x, Cplx y) const {
    return (1.0 - params_.phi1) * rates_.mu1 * y * (x - 1.0) +
           (1.0 - params_.phi2) * rates_.mu2 * x * (y - 1.0);
}

Cplx Kernel::dh1_dx(Cplx x, Cplx y) const {
    return -2.0 * params_.lambda1 * x * y - params_.lambda2 * y * y + S_ * y -
           params_.phi2 * rates_.mu2;
}

Cplx Kernel::dh1_dy(Cplx x, Cplx y) const {
    return -params_.lambda1 * x * x - 2.0 * params_.lambda2 * x * y + S_ * x -
           params_.phi1 * rates_.mu1;
}

Cplx Kernel::dh3_dx(Cplx /*x*/, Cplx y) const {
    return params_.phi1 * rates_.mu1 * y - (1.0 - params_.phi2) * rates_.mu2 * (y - 1.0);
}

Cplx Kernel::dh3_dy(Cplx x, Cplx /*y*/) const {
    return params_.phi1 * rates_.mu1 * (x - 1.0) - (1.0 - params_.phi2) * rates_.mu2 * x;
}

Cplx Kernel::T1(Cplx x) const {
    return params_.lambda1 * x * x - S_ * x + params_.phi1 * rates_.mu1;
}

Cplx Kernel::T2(Cplx y) const {
    return params_.lambda2 * y * y - S_ * y + params_.phi2 * rates_.mu2;
}

Cplx Kernel::Delta1(Cplx x) const {
    const Cplx t = T1(x);
    return t * t - 4.0 * params_.lambda2 * params_.phi2 * rates_.mu2 * x * x;
}

Cplx Kernel::Delta2(Cplx y) const {
    const Cplx t = T2(y);
    return t * t - 4.0 * params_.lambda1 * params_.phi1 * rates_.mu1 * y * y;
}

double Kernel::sqrt_neg_Delta1(double x) const {
    const BranchPoints& b = branch_points();
    const double prod = (x - b.x1) * (b.x2 - x) * (b.x3 - x) * (b.x4 - x);
    return params_.lambda1 * std::sqrt(std::max(0.0, prod));
}

double Kernel::sqrt_neg_Delta2(double y) const {
    const BranchPoints& b = branch_points();
    const double prod = (y - b.y1) * (b.y2 - y) * (b.y3 - y) * (b.y4 - y);
    return params_.lambda2 * std::sqrt(std::max(0.0, prod));
}

double Kernel::circleY_radius() const {
    if (params_.lambda2 <= 0.0)
        throw ParameterDomainError("circle radius requires lambda2 > 0");
    return std::sqrt(params_.phi2 * rates_.mu2 / params_.lambda2);
}

double Kernel::circleX_radius() const {
    if (params_.lambda1 <= 0.0)
        throw ParameterDomainError("circle radius requires lambda1 > 0");
    return std::sqrt(params_.phi1 * rates_.mu1 / params_.lambda1);
}

void Kernel::ensure_branch_points() const {
    if (bp_ready_) return;
    if (params_.lambda1 <= 0.0 || params_.lambda2 <= 0.0) {
        throw ParameterDomainError("branch points require strictly positive arrival rates");
    }
    require_stable(params_);

    const double l1 = params_.lambda1, l2 = params_.lambda2;
    const double p1m1 = params_.phi1 * rates_.mu1, p2m2 = params_.phi2 * rates_.mu2;

    // Quartic discriminant roots come in two quadratic pairs. The outer roots
    // (largest of each pair) are cancellation-free; the inner ones follow
    // from the product identities y1*y4 = y2*y3 = phi2*mu2/lambda2 (and the
    // x-side mirror), which double as the conformal-disk radii squared.
    auto pair_roots = [](double s_shift, double four_prod, double divisor, double& lo,
                         double& hi, const char* what) {
        const double disc = s_shift * s_shift - four_prod;
        if (disc < 0.0) {
            if (disc < -1e-10 * s_shift * s_shift) {
                throw OrderingViolation(
                    fmt::format("complex {} branch points (disc = {:.3e})", what, disc));
            }
            hi = s_shift / divisor; // coalesced pair, keep it real
        } else {
            hi = (s_shift + std::sqrt(disc)) / divisor;
        }
        lo = (four_prod / (divisor * divisor)) / hi;
    };

    BranchPoints b{};
    const double gy = 2.0 * std::sqrt(l1 * p1m1);
    pair_roots(S_ + gy, 4.0 * l2 * p2m2, 2.0 * l2, b.y1, b.y4, "outer y");
    pair_roots(S_ - gy, 4.0 * l2 * p2m2, 2.0 * l2, b.y2, b.y3, "inner y");
    const double gx = 2.0 * std::sqrt(l2 * p2m2);
    pair_roots(S_ + gx, 4.0 * l1 * p1m1, 2.0 * l1, b.x1, b.x4, "outer x");
    pair_roots(S_ - gx, 4.0 * l1 * p1m1, 2.0 * l1, b.x2, b.x3, "inner x");

    const double slack = 1e-9;
    auto check = [&](double z1, double z2, double z3, double z4, const char* axis) {
        const bool ok = 0.0 < z1 && z1 < z2 && z2 <= 1.0 + slack && z3 >= 1.0 - slack &&
                        z3 < z4 && z2 <= z3;
        if (!ok) {
            throw OrderingViolation(
                fmt::format("{}-side branch points violate 0<z1<z2<=1<=z3<z4: "
                            "{:.17g}, {:.17g}, {:.17g}, {:.17g}",
                            axis, z1, z2, z3, z4));
        }
    };
    check(b.y1, b.y2, b.y3, b.y4, "y");
    check(b.x1, b.x2, b.x3, b.x4, "x");

    bp_ = b;
    bp_ready_ = true;
}

const BranchPoints& Kernel::branch_points() const {
    ensure_branch_points();
    return bp_;
}

Cplx Kernel::rho2_branch(Cplx y) const {
    const BranchPoints& b = branch_points();
    if (near_segment(y, b.y1, b.y2, cut_tol) || near_segment(y, b.y3, b.y4, cut_tol)) {
        throw OnCut(fmt::format("y = ({}, {}) lies on a branch cut of rho2", y.real(),
                                y.imag()));
    }
    return params_.lambda2 * cut_sqrt(y, b.y1, b.y2) * cut_sqrt(y, b.y3, b.y4);
}

Cplx Kernel::rho1_branch(Cplx x) const {
    const BranchPoints& b = branch_points();
    if (near_segment(x, b.x1, b.x2, cut_tol) || near_segment(x, b.x3, b.x4, cut_tol)) {
        throw OnCut(fmt::format("x = ({}, {}) lies on a branch cut of rho1", x.real(),
                                x.imag()));
    }
    return params_.lambda1 * cut_sqrt(x, b.x1, b.x2) * cut_sqrt(x, b.x3, b.x4);
}

Cplx Kernel::rho2_onesided(double y, Side side) const {
    const BranchPoints& b = branch_points();
    const double s = side == Side::above ? 1.0 : -1.0;
    // Approaching the inner cut from above gives -i*sqrt(-Delta2); the outer
    // cut gives +i*sqrt(-Delta2) (the two cuts see opposite orientations of
    // the other pair's square root).
    if (near_segment(Cplx(y, 0.0), b.y1, b.y2, cut_tol)) {
        return Cplx(0.0, -s * sqrt_neg_Delta2(y));
    }
    if (near_segment(Cplx(y, 0.0), b.y3, b.y4, cut_tol)) {
        return Cplx(0.0, s * sqrt_neg_Delta2(y));
    }
    throw ParameterDomainError(
        fmt::format("rho2_onesided: y = {:.17g} is not on a branch cut", y));
}

Cplx Kernel::rho1_onesided(double x, Side side) const {
    const BranchPoints& b = branch_points();
    const double s = side == Side::above ? 1.0 : -1.0;
    if (near_segment(Cplx(x, 0.0), b.x1, b.x2, cut_tol)) {
        return Cplx(0.0, -s * sqrt_neg_Delta1(x));
    }
    if (near_segment(Cplx(x, 0.0), b.x3, b.x4, cut_tol)) {
        return Cplx(0.0, s * sqrt_neg_Delta1(x));
    }
    throw ParameterDomainError(
        fmt::format("rho1_onesided: x = {:.17g} is not on a branch cut", x));
}

// Both star branches of the x-quadratic share the root product
// X_star * X_substar = phi1 mu1 / lambda1, which provides a cancellation-free
// alternative to the explicit quadratic formula. We evaluate whichever of the
// two algebraically equivalent forms avoids subtracting nearly equal numbers.
struct Kernel::StarParts {
    Cplx sum_plus;  // T + rho
    Cplx sum_minus; // T - rho
};

Kernel::StarParts Kernel::x_star_parts(Cplx y, Cplx rho2_val) const {
    const Cplx t = T2(y);
    return StarParts{t + rho2_val, t - rho2_val};
}

Kernel::StarParts Kernel::y_star_parts(Cplx x, Cplx rho1_val) const {
    const Cplx t = T1(x);
    return StarParts{t + rho1_val, t - rho1_val};
}

Cplx Kernel::X_star(Cplx y) const {
    if (y == 0.0) return 0.0; // removable: X*(0) = 0
    const StarParts s = x_star_parts(y, rho2_branch(y));
    if (std::abs(s.sum_plus) >= std::abs(s.sum_minus)) {
        return -2.0 * params_.phi1 * rates_.mu1 * y / s.sum_plus;
    }
    return -s.sum_minus / (2.0 * params_.lambda1 * y);
}

Cplx Kernel::X_substar(Cplx y) const {
    if (y == 0.0) throw PoleAtZero("X_substar has a simple pole at y = 0");
    const StarParts s = x_star_parts(y, rho2_branch(y));
    if (std::abs(s.sum_plus) >= std::abs(s.sum_minus)) {
        return -s.sum_plus / (2.0 * params_.lambda1 * y);
    }
    return -2.0 * params_.phi1 * rates_.mu1 * y / s.sum_minus;
}

Cplx Kernel::Y_star(Cplx x) const {
    if (x == 0.0) return 0.0;
    const StarParts s = y_star_parts(x, rho1_branch(x));
    if (std::abs(s.sum_plus) >= std::abs(s.sum_minus)) {
        return -2.0 * params_.phi2 * rates_.mu2 * x / s.sum_plus;
    }
    return -s.sum_minus / (2.0 * params_.lambda2 * x);
}

Cplx Kernel::Y_substar(Cplx x) const {
    if (x == 0.0) throw PoleAtZero("Y_substar has a simple pole at x = 0");
    const StarParts s = y_star_parts(x, rho1_branch(x));
    if (std::abs(s.sum_plus) >= std::abs(s.sum_minus)) {
        return -s.sum_plus / (2.0 * params_.lambda2 * x);
    }
    return -2.0 * params_.phi2 * rates_.mu2 * x / s.sum_minus;
}

Cplx Kernel::X_star_onesided(double y, Side side) const {
    const StarParts s = x_star_parts(y, rho2_onesided(y, side));
    if (std::abs(s.sum_plus) >= std::abs(s.sum_minus)) {
        return -2.0 * params_.phi1 * rates_.mu1 * y / s.sum_plus;
    }
    return -s.sum_minus / (2.0 * params_.lambda1 * y);
}

Cplx Kernel::Y_star_onesided(double x, Side side) const {
    const StarParts s = y_star_parts(x, rho1_onesided(x, side));
    if (std::abs(s.sum_plus) >= std::abs(s.sum_minus)) {
        return -2.0 * params_.phi2 * rates_.mu2 * x / s.sum_plus;
    }
    return -s.sum_minus / (2.0 * params_.lambda2 * x);
}

double Kernel::conformal_roundtrip(Cplx y) const {
    return std::abs(Y_star(X_star(y)) - y);
}

} // namespace gpsq
