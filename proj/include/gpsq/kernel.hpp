// Kernel layer: the bivariate kernel polynomial of the quarter-plane random
// walk, its discriminant branch points, the two-cut analytic square-root
// branches, and the algebraic functions X*(y), Y*(x) they define.
//
// Conventions (S := lambda1 + lambda2 + phi1*mu1 + phi2*mu2):
//   h1(x,y) = -lambda1 x^2 y - lambda2 x y^2 + S x y - phi1 mu1 y - phi2 mu2 x
//   h2(x,y) = phi2 mu2 x (y-1) - (1-phi1) mu1 y (x-1)
//   h3(x,y) = phi1 mu1 y (x-1) - (1-phi2) mu2 x (y-1)
//   h4(x,y) = (1-phi1) mu1 y (x-1) + (1-phi2) mu2 x (y-1)
// and the stationary boundary functions satisfy
//   h1 P(x,y) = h2 P(x,0) + h3 P(0,y) + h4 P(0,0).
//
// As a quadratic in x, h1(.,y) has discriminant
//   Delta2(y) = (lambda2 y^2 - S y + phi2 mu2)^2 - 4 lambda1 phi1 mu1 y^2,
// with real roots 0 < y1 < y2 <= 1 <= y3 < y4. The analytic square root
//   rho2(y) = lambda2 * s(y;y1,y2) * s(y;y3,y4),   s(z;a,b) = sqrt(z-a)sqrt(z-b)
// (principal square roots) is holomorphic on C minus the two cuts [y1,y2],
// [y3,y4], and positive at y = 0. The branch
//   X* (y) = (-(lambda2 y^2 - S y + phi2 mu2) + rho2(y)) / (2 lambda1 y)
// maps D(0, sqrt(phi2/rho2)) \ [y1,y2] conformally onto
// D(0, sqrt(phi1/rho1)) \ [x1,x2]; X*(0) = 0, and X*(y)*Xsub(y) = phi1/rho1.
// Everything here is mirrored on the y-side (Delta1, rho1-branch, Y*).
#pragma once

#include <complex>

#include "gpsq/model.hpp"

namespace gpsq {

using Cplx = std::complex<double>;

/// Which side of a real branch cut a one-sided limit approaches from.
enum class Side { above, below };

/// Discriminant roots; interlacing 0 < z1 < z2 <= 1 <= z3 < z4 on each axis.
struct BranchPoints {
    double y1, y2, y3, y4; ///< roots of Delta2 (x-quadratic's discriminant in y)
    double x1, x2, x3, x4; ///< roots of Delta1 (y-quadratic's discriminant in x)
};

class Kernel {
public:
    /// Validates parameters and derives rates. Branch points (and everything
    /// that depends on them) additionally require a stable system and correct
    /// interlacing; they are computed on first use.
    explicit Kernel(const ModelParams& p);

    const ModelParams& params() const { return params_; }
    const DerivedRates& rates() const { return rates_; }
    double S() const { return S_; }

    /// Kernel polynomials h1..h4.
    Cplx h(int which, Cplx x, Cplx y) const;
    Cplx h1(Cplx x, Cplx y) const;
    Cplx h2(Cplx x, Cplx y) const;
    Cplx h3(Cplx x, Cplx y) const;
    Cplx h4(Cplx x, Cplx y) const;
    /// Partial derivatives of h1 and h3 (used by tail constants).
    Cplx dh1_dx(Cplx x, Cplx y) const;
    Cplx dh1_dy(Cplx x, Cplx y) const;
    Cplx dh3_dx(Cplx x, Cplx y) const;
    Cplx dh3_dy(Cplx x, Cplx y) const;

    /// x-quadratic coefficients of h1(., y): T2(y) below is the linear-term
    /// companion (lambda2 y^2 - S y + phi2 mu2), so h1 = -y*(lambda1 x^2 + ...).
    Cplx T1(Cplx x) const; ///< lambda1 x^2 - S x + phi1 mu1
    Cplx T2(Cplx y) const; ///< lambda2 y^2 - S y + phi2 mu2

    /// Discriminants.
    Cplx Delta1(Cplx x) const; ///< T1(x)^2 - 4 lambda2 phi2 mu2 x^2
    Cplx Delta2(Cplx y) const; ///< T2(y)^2 - 4 lambda1 phi1 mu1 y^2
    /// sqrt(-Delta_i) on the inner cut, via the clamped root product; exact
    /// zeros at the branch points.
    double sqrt_neg_Delta1(double x) const; ///< lambda1*sqrt((x-x1)(x2-x)(x3-x)(x4-x))
    double sqrt_neg_Delta2(double y) const; ///< lambda2*sqrt((y-y1)(y2-y)(y3-y)(y4-y))

    /// Branch points; throws UnstableSystemError / OrderingViolation.
    const BranchPoints& branch_points() const;

    /// Radii of the conformal-map disks: sqrt(phi2/rho2) (y-side circle) and
    /// sqrt(phi1/rho1) (x-side circle). Equal to sqrt(y2*y3), sqrt(x2*x3).
    double circleY_radius() const;
    double circleX_radius() const;

    /// Two-cut analytic square roots. Throw OnCut within 1e-12 of a cut.
    Cplx rho2_branch(Cplx y) const;
    Cplx rho1_branch(Cplx x) const;
    /// One-sided limits on the open cuts; the two sides are conjugate.
    Cplx rho2_onesided(double y, Side side) const;
    Cplx rho1_onesided(double x, Side side) const;

    /// Algebraic branches. X_star is analytic off the y-cuts with X_star(0)=0;
    /// X_substar has a simple pole at y=0 (PoleAtZero). Same on the y-side.
    Cplx X_star(Cplx y) const;
    Cplx X_substar(Cplx y) const;
    Cplx Y_star(Cplx x) const;
    Cplx Y_substar(Cplx x) const;
    Cplx X_star_onesided(double y, Side side) const;
    Cplx Y_star_onesided(double x, Side side) const;

    /// |Y*(X*(y)) - y| for roundtrip verification (y off the cuts, inside the
    /// y-side disk).
    double conformal_roundtrip(Cplx y) const;

    /// Tolerance band around the cuts within which points count as on-cut.
    static constexpr double cut_tol = 1e-12;

private:
    struct StarParts; // shared selection logic for star branches

    StarParts x_star_parts(Cplx y, Cplx rho2_val) const;
    StarParts y_star_parts(Cplx x, Cplx rho1_val) const;
    void ensure_branch_points() const;

    ModelParams params_;
    DerivedRates rates_;
    double S_;
    mutable bool bp_ready_ = false;
    mutable BranchPoints bp_{};
};

/// Evaluate one kernel polynomial without constructing a Kernel.
Cplx eval_h(const ModelParams& p, int which, Cplx x, Cplx y);

} // namespace gpsq
