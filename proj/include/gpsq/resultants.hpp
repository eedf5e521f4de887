// Resultant layer: the quadratic factors of the pairwise resultants of the
// kernel polynomials, and the pole bookkeeping they control.
//
// Eliminating one variable between h1 and h2 (or h3) yields, up to explicit
// monomial factors, fixed quadratics:
//   Res_x(h1,h2)(y) =  mu1 * y(y-1) * P_X(y)
//   Res_x(h1,h3)(y) = -phi1 mu1 * y(y-1) * Q_X(y)
//   Res_y(h1,h2)(x) = -phi2 mu2 * x(x-1) * P_Y(x)
//   Res_y(h1,h3)(x) =  mu2 * x(x-1) * Q_Y(x)
// The roots xi+- of Q_X locate the only possible pole of the continued
// boundary function P(0,y) between the circle radius sqrt(phi2/rho2) and the
// branch point y3; the roots y+- of P_X enter the tail constants. R_Y is the
// quadratic tying h3 to the circle multiplier's denominator via
//   q_Y(x,y) * h3(x,y) = mu2 x (x-1) (-lambda2 mu1 x (1-phi1-phi2) y + R_Y(x)).
#pragma once

#include <complex>

#include "gpsq/model.hpp"

namespace gpsq {

/// a2*z^2 + a1*z + a0 with real coefficients.
struct QuadraticPoly {
    double a2, a1, a0;
    double operator()(double z) const { return (a2 * z + a1) * z + a0; }
    std::complex<double> eval(std::complex<double> z) const { return (a2 * z + a1) * z + a0; }
    /// Scale used for relative zero tests: |a2| z^2 + |a1| z + |a0| at |z|.
    double magnitude_at(double z) const {
        const double az = std::abs(z);
        return (std::abs(a2) * az + std::abs(a1)) * az + std::abs(a0);
    }
};

QuadraticPoly poly_R_Y(const ModelParams& p);
QuadraticPoly poly_P_X(const ModelParams& p);
QuadraticPoly poly_Q_X(const ModelParams& p);
QuadraticPoly poly_P_Y(const ModelParams& p);
QuadraticPoly poly_Q_Y(const ModelParams& p);
/// The mirror of R_Y under the index swap (used by the swapped solver).
QuadraticPoly poly_R_X(const ModelParams& p);

/// Roots of P_X; a complex-conjugate pair is flagged, not an error.
struct PXRoots {
    std::complex<double> y_plus;  ///< root of larger real part
    std::complex<double> y_minus;
    bool complex_pair;
};
PXRoots roots_P_X(const ModelParams& p);

/// Roots of Q_X. xi_plus is the positive root of smallest modulus (tie
/// tolerance 1e-12); it always exists. When it is a genuine pole of the
/// continued P(0,y) (see locate_poles) it satisfies
/// xi_plus >= sqrt(phi2/rho2); otherwise it may be smaller.
/// If Q_X degenerates to a linear polynomial, xi_minus is +-infinity.
struct XiRoots {
    double xi_plus;
    double xi_minus;
};
XiRoots roots_Q_X(const ModelParams& p);

/// Pole bookkeeping for the continued P(0,y) on (sqrt(phi2/rho2), y3).
struct PoleReport {
    double xi_plus = 0.0;
    double xi_minus = 0.0;
    std::complex<double> y_plus;
    std::complex<double> y_minus;
    bool complex_y_roots = false;
    bool has_pole_in_annulus = false; ///< phi1 > rho1 and Q_Y(sqrt(phi1/rho1)) < 0
    double rho_Y = 0.0;               ///< radius of convergence: xi_plus or y3
    bool diagnostic_agrees = true;    ///< sign-scan of h3(X*(y), y) concurs
};

/// Requires stable parameters (branch points are involved).
PoleReport locate_poles(const ModelParams& p);

} // namespace gpsq
