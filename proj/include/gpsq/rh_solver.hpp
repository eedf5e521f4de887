// Boundary-value solver: computes the stationary boundary generating
// functions P(0,y), P(x,0), the joint transform P(x,y), and P00, by solving
// the circle Riemann-Hilbert problem the kernel reduces to.
//
// Outline. The unknown P(0,y) satisfies, on the circle |y| = sqrt(phi2/rho2),
//   Re[ i (h3/h2)(X*(y), y) (P(0,y) - c1) ] = 0,   c1 = (1-phi1)P00/(1-phi1-phi2).
// The multiplier alpha_Y(y) = conj(a_Y)/a_Y with a_Y = (h3/h2)(X*(y), y) has
// winding number zero, so the sectional solution is an exponential of a
// Cauchy-type integral:
//   F_Y(y) = c0 * varphi_Y(y),         c0 = -phi2 P00/(1-phi1-phi2),
//   varphi_Y(y) = exp( (y/pi) Int_{x1}^{x2} (lambda1 x^2 - phi1 mu1)
//                      Theta_Y(x) / (x h1(x,y)) dx ),
// where Theta_Y(x) = atan( mu1(phi1+phi2-1) sqrt(-Delta1(x)) /
//                          (mu1(phi1+phi2-1) T1(x) - 2 R_Y(x)) ) in [0, pi/2).
// Then P(0,y) = c0 varphi_Y(y) + c1 inside the circle and
// P(0,y) = c0 alpha_Y(y) varphi_Y(y) + c1 outside (the meromorphic
// continuation; alpha's pole at xi+ is the pole of P(0,y) when present).
//
// Since h1(x,y) = -lambda1 y (x - X*(y))(x - Xsub(y)) and the y prefactor
// cancels, the exponent is a Cauchy integral with smooth density
//   I(y) = Int_{x1}^{x2} S(x; y)/(x - X*(y)) dx,
//   S(x; y) = -(lambda1 x^2 - phi1 mu1) Theta_Y(x) / (pi lambda1 x (x - Xsub(y))),
// and Xsub(y) never meets [x1, x2], so only the X*(y) factor can be singular
// (exactly when y sits on the circle). On the circle the limits are Plemelj
// one-sided values of a principal-value integral whose subtraction constant
// is known in closed form: S(x_hat) = -Theta_Y(x_hat)/pi.
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "gpsq/kernel.hpp"
#include "gpsq/quadrature.hpp"
#include "gpsq/resultants.hpp"

namespace gpsq {

struct SolverConfig {
    QuadratureConfig quad{};           ///< exponent-integral quadrature control
    double near_circle_band = 1e-6;    ///< relative band around |y| = R treated as on-circle
    double pole_guard = 1e-8;          ///< NearSingularity threshold for dist(X*, [x1,x2])
    int winding_samples = 2048;        ///< circle samples for the index computation
};

/// Where a generating-function evaluation landed relative to the circle.
enum class GFRegion { inside, on_circle, outside };

struct GFValue {
    Cplx value;
    GFRegion region;
};

enum class AlphaForm { rational, factored };

/// One-sided boundary values of the sectional functions at a circle point.
struct CircleValues {
    double x_hat;    ///< kernel root in [x1, x2] paired with the circle point
    double theta;    ///< Theta_Y(x_hat)
    double pv;       ///< principal-value exponent integral (real)
    Cplx varphi_in;  ///< interior limit of varphi_Y
    Cplx varphi_out; ///< exterior limit of varphi_Y
};

/// Solves the y-side problem for the given parameter order; the x-side
/// solver is the same machinery on swap_indices(params).
class YSideSolver {
public:
    explicit YSideSolver(const ModelParams& p, SolverConfig cfg = {});

    const Kernel& kernel() const { return kernel_; }
    const SolverConfig& config() const { return cfg_; }
    const PoleReport& poles() const { return poles_; }
    double circle_radius() const { return R_; }

    /// Boundary phase on [x1, x2]; 0 at both ends, in [0, pi/2) inside.
    /// Throws BranchAmbiguity if the sign-definite denominator fails.
    double theta(double x) const;

    /// Sectional exponent factor varphi_Y. Accepts any y off the circle
    /// (one-sided values are used on the real branch cuts, where the integral
    /// is continuous); throws NearSingularity within the circle band.
    Cplx varphi(Cplx y) const;

    /// Principal-value variant for real y whose image X*(y) may touch
    /// [x1, x2] (endpoint cases y = +-R); falls back to the regular integral
    /// when the image stays clear of the segment.
    double varphi_pv(double y) const;

    /// One-sided circle values at y = R e^{i angle}.
    CircleValues circle_values(double angle) const;

    /// Circle multiplier. Both algebraic forms are available; they agree off
    /// the poles. Throws PoleOfAlpha near a zero of the active denominator.
    Cplx alpha(Cplx y, AlphaForm form = AlphaForm::rational) const;

    /// Winding number of alpha_Y around the circle (expected 0), by phase
    /// unwrapping of `samples` points. Throws PhaseAliasing on jumps > pi/2.
    int winding(int samples = 0) const;

    /// max Re of the contour w(y) = -lambda2 mu1 X*(y)(1-phi1-phi2) y +
    /// R_Y(X*(y)) over the circle (theory: strictly negative).
    double contour_max_re(int samples = 0) const;

    /// P00 from the closed-form corollary (cached after first call).
    double P00() const;

    /// The boundary generating function P(0, y) (this solver's orientation).
    GFValue P0y(Cplx y) const;

    /// Constants of the sectional representation.
    double c0() const;
    double c1() const;

private:
    Cplx exponent_integral(Cplx A, Cplx Asub) const;
    double pv_exponent_integral(double x_hat, double x_sub) const;
    double theta_from_phi(double phi, double& x_out) const;
    Cplx star_pair(Cplx y, Cplx& Asub) const; // X*(y) with Xsub(y), cut-tolerant
    Cplx circle_alpha(double angle, Cplx* w_out) const;

    ModelParams params_;
    SolverConfig cfg_;
    Kernel kernel_;
    QuadraticPoly RY_;
    PoleReport poles_;
    double R_;          // circle radius sqrt(phi2/rho2)
    double m_, h_;      // segment midpoint/halfwidth of [x1, x2]
    double theta_scale_; // mu1 (phi1 + phi2 - 1)
    mutable std::optional<double> p00_;
};

/// User-facing solution object: y-side solver plus the index-swapped x-side
/// solver, cross-checked against each other at construction.
class Solution {
public:
    explicit Solution(const ModelParams& p, SolverConfig cfg = {});

    const ModelParams& params() const { return params_; }
    const YSideSolver& yside() const { return y_; }
    const YSideSolver& xside() const { return x_; }

    double P00() const { return p00_; } ///< y-side value (canonical)
    double P00_swapped() const;         ///< x-side value (consistency witness)

    GFValue P0y(Cplx y) const { return y_.P0y(y); }
    GFValue Px0(Cplx x) const { return x_.P0y(x); }

    /// Joint transform via the kernel functional equation; KernelZero off the
    /// removable point (1,1), which returns exactly 1.
    Cplx Pxy(Cplx x, Cplx y) const;

    /// Boundary evaluations P(x,1), P(1,y) with removable-singularity
    /// handling (derivative limit) and PoleEncountered on genuine poles.
    Cplx P1y(Cplx y) const;
    Cplx Px1(Cplx x) const;

    /// Empty-queue marginals P(1,0) = Pr{N2 = 0} and P(0,1) = Pr{N1 = 0},
    /// from the closed forms the (1,1) corner relations pin down.
    double P10() const;
    double P01() const;

    /// Taylor coefficients around 0 (Cauchy integrals on |z| = 1/2):
    /// coefficient n is p(0,n) for P0y, p(n,0) for Px0.
    std::vector<double> taylor_P0y(int nmax) const;
    std::vector<double> taylor_Px0(int nmax) const;
    /// Marginal pmfs via the edge transforms: coefficient n of P(1,y) is
    /// Pr{N2 = n}, coefficient n of P(x,1) is Pr{N1 = n}.
    std::vector<double> taylor_P1y(int nmax) const;
    std::vector<double> taylor_Px1(int nmax) const;
    /// Joint probabilities p(n1,n2), 0 <= n1,n2 <= nmax, via a double Cauchy
    /// integral of Pxy.
    std::vector<std::vector<double>> joint_pmf(int nmax) const;

private:
    std::vector<double> taylor_of(const YSideSolver& s, int nmax) const;
    std::vector<double> taylor_edge(double avoid_radius,
                                    const std::function<Cplx(Cplx)>& f, int nmax) const;

    ModelParams params_;
    YSideSolver y_;
    YSideSolver x_;
    double p00_;
};

} // namespace gpsq
