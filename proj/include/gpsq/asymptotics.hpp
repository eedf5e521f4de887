// Tail asymptotics of the second-queue marginal Pr{N2 = n}.
//
// The generating function of that marginal is P(1,y), whose dominant
// singularity falls into exactly one of four regimes:
//   (a) simple pole of the continued P(0,y) at xi+ in (R, y3):
//         p(n) ~ A (1/xi+)^n
//   (b) pole colliding with the branch point (xi+ = y3):
//         p(n) ~ B n^{-1/2} (1/y3)^n
//   (c) pure branch point at y3:
//         p(n) ~ C n^{-3/2} (1/y3)^n
//   (d) pole of P(1,y) itself at y* = phi2/rho2 (only when phi1 < rho1):
//         p(n) ~ D (rho2/phi2)^n
// Case (d) is decided by the sign of phi1 - rho1; among (a)-(c) the decider
// is the sign of Q_Y at sqrt(phi1/rho1) (negative <=> the pole exists).
//
// The pole-driven constants (a), (d) are closed forms in the model data plus
// one evaluation of the exponent factor. The branch-point constants (b), (c)
// are extracted numerically from the solver's own boundary function: the
// coefficient of sqrt(y3 - y) (resp. 1/sqrt(y3 - y)) in P(0,y) below y3,
// pushed through Darboux's method. That keeps them consistent with the
// solved P(0,y) by construction instead of trusting a long algebraic chain.
#pragma once

#include <optional>

#include "gpsq/rh_solver.hpp"

namespace gpsq {

enum class TailCase { a, b, c, d };

/// "a".."d" for reports.
const char* tail_case_name(TailCase c);

/// Which regime the parameters fall into, plus the classification margins.
struct CaseDecision {
    TailCase primary;
    bool ambiguous = false; ///< |phi1 - rho1| within the classification band
    double q = 0.0;         ///< Q_Y(sqrt(phi1/rho1)), the (a)/(b)/(c) decider
    double q_tol = 0.0;     ///< zero band applied to q
};

/// Stability is required; the ambiguity band is |phi1 - rho1| <= 1e-10 scale,
/// in which case `primary` holds the (a)/(b)/(c)-side reading and callers
/// should surface the (d)-side alternate as well.
CaseDecision classify_case(const ModelParams& p);

struct TailRegime {
    TailCase regime;
    double singularity; ///< dominant y-singularity: xi+, y3, y3, or phi2/rho2
    double decay_rate;  ///< 1/singularity: asymptotic ratio p(n+1)/p(n)
    double power;       ///< polynomial correction: 0, -1/2, -3/2, 0
    double prefactor;
};

struct TailEstimate {
    CaseDecision decision;
    TailRegime primary;
    /// The (d)-side candidate when the decision sits in the ambiguity band.
    std::optional<TailRegime> alternate;
};

TailEstimate tail_estimate(const Solution& sol);

/// prefactor * n^power * decay_rate^n (n >= 1).
double tail_eval(const TailRegime& t, int n);

/// The y* = phi2/rho2 singularity of P(1,y): removable exactly when
/// phi1 >= rho1 or phi2 <= rho2. `numerator_at_pole` is
/// phi2 P(1,0) - (1-phi2) P(0,y*) + (1-phi2) P00 evaluated through the
/// solver (it must vanish in the removable case); `residue_constant` is the
/// closed form for its value in the pole case.
struct RemovabilityReport {
    bool removable;
    double numerator_at_pole;
    double residue_constant;
};

RemovabilityReport removable_singularity_check(const Solution& sol);

} // namespace gpsq
