// Model layer: two M/M-type queues coupled by generalized processor sharing
// with strictly over-allocated weights (phi1 + phi2 > 1, non-work-conserving).
//
// Queue i receives Poisson arrivals at rate lambda_i and holds jobs with
// i.i.d. exponential service requirements of mean 1/nu_i. The server works at
// total speed r; while both queues are busy, queue i is served at speed
// r*phi_i/(phi1+phi2), so its effective departure rate is
//
//     mu_i = nu_i * r / (phi1 + phi2)          (per-queue full-share rate)
//
// and a busy queue running alone is served at the full normalized speed,
// giving departure rate mu_i (horizontal/vertical boundary states).
#pragma once

#include <array>
#include <utility>

#include "gpsq/errors.hpp"

namespace gpsq {

/// Raw model inputs. All rates are per unit time.
struct ModelParams {
    double lambda1; ///< arrival rate, queue 1 (>= 0; CLI additionally requires > 0)
    double lambda2; ///< arrival rate, queue 2
    double nu1;     ///< service rate parameter, queue 1 (> 0)
    double nu2;     ///< service rate parameter, queue 2 (> 0)
    double r;       ///< total server speed (> 0)
    double phi1;    ///< GPS weight, queue 1 (in (0,1))
    double phi2;    ///< GPS weight, queue 2 (in (0,1)); phi1 + phi2 > 1 strictly
};

/// Rates derived from ModelParams.
struct DerivedRates {
    double mu1;  ///< nu1 * r / (phi1 + phi2)
    double mu2;  ///< nu2 * r / (phi1 + phi2)
    double rho1; ///< lambda1 / mu1
    double rho2; ///< lambda2 / mu2
};

/// Stability verdict with both inequality left-hand sides reported.
struct StabilityVerdict {
    bool stable;        ///< true iff both LHS < 1 (strictly, beyond the boundary band)
    double lhs1;        ///< rho1 + ((1 - phi1)/phi2) * rho2
    double lhs2;        ///< ((1 - phi2)/phi1) * rho1 + rho2
    bool near_boundary; ///< max(lhs1, lhs2) within 1e-12 of 1: classified unstable + flagged
};

/// One transition: displacement (dn1, dn2) and its exponential rate.
struct Transition {
    int dn1;
    int dn2;
    double rate;
};

/// Per-region transition lists of the quarter-plane random walk.
/// interior: n1 > 0, n2 > 0; h_boundary: n1 > 0, n2 = 0;
/// v_boundary: n1 = 0, n2 > 0; origin: n1 = n2 = 0.
struct TransitionRates {
    std::array<Transition, 4> interior;   ///< (+1,0):l1 (0,+1):l2 (-1,0):phi1*mu1 (0,-1):phi2*mu2
    std::array<Transition, 3> h_boundary; ///< (+1,0):l1 (0,+1):l2 (-1,0):mu1
    std::array<Transition, 3> v_boundary; ///< (+1,0):l1 (0,+1):l2 (0,-1):mu2
    std::array<Transition, 2> origin;     ///< (+1,0):l1 (0,+1):l2
};

/// Validate parameter domain: lambda_i >= 0 (zero admitted for degenerate
/// sanity cases), nu_i > 0, r > 0, phi_i in (0,1), and phi1 + phi2 > 1
/// strictly (the work-conserving case phi1 + phi2 = 1 is rejected).
/// Throws ParameterDomainError with the offending field named.
void validate(const ModelParams& p);

/// Compute mu_i and rho_i. Validates first.
DerivedRates derive_rates(const ModelParams& p);

/// Evaluate both stability inequalities. Validates first. A system on the
/// stability boundary within 1e-12 is classified unstable and flagged.
StabilityVerdict stability_check(const ModelParams& p);

/// Region-by-region transition rates of the CTMC. Validates first.
TransitionRates transition_rates(const ModelParams& p);

/// The index-swapped system (1 <-> 2). Swapping twice is the identity.
ModelParams swap_indices(const ModelParams& p);

/// Throws UnstableSystemError unless stability_check(p).stable.
void require_stable(const ModelParams& p);

} // namespace gpsq
