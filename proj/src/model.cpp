#include "gpsq/model.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace gpsq {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ParameterDomainError(fmt::format("{} must be finite (got {})", name, v));
    }
}

} // namespace

void validate(const ModelParams& p) {
    require_finite(p.lambda1, "lambda1");
    require_finite(p.lambda2, "lambda2");
    require_finite(p.nu1, "nu1");
    require_finite(p.nu2, "nu2");
    require_finite(p.r, "r");
    require_finite(p.phi1, "phi1");
    require_finite(p.phi2, "phi2");

    if (p.lambda1 < 0.0) throw ParameterDomainError("lambda1 must be >= 0");
    if (p.lambda2 < 0.0) throw ParameterDomainError("lambda2 must be >= 0");
    if (p.nu1 <= 0.0) throw ParameterDomainError("nu1 must be > 0");
    if (p.nu2 <= 0.0) throw ParameterDomainError("nu2 must be > 0");
    if (p.r <= 0.0) throw ParameterDomainError("r must be > 0");
    if (p.phi1 <= 0.0 || p.phi1 >= 1.0) throw ParameterDomainError("phi1 must lie in (0,1)");
    if (p.phi2 <= 0.0 || p.phi2 >= 1.0) throw ParameterDomainError("phi2 must lie in (0,1)");
    // Strict over-allocation: the work-conserving case phi1 + phi2 = 1 is a
    // different model (the boundary rates below would degenerate) and is
    // rejected; approach it with phi1 + phi2 = 1 + eps instead.
    if (!(p.phi1 + p.phi2 > 1.0)) {
        throw ParameterDomainError(
            fmt::format("phi1 + phi2 must be > 1 strictly (got {:.17g})", p.phi1 + p.phi2));
    }
}

DerivedRates derive_rates(const ModelParams& p) {
    validate(p);
    const double share = p.r / (p.phi1 + p.phi2);
    DerivedRates d{};
    d.mu1 = p.nu1 * share;
    d.mu2 = p.nu2 * share;
    d.rho1 = p.lambda1 / d.mu1;
    d.rho2 = p.lambda2 / d.mu2;
    return d;
}

StabilityVerdict stability_check(const ModelParams& p) {
    const DerivedRates d = derive_rates(p);
    StabilityVerdict v{};
    v.lhs1 = d.rho1 + (1.0 - p.phi1) / p.phi2 * d.rho2;
    v.lhs2 = (1.0 - p.phi2) / p.phi1 * d.rho1 + d.rho2;
    const double worst = std::max(v.lhs1, v.lhs2);
    // Within 1e-12 of the boundary we cannot certify stability; classify as
    // unstable and flag, so callers can surface a near-boundary warning.
    v.near_boundary = std::abs(worst - 1.0) <= 1e-12;
    v.stable = worst < 1.0 && !v.near_boundary;
    return v;
}

TransitionRates transition_rates(const ModelParams& p) {
    const DerivedRates d = derive_rates(p);
    TransitionRates t{};
    t.interior = {{{+1, 0, p.lambda1},
                   {0, +1, p.lambda2},
                   {-1, 0, p.phi1 * d.mu1},
                   {0, -1, p.phi2 * d.mu2}}};
    // A lone busy queue gets the whole (normalized) server: rate mu_i, not
    // phi_i*mu_i. This is where phi1 + phi2 > 1 breaks work conservation.
    t.h_boundary = {{{+1, 0, p.lambda1}, {0, +1, p.lambda2}, {-1, 0, d.mu1}}};
    t.v_boundary = {{{+1, 0, p.lambda1}, {0, +1, p.lambda2}, {0, -1, d.mu2}}};
    t.origin = {{{+1, 0, p.lambda1}, {0, +1, p.lambda2}}};
    return t;
}

ModelParams swap_indices(const ModelParams& p) {
    return ModelParams{p.lambda2, p.lambda1, p.nu2, p.nu1, p.r, p.phi2, p.phi1};
}

void require_stable(const ModelParams& p) {
    const StabilityVerdict v = stability_check(p);
    if (!v.stable) {
        throw UnstableSystemError(fmt::format(
            "parameters are not (certifiably) stable: lhs1={:.17g}, lhs2={:.17g}{}", v.lhs1,
            v.lhs2, v.near_boundary ? " (within 1e-12 of the stability boundary)" : ""));
    }
}

} // namespace gpsq
