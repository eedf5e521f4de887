// Brute-force oracle: truncated-CTMC stationary solve and discrete-event
// simulation. Both build their dynamics from transition_rates() so they can
// cross-check the analytic solver without sharing any of its machinery.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpsq/model.hpp"

namespace gpsq {

/// Stationary distribution of the CTMC truncated to {0..N-1}^2 with
/// reflecting truncation (rates leaving the box are dropped).
struct StationaryGrid {
    int N = 0;
    std::vector<double> p; ///< row-major, p[n1*N + n2]; nonnegative, sums to 1
    double boundary_mass = 0.0;   ///< mass on the outer rim (truncation certificate)
    double balance_residual = 0.0;///< max |inflow - outflow| over interior states
    int sweeps = 0;               ///< Gauss-Seidel sweeps used

    double at(int n1, int n2) const { return p[static_cast<std::size_t>(n1) * N + n2]; }
};

/// Solve for the stationary distribution on an N x N box (N >= 20).
/// Positive-form Gauss-Seidel: p_s <- inflow_s / outflow_s, alternating
/// forward and backward sweeps; all arithmetic is sums of nonnegative terms,
/// so deep-tail states keep componentwise relative accuracy.
/// Throws NonConvergence if the sweep budget is exhausted before the
/// relative sup-change reaches 1e-14 and the balance residual 1e-12.
StationaryGrid solve_stationary(const ModelParams& p, int N);

/// Marginal PMF along one axis (axis = 1 tallies n1, axis = 2 tallies n2).
std::vector<double> marginal_pmf(const StationaryGrid& g, int axis);

/// Marginal probability generating function E[z^{N_axis}] from the grid.
double marginal_gf(const StationaryGrid& g, int axis, double z);

/// Least-squares slope of log P(N_axis = n) over the window [n_lo, n_hi].
/// Throws WindowUnreliable if the window leaves the grid, touches masses that
/// have underflowed to zero, or holds fewer than three usable points.
double tail_slope(const StationaryGrid& g, int axis, int n_lo, int n_hi);

/// Point estimate with an across-replication 95% Student-t confidence bound.
struct CIEstimate {
    double mean = 0.0;
    double halfwidth = 0.0; ///< t_{0.975, R-1} * sd / sqrt(R)
    bool covers(double v) const { return mean - halfwidth <= v && v <= mean + halfwidth; }
};

/// Simulation output. Tail entries follow the order of the requested ns.
struct SimResult {
    CIEstimate p00;           ///< long-run fraction of time in (0,0)
    CIEstimate mean_n1;       ///< time-average queue-1 length
    CIEstimate mean_n2;       ///< time-average queue-2 length
    std::vector<CIEstimate> tail_n2; ///< P(N2 >= n) for each requested n
    std::uint64_t events_per_rep = 0;
    int replications = 0;
};

/// Event-driven simulation: `replications` independent runs of `horizon`
/// jump events each, keyed by (seed, replication). Point estimates are
/// per-replication time averages; CIs are across replications.
/// A zero-total-rate state (lambda1 = lambda2 = 0 at the origin) simply
/// absorbs the remaining horizon.
SimResult simulate(const ModelParams& p, double horizon_events, int replications,
                   std::uint64_t seed, const std::vector<int>& tail_ns = {});

/// Write the grid as CSV with header "n1,n2,probability".
void write_grid_csv(const StationaryGrid& g, const std::string& path);

} // namespace gpsq
