#include "gpsq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <fmt/format.h>

namespace gpsq {

namespace {

/// Per-state rate bundle of the truncated chain.
struct RateTable {
    double a1, a2;      // arrivals
    double d1_int, d1_h; // queue-1 departures: interior / horizontal boundary
    double d2_int, d2_v; // queue-2 departures: interior / vertical boundary
};

RateTable make_rates(const ModelParams& p) {
    const TransitionRates t = transition_rates(p);
    RateTable r{};
    r.a1 = t.interior[0].rate;
    r.a2 = t.interior[1].rate;
    r.d1_int = t.interior[2].rate;
    r.d2_int = t.interior[3].rate;
    r.d1_h = t.h_boundary[2].rate;
    r.d2_v = t.v_boundary[2].rate;
    return r;
}

// Rate of a queue-1 departure out of state (i, j): 0 if the queue is empty,
// the full-share rate mu1 if it is the only busy queue, phi1*mu1 otherwise.
inline double dep1(const RateTable& r, int i, int j) {
    if (i == 0) return 0.0;
    return j > 0 ? r.d1_int : r.d1_h;
}

inline double dep2(const RateTable& r, int i, int j) {
    if (j == 0) return 0.0;
    return i > 0 ? r.d2_int : r.d2_v;
}

} // namespace

StationaryGrid solve_stationary(const ModelParams& params, int N) {
    validate(params);
    if (N < 20) throw ParameterDomainError(fmt::format("truncation N must be >= 20 (got {})", N));

    StationaryGrid g;
    g.N = N;
    g.p.assign(static_cast<std::size_t>(N) * N, 0.0);

    const RateTable r = make_rates(params);
    if (r.a1 + r.a2 <= 0.0) {
        // No arrivals: the origin is absorbing and carries all mass.
        g.p[0] = 1.0;
        return g;
    }

    auto idx = [N](int i, int j) { return static_cast<std::size_t>(i) * N + j; };

    // Product-geometric initial guess keyed to the offered loads.
    {
        const DerivedRates d = derive_rates(params);
        const double q1 = std::clamp(d.rho1, 0.05, 0.95);
        const double q2 = std::clamp(d.rho2, 0.05, 0.95);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                g.p[idx(i, j)] = std::pow(q1, i) * std::pow(q2, j);
    }

    // Truncated out-rate of state (i, j): transitions leaving the box are
    // dropped (reflecting truncation).
    auto outrate = [&](int i, int j) {
        double q = dep1(r, i, j) + dep2(r, i, j);
        if (i < N - 1) q += r.a1;
        if (j < N - 1) q += r.a2;
        return q;
    };
    // Inflow into (i, j) from current neighbor values. Departure rates depend
    // on the source state's region.
    auto inflow = [&](int i, int j) {
        double s = 0.0;
        if (i > 0) s += r.a1 * g.p[idx(i - 1, j)];
        if (j > 0) s += r.a2 * g.p[idx(i, j - 1)];
        if (i + 1 < N) s += dep1(r, i + 1, j) * g.p[idx(i + 1, j)];
        if (j + 1 < N) s += dep2(r, i, j + 1) * g.p[idx(i, j + 1)];
        return s;
    };

    auto update = [&](int i, int j) {
        const std::size_t k = idx(i, j);
        const double nw = inflow(i, j) / outrate(i, j);
        const double old = g.p[k];
        g.p[k] = nw;
        if (nw == old) return 0.0;
        return std::abs(nw - old) / std::max(std::min(nw, old), 1e-300);
    };

    const int max_paired_sweeps = 40000;
    const double tol_change = 1e-14;
    bool converged = false;
    int sweeps = 0;
    for (; sweeps < max_paired_sweeps; ++sweeps) {
        double worst = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) worst = std::max(worst, update(i, j));
        for (int i = N - 1; i >= 0; --i)
            for (int j = N - 1; j >= 0; --j) worst = std::max(worst, update(i, j));
        if (worst < tol_change) {
            converged = true;
            break;
        }
    }
    g.sweeps = sweeps + 1;

    // Normalize, then certify: the fixed point must satisfy the truncated
    // balance equations to near machine precision.
    const double total = std::accumulate(g.p.begin(), g.p.end(), 0.0);
    for (double& v : g.p) v /= total;

    double resid = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            resid = std::max(resid, std::abs(inflow(i, j) - outrate(i, j) * g.p[idx(i, j)]));
    if (!converged || resid > 1e-12) {
        throw NonConvergence(fmt::format(
            "stationary solve did not converge: N={}, sweeps={}, residual={:.3e}", N, g.sweeps,
            resid));
    }

    // Interior states (no dropped transitions) obey the untruncated balance
    // equations exactly; report the worst violation there.
    double interior_resid = 0.0;
    for (int i = 0; i + 1 < N; ++i)
        for (int j = 0; j + 1 < N; ++j)
            interior_resid = std::max(
                interior_resid, std::abs(inflow(i, j) - outrate(i, j) * g.p[idx(i, j)]));
    g.balance_residual = interior_resid;

    double rim = 0.0;
    for (int i = 0; i < N; ++i) rim += g.p[idx(i, N - 1)];
    for (int j = 0; j + 1 < N; ++j) rim += g.p[idx(N - 1, j)];
    g.boundary_mass = rim;
    return g;
}

std::vector<double> marginal_pmf(const StationaryGrid& g, int axis) {
    if (axis != 1 && axis != 2) throw ParameterDomainError("marginal axis must be 1 or 2");
    std::vector<double> m(static_cast<std::size_t>(g.N), 0.0);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) m[axis == 1 ? i : j] += g.at(i, j);
    return m;
}

double marginal_gf(const StationaryGrid& g, int axis, double z) {
    const std::vector<double> m = marginal_pmf(g, axis);
    // Horner evaluation keeps the sum stable for |z| <= 1 and is fine for the
    // mildly super-unit arguments used in tests (mass decays geometrically).
    double acc = 0.0;
    for (int n = g.N - 1; n >= 0; --n) acc = acc * z + m[static_cast<std::size_t>(n)];
    return acc;
}

double tail_slope(const StationaryGrid& g, int axis, int n_lo, int n_hi) {
    if (n_lo < 0 || n_hi >= g.N || n_hi - n_lo < 2) {
        throw WindowUnreliable(
            fmt::format("tail window [{},{}] unusable for grid N={}", n_lo, n_hi, g.N));
    }
    const std::vector<double> m = marginal_pmf(g, axis);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int cnt = n_hi - n_lo + 1;
    for (int n = n_lo; n <= n_hi; ++n) {
        const double pn = m[static_cast<std::size_t>(n)];
        if (!(pn > 1e-280)) {
            throw WindowUnreliable(fmt::format(
                "marginal mass at n={} is {:.3e}; too small for a trustworthy slope", n, pn));
        }
        const double x = n, y = std::log(pn);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

void write_grid_csv(const StationaryGrid& g, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw Error(fmt::format("cannot open '{}' for writing", path));
    std::fputs("n1,n2,probability\n", f);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j)
            fmt::print(f, "{},{},{:.17g}\n", i, j, g.at(i, j));
    std::fclose(f);
}

} // namespace gpsq
