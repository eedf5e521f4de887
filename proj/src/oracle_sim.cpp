#include "gpsq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "gpsq/philox.hpp"

namespace gpsq {

namespace {

/// Time-average accumulators for one replication.
struct RepStats {
    double total_time = 0.0;
    double time_00 = 0.0;
    double area_n1 = 0.0;
    double area_n2 = 0.0;
    std::vector<double> time_n2_ge; // one slot per requested tail level
};

CIEstimate summarize(const std::vector<double>& xs) {
    const int n = static_cast<int>(xs.size());
    CIEstimate e{};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    e.mean = mean;
    if (n < 2) {
        e.halfwidth = std::numeric_limits<double>::infinity();
        return e;
    }
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1));
    const boost::math::students_t_distribution<double> t(n - 1);
    e.halfwidth = boost::math::quantile(t, 0.975) * sd / std::sqrt(static_cast<double>(n));
    return e;
}

} // namespace

SimResult simulate(const ModelParams& params, double horizon_events, int replications,
                   std::uint64_t seed, const std::vector<int>& tail_ns) {
    validate(params);
    if (replications < 1) throw ParameterDomainError("replications must be >= 1");
    if (!(horizon_events >= 1.0)) throw ParameterDomainError("horizon must be >= 1 event");

    const TransitionRates tr = transition_rates(params);
    const double l1 = tr.interior[0].rate;
    const double l2 = tr.interior[1].rate;
    const double d1_int = tr.interior[2].rate;
    const double d2_int = tr.interior[3].rate;
    const double d1_h = tr.h_boundary[2].rate;
    const double d2_v = tr.v_boundary[2].rate;

    const auto horizon = static_cast<std::uint64_t>(horizon_events);
    std::vector<RepStats> reps(static_cast<std::size_t>(replications));

    for (int rep = 0; rep < replications; ++rep) {
        Philox4x32 rng(seed, static_cast<std::uint64_t>(rep));
        RepStats st;
        st.time_n2_ge.assign(tail_ns.size(), 0.0);

        long n1 = 0, n2 = 0;
        for (std::uint64_t ev = 0; ev < horizon; ++ev) {
            const double r1 = n1 > 0 ? (n2 > 0 ? d1_int : d1_h) : 0.0;
            const double r2 = n2 > 0 ? (n1 > 0 ? d2_int : d2_v) : 0.0;
            const double total = l1 + l2 + r1 + r2;
            if (total <= 0.0) break; // absorbing (no arrivals): state is frozen

            const double dt = -std::log(rng.next_double()) / total;
            st.total_time += dt;
            if (n1 == 0 && n2 == 0) st.time_00 += dt;
            st.area_n1 += static_cast<double>(n1) * dt;
            st.area_n2 += static_cast<double>(n2) * dt;
            for (std::size_t k = 0; k < tail_ns.size(); ++k)
                if (n2 >= tail_ns[k]) st.time_n2_ge[k] += dt;

            const double u = rng.next_double() * total;
            if (u < l1) {
                ++n1;
            } else if (u < l1 + l2) {
                ++n2;
            } else if (u < l1 + l2 + r1) {
                --n1;
            } else {
                --n2;
            }
        }
        if (st.total_time <= 0.0) {
            // Zero-rate start: the whole horizon is spent in the initial state.
            st.total_time = 1.0;
            st.time_00 = 1.0;
        }
        reps[static_cast<std::size_t>(rep)] = std::move(st);
    }

    auto collect = [&](auto field) {
        std::vector<double> xs;
        xs.reserve(reps.size());
        for (const RepStats& st : reps) xs.push_back(field(st) / st.total_time);
        return summarize(xs);
    };

    SimResult out;
    out.p00 = collect([](const RepStats& s) { return s.time_00; });
    out.mean_n1 = collect([](const RepStats& s) { return s.area_n1; });
    out.mean_n2 = collect([](const RepStats& s) { return s.area_n2; });
    for (std::size_t k = 0; k < tail_ns.size(); ++k)
        out.tail_n2.push_back(collect([k](const RepStats& s) { return s.time_n2_ge[k]; }));
    out.events_per_rep = horizon;
    out.replications = replications;
    return out;
}

} // namespace gpsq
