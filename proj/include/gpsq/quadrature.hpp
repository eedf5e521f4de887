// Adaptive Gauss-Legendre quadrature on a real interval, for real- or
// complex-valued integrands. Error per panel is estimated by comparing the
// 16-point rule against the embedded-cost 8-point rule; panels failing their
// share of the absolute budget are bisected (depth-limited).
#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "gpsq/errors.hpp"

namespace gpsq {

struct QuadratureConfig {
    double abs_tol = 1e-11; ///< absolute tolerance on the integral
    int max_depth = 52;     ///< bisection depth cap before NonConvergence
};

namespace detail {

// Gauss-Legendre abscissae (positive half) and weights.
inline constexpr std::array<double, 4> g8_x = {0.1834346424956498, 0.5255324099163290,
                                               0.7966664774136267, 0.9602898564975362};
inline constexpr std::array<double, 4> g8_w = {0.3626837833783620, 0.3137066458778873,
                                               0.2223810344533745, 0.1012285362903763};
inline constexpr std::array<double, 8> g16_x = {0.0950125098376374, 0.2816035507792589,
                                                0.4580167776572274, 0.6178762444026438,
                                                0.7554044083550030, 0.8656312023878318,
                                                0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> g16_w = {0.1894506104550685, 0.1826034150449236,
                                                0.1691565193950025, 0.1495959888165767,
                                                0.1246289712555339, 0.0951585116824928,
                                                0.0622535239386479, 0.0271524594117541};

template <typename F, typename T>
void panel(F& f, double a, double b, T& fine, T& coarse) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    fine = T{};
    coarse = T{};
    for (std::size_t i = 0; i < g16_x.size(); ++i) {
        fine += g16_w[i] * (f(mid - half * g16_x[i]) + f(mid + half * g16_x[i]));
    }
    for (std::size_t i = 0; i < g8_x.size(); ++i) {
        coarse += g8_w[i] * (f(mid - half * g8_x[i]) + f(mid + half * g8_x[i]));
    }
    fine *= half;
    coarse *= half;
}

} // namespace detail

/// Integrate f over [a, b]. The result type follows the integrand's.
template <typename F>
auto adaptive_integrate(F&& f, double a, double b, const QuadratureConfig& cfg)
    -> decltype(f(a)) {
    using T = decltype(f(a));
    if (!(b > a)) return T{};
    const double total_len = b - a;

    struct Seg {
        double a, b;
        int depth;
    };
    // Explicit stack; worst case one live segment per depth level plus the
    // pending right halves.
    std::array<Seg, 2048> stack;
    int top = 0;
    stack[top++] = {a, b, 0};

    T total{};
    while (top > 0) {
        const Seg s = stack[--top];
        T fine, coarse;
        detail::panel(f, s.a, s.b, fine, coarse);
        const double err = std::abs(fine - coarse);
        const double budget = cfg.abs_tol * (s.b - s.a) / total_len;
        if (err <= budget || (s.b - s.a) < 1e-15 * total_len) {
            total += fine;
            continue;
        }
        if (s.depth >= cfg.max_depth || top + 2 > static_cast<int>(stack.size())) {
            throw NonConvergence(
                "adaptive quadrature exhausted its bisection budget; integrand too "
                "singular for the requested tolerance");
        }
        const double mid = 0.5 * (s.a + s.b);
        stack[top++] = {s.a, mid, s.depth + 1};
        stack[top++] = {mid, s.b, s.depth + 1};
    }
    return total;
}

} // namespace gpsq
