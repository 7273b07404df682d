#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace berger {

// Default tolerances used across the library. "algebraic" guards identities
// that hold exactly in exact arithmetic; the others belong to the ODE /
// finite-difference paths.
struct Defaults {
    static constexpr double algebraic = 1e-12;
    static constexpr double constraint = 1e-10;
    static constexpr double closure = 1e-6;
    static constexpr double curvature_recovery = 1e-4;
    static constexpr double shape_audit = 1e-5;
    static constexpr double map_differential_step = 1e-6;
    static constexpr double bracket_fd = 1e-6;
    static constexpr double residual_zero = 1e-9;
    static constexpr double root_filter_padding = 1e-9;
    static constexpr int steps_per_period = 4096;
};

// Uniformly sampled scalar function. Second-derivative stencils need at
// least five samples.
struct GridFunction {
    std::vector<double> values;
    double step = 0.0;
};

namespace detail {
template <typename State>
bool finite_state(const State& y) {
    for (int i = 0; i < static_cast<int>(y.size()); ++i) {
        if (!std::isfinite(static_cast<double>(y[i]))) return false;
    }
    return true;
}
}  // namespace detail

// One classical RK4 step of y' = f(t, y).
template <typename State, typename F>
State rk4_step(F&& f, double t, const State& y, double h) {
    const State k1 = f(t, y);
    const State k2 = f(t + 0.5 * h, State(y + 0.5 * h * k1));
    const State k3 = f(t + 0.5 * h, State(y + 0.5 * h * k2));
    const State k4 = f(t + h, State(y + h * k3));
    State out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!detail::finite_state(out)) {
        throw std::runtime_error("rk4_step: non-finite state at t=" + std::to_string(t));
    }
    return out;
}

// Fixed-step RK4; returns the n+1 states y_0..y_n.
template <typename State, typename F>
std::vector<State> rk4_integrate(F&& f, const State& y0, double step, int n) {
    if (!(step > 0.0) || n < 1) {
        throw std::invalid_argument("rk4_integrate: step must be > 0 and n >= 1");
    }
    std::vector<State> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(y0);
    double t = 0.0;
    for (int i = 0; i < n; ++i) {
        out.push_back(rk4_step(f, t, out.back(), step));
        t += step;
    }
    return out;
}

// Second-order central differences; one-sided second-order stencils at the
// endpoints. order = 1 or 2.
inline GridFunction central_diff(const GridFunction& g, int order) {
    const std::size_t n = g.values.size();
    if (order != 1 && order != 2) throw std::invalid_argument("central_diff: order must be 1 or 2");
    if (n < 5) throw std::invalid_argument("central_diff: need at least 5 samples");
    if (!(g.step > 0.0)) throw std::invalid_argument("central_diff: step must be > 0");
    const double h = g.step;
    const std::vector<double>& v = g.values;
    GridFunction out;
    out.step = h;
    out.values.resize(n);
    if (order == 1) {
        out.values[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        for (std::size_t i = 1; i + 1 < n; ++i) out.values[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
        out.values[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    } else {
        const double h2 = h * h;
        out.values[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
        for (std::size_t i = 1; i + 1 < n; ++i) out.values[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
        out.values[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    }
    return out;
}

// Bisection to bracket width <= tol; requires a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("bisect: lo must be < hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::invalid_argument("bisect: no sign change on bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// Runs fn(i) for i in [0, n); results land wherever fn writes them, so the
// merge order is the index order regardless of scheduling.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Determinant of a 4x4 matrix over any commutative ring (cofactor expansion).
template <typename Ring>
Ring det4(const std::array<std::array<Ring, 4>, 4>& m) {
    auto det3 = [](const Ring& a, const Ring& b, const Ring& c, const Ring& d, const Ring& e,
                   const Ring& f, const Ring& g, const Ring& h, const Ring& i) {
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    };
    Ring out = m[0][0] * det3(m[1][1], m[1][2], m[1][3], m[2][1], m[2][2], m[2][3], m[3][1], m[3][2], m[3][3]);
    out = out - m[0][1] * det3(m[1][0], m[1][2], m[1][3], m[2][0], m[2][2], m[2][3], m[3][0], m[3][2], m[3][3]);
    out = out + m[0][2] * det3(m[1][0], m[1][1], m[1][3], m[2][0], m[2][1], m[2][3], m[3][0], m[3][1], m[3][3]);
    out = out - m[0][3] * det3(m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2], m[3][0], m[3][1], m[3][2]);
    return out;
}

// Resultant of a2 t^2 + a1 t + a0 and b2 t^2 + b1 t + b0 via the 4x4
// Sylvester matrix.
template <typename Ring>
Ring sylvester_resultant_quadratics(const std::array<Ring, 3>& a, const std::array<Ring, 3>& b) {
    const Ring zero = a[0] - a[0];
    std::array<std::array<Ring, 4>, 4> m = {{{a[2], a[1], a[0], zero},
                                             {zero, a[2], a[1], a[0]},
                                             {b[2], b[1], b[0], zero},
                                             {zero, b[2], b[1], b[0]}}};
    return det4(m);
}

}  // namespace berger
