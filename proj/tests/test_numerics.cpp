#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>

#include <cmath>

#include "berger/numerics.hpp"

using namespace berger;

namespace {
using State1 = Eigen::Matrix<double, 1, 1>;
State1 s1(double v) {
    State1 s;
    s << v;
    return s;
}
}  // namespace

TEST_CASE("rk4 reproduces the exponential") {
    auto f = [](double, const State1& y) { return y; };
    const auto traj = rk4_integrate(f, s1(1.0), 1.0 / 1024, 1024);
    CHECK(std::abs(traj.back()[0] - std::exp(1.0)) < 1e-10);
}

TEST_CASE("rk4 constant system stays constant") {
    auto f = [](double, const State1& y) { return s1(0.0 * y[0]); };
    const auto traj = rk4_integrate(f, s1(3.5), 0.1, 50);
    for (const auto& y : traj) CHECK(y[0] == 3.5);
}

TEST_CASE("rk4 circular system closes after one period") {
    using State2 = Eigen::Vector2d;
    auto f = [](double, const State2& y) { return State2(y[1], -y[0]); };
    const int n = 4096;
    const auto traj = rk4_integrate(f, State2(1.0, 0.0), 2.0 * M_PI / n, n);
    CHECK((traj.back() - State2(1.0, 0.0)).norm() < 1e-8);
}

TEST_CASE("rk4 order of accuracy: halving the step gains at least 12x") {
    auto f = [](double, const State1& y) { return y; };
    auto err = [&](int n) {
        return std::abs(rk4_integrate(f, s1(1.0), 1.0 / n, n).back()[0] - std::exp(1.0));
    };
    const double e1 = err(64);
    const double e2 = err(128);
    CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("rk4 rejects non-finite derivatives") {
    auto f = [](double, const State1& y) { return s1(1.0 / (y[0] - y[0])); };
    CHECK_THROWS_AS(rk4_integrate(f, s1(1.0), 0.1, 2), std::runtime_error);
}

TEST_CASE("central differences of sin") {
    GridFunction g;
    g.step = 1e-3;
    for (int i = 0; i <= 2000; ++i) g.values.push_back(std::sin(i * g.step));
    const GridFunction d = central_diff(g, 1);
    double err = 0.0;
    for (int i = 0; i <= 2000; ++i) err = std::max(err, std::abs(d.values[i] - std::cos(i * g.step)));
    CHECK(err < 1e-6);
}

TEST_CASE("central differences of a constant vanish") {
    GridFunction g{{2.0, 2.0, 2.0, 2.0, 2.0, 2.0}, 0.1};
    for (double v : central_diff(g, 1).values) CHECK(v == 0.0);
    for (double v : central_diff(g, 2).values) CHECK(v == 0.0);
}

TEST_CASE("second derivative of s^2 is 2 including endpoints") {
    GridFunction g;
    g.step = 0.01;
    for (int i = 0; i < 101; ++i) {
        const double s = i * g.step;
        g.values.push_back(s * s);
    }
    for (double v : central_diff(g, 2).values) CHECK(std::abs(v - 2.0) < 1e-8);
}

TEST_CASE("central difference order of accuracy: halving the step gains at least 3.5x") {
    auto err_for = [](double h) {
        GridFunction g;
        g.step = h;
        for (int i = 0; i <= 100; ++i) g.values.push_back(std::sin(1.0 + i * h));
        const GridFunction d = central_diff(g, 1);
        double err = 0.0;
        for (int i = 1; i < 100; ++i) err = std::max(err, std::abs(d.values[i] - std::cos(1.0 + i * h)));
        return err;
    };
    CHECK(err_for(1e-2) / err_for(5e-3) >= 3.5);
}

TEST_CASE("central_diff validates input") {
    GridFunction tiny{{1.0, 2.0, 3.0}, 0.1};
    CHECK_THROWS_AS(central_diff(tiny, 1), std::invalid_argument);
    GridFunction ok{{1, 2, 3, 4, 5, 6}, 0.1};
    CHECK_THROWS_AS(central_diff(ok, 3), std::invalid_argument);
}

TEST_CASE("bisect finds sqrt(2)") {
    const double r = bisect([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-12);
    CHECK(std::abs(r - std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("bisect on a linear function") {
    const double r = bisect([](double x) { return x - 0.5; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(r - 0.5) < 1e-10);
}

TEST_CASE("bisect requires a sign change") {
    CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-10),
                    std::invalid_argument);
}

TEST_CASE("parallel_for covers every index exactly once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("det4 and the quadratic resultant") {
    const std::array<double, 3> f = {2.0, -3.0, 1.0};  // (t-1)(t-2)
    const std::array<double, 3> g = {-1.0, 0.0, 1.0};  // t^2 - 1, shares t = 1
    CHECK(sylvester_resultant_quadratics(f, g) == doctest::Approx(0.0));
    const std::array<double, 3> h = {1.0, 0.0, 1.0};  // t^2 + 1
    CHECK(sylvester_resultant_quadratics(h, g) == doctest::Approx(4.0));
}
