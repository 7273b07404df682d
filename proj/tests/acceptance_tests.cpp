// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerance in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "berger/berger_core.hpp"
#include "berger/biharmonic.hpp"
#include "berger/certifier.hpp"
#include "berger/hopf_fibration.hpp"
#include "berger/hopf_surfaces.hpp"
#include "berger/numerics.hpp"
#include "berger/submersion.hpp"

using namespace berger;

namespace {

struct Harness {
    int failures = 0;

    void run(int number, const std::string& title, const std::function<bool(std::string&)>& fn) {
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("criterion %d [%s] %s%s%s\n", number, ok ? "PASS" : "FAIL", title.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
    }
};

const double kEpsGrid[] = {0.3, 0.5, 0.9, 1.0, 1.5};

bool criterion1(std::string& detail) {
    double worst = 0.0;
    for (double eps : kEpsGrid) {
        const BergerParameter<double> p(eps);
        const auto conn = levi_civita(structure_constants(p));
        const auto closed = berger_connection_closed_form(p);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    worst = std::max(worst, std::abs(conn.gamma[i][j][k] - closed.gamma[i][j][k]));
    }
    detail = "max deviation " + std::to_string(worst);
    return worst <= 1e-12;
}

bool criterion2(std::string& detail) {
    double worst = 0.0;
    for (double eps : kEpsGrid) {
        const double e2 = eps * eps;
        const auto sc = structure_constants(BergerParameter<double>(eps));
        const auto curv = ricci(riemann_tensor(levi_civita(sc), sc));
        auto expected_riem = [&](int i, int j, int k, int l) -> double {
            if (i == j || k == l) return 0.0;
            auto block = [&](int a, int b) {
                return ((a == 0 && b == 1) || (a == 1 && b == 0)) ? 4.0 - 3.0 * e2 : e2;
            };
            if (i == k && j == l) return block(i, j);
            if (i == l && j == k) return -block(i, j);
            return 0.0;
        };
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        worst = std::max(worst,
                                         std::abs(curv.riem[i][j][k][l] - expected_riem(i, j, k, l)));
                const double ric = (i == j) ? (i == 2 ? 2.0 * e2 : 4.0 - 2.0 * e2) : 0.0;
                worst = std::max(worst, std::abs(curv.ricci[i][j] - ric));
            }
    }
    detail = "max deviation " + std::to_string(worst);
    return worst <= 1e-12;
}

bool criterion3(std::string& detail) {
    for (double eps : kEpsGrid) {
        const BergerParameter<double> p(eps);
        const auto conn = levi_civita(structure_constants(p));
        const auto tau = submersion_tension(conn);
        if (tau[0] != 0.0 || tau[1] != 0.0 || tau[2] != 0.0) {
            detail = "nonzero tension at eps " + std::to_string(eps);
            return false;
        }
        const double K = submersion::base_gauss_curvature(submersion::hopf_integrability_data(p));
        if (std::abs(K - 4.0) > 1e-12) {
            detail = "base curvature " + std::to_string(K);
            return false;
        }
    }
    detail = "tension identically zero; base Gauss curvature 4";
    return true;
}

bool criterion4(std::string& detail) {
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const double eps = 0.05 + 0.9 * k / 21.0;
        const BergerParameter<double> p(eps);
        const auto scan = scan_radii(p, 0.05, 0.49, 2048, 0);
        if (scan.roots.size() != 1) {
            detail = "root count " + std::to_string(scan.roots.size()) + " at eps " +
                     std::to_string(eps);
            return false;
        }
        worst = std::max(worst, std::abs(scan.roots[0] - proper_biharmonic_radius(p)));
        const double kg = 2.0 * std::sqrt(1.0 - eps * eps);
        const auto res = torus_system_residuals(std::vector<double>(64, kg), p, 0.01);
        if (res.max_abs() > 1e-9) {
            detail = "ODE residual " + std::to_string(res.max_abs());
            return false;
        }
    }
    for (double eps : {1.0, 1.2}) {
        const auto scan = scan_radii(BergerParameter<double>(eps), 0.05, 0.49, 2048, 0);
        if (!scan.roots.empty()) {
            detail = "unexpected interior root at eps " + std::to_string(eps);
            return false;
        }
    }
    detail = "max |r* - closed form| " + std::to_string(worst);
    return worst <= 1e-6;
}

bool criterion5(std::string& detail) {
    char buf[256];
    std::string measured;
    double worst = 0.0;
    for (double eps : {0.3, 0.6, 0.9}) {
        const BergerParameter<double> p(eps);
        const auto spec = circle_from_radius(proper_biharmonic_radius(p));
        const auto states = frenet_integrate(spec, p, 1024, 1.0);
        const auto audit = measured_torus_shape(spec, p, states[512], 0.0);
        const double expected = 4.0 - 2.0 * eps * eps;
        worst = std::max(worst, std::abs(audit.shape_norm_sq - expected));
        std::snprintf(buf, sizeof(buf), "eps %.1f: measured |A|^2 = %.9f (kg^2+2eps^2 = %.9f); ",
                      eps, audit.shape_norm_sq, expected);
        measured += buf;
    }
    detail = measured + "max deviation " + std::to_string(worst);
    return worst <= 1e-5;
}

bool criterion6(std::string& detail) {
    double worst_closure = 0.0, worst_kg = 0.0, worst_drift = 0.0;
    for (double eps : {0.4, 0.7}) {
        const BergerParameter<double> p(eps);
        for (double r : {proper_biharmonic_radius(p), 0.4}) {
            const auto spec = circle_from_radius(r);
            const int steps = 4096;
            const double length = 2.0 * M_PI * r;
            const auto states = frenet_integrate(spec, p, steps, length);
            for (const auto& st : states) {
                worst_drift = std::max(worst_drift, std::abs(st.x.squaredNorm() - 1.0));
                worst_drift = std::max(worst_drift, std::abs(st.a * st.a + st.b * st.b - 1.0));
            }
            std::vector<BasePoint> base;
            base.reserve(states.size());
            for (const auto& st : states) base.push_back(hopf_map(st.x, 1e-6));
            worst_closure = std::max(worst_closure, (base.back() - base.front()).norm());
            const auto kg = measured_geodesic_curvature(base, length / steps);
            for (std::size_t i = 5; i + 5 < kg.size(); ++i)
                worst_kg = std::max(worst_kg, std::abs(kg[i] - spec.kg_const));
        }
    }
    detail = "closure " + std::to_string(worst_closure) + ", kg error " + std::to_string(worst_kg) +
             ", drift " + std::to_string(worst_drift);
    return worst_closure <= 1e-6 && worst_kg <= 1e-4 && worst_drift <= 1e-10;
}

bool criterion7(std::string& detail) {
    const auto r = cmc_residuals(1.0, 2.0, FrameVector(0, 1, 0), BergerParameter<double>(1.0));
    if (r.r0 != 0.0 || r.r1 != 0.0 || r.r2 != 0.0) {
        detail = "residuals not exactly zero";
        return false;
    }
    const FrameVector horiz(1, 0, 0);
    const bool sphere_at_1 =
        classify_cmc({1.0, 2.0, horiz, true}, BergerParameter<double>(1.0)) ==
        ClassificationTag::proper_biharmonic_sphere;
    const bool sphere_at_m1 =
        classify_cmc({1.0, 2.0, horiz, true}, BergerParameter<double>(-1.0)) ==
        ClassificationTag::proper_biharmonic_sphere;
    bool none_elsewhere = true;
    for (double eps : {0.3, 0.5, 0.9, 1.2}) {
        if (classify_cmc({1.0, 2.0, horiz, true}, BergerParameter<double>(eps)) ==
            ClassificationTag::proper_biharmonic_sphere) {
            none_elsewhere = false;
        }
    }
    detail = "S^2(1/sqrt(2)) residuals exactly zero; umbilical classification correct";
    return sphere_at_1 && sphere_at_m1 && none_elsewhere;
}

bool criterion8(std::string& detail) {
    using namespace berger::exact;
    char buf[128];
    for (const auto& eps : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        const auto start = std::chrono::steady_clock::now();
        const auto cases = case_exclusions(eps);
        if (!cases.all_excluded) {
            detail = "case exclusion failed at eps = " + to_string(eps);
            return false;
        }
        const auto chain = identity_chain(eps);
        if (!chain.all_derived_verified) {
            detail = "identity chain derivation failed at eps = " + to_string(eps);
            return false;
        }
        bool flagged = false;
        for (const auto& st : chain.steps) {
            if (st.id == "product_relation" && st.status == "mismatch" && !st.residual.empty() &&
                st.residual != "0") {
                flagged = true;
            }
        }
        if (!flagged) {
            detail = "undefined-token region not flagged";
            return false;
        }
        const auto elim = eliminate_and_bound(eps);
        if (elim.degree != 7 || elim.leading_coefficient != 80 || !elim.admissible_roots.empty() ||
            !elim.routes_agree) {
            detail = "elimination failed at eps = " + to_string(eps);
            return false;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= 10.0) {
            std::snprintf(buf, sizeof(buf), "runtime %.1fs at eps = %s", secs,
                          to_string(eps).c_str());
            detail = buf;
            return false;
        }
    }
    detail = "cases excluded; chain verified with the typo region flagged; degree 7, leading 80, "
             "no admissible roots";
    return true;
}

bool criterion9(std::string& detail) {
    using State1 = Eigen::Matrix<double, 1, 1>;
    auto f = [](double, const State1& y) { return y; };
    auto rk_err = [&](int n) {
        State1 y;
        y << 1.0;
        return std::abs(rk4_integrate(f, y, 1.0 / n, n).back()[0] - std::exp(1.0));
    };
    const double rk_ratio = rk_err(64) / rk_err(128);
    auto cd_err = [](double h) {
        GridFunction g;
        g.step = h;
        for (int i = 0; i <= 100; ++i) g.values.push_back(std::sin(1.0 + i * h));
        const GridFunction d = central_diff(g, 1);
        double err = 0.0;
        for (int i = 1; i < 100; ++i)
            err = std::max(err, std::abs(d.values[i] - std::cos(1.0 + i * h)));
        return err;
    };
    const double cd_ratio = cd_err(1e-2) / cd_err(5e-3);
    detail = "rk4 halving gain " + std::to_string(rk_ratio) + ", central-diff gain " +
             std::to_string(cd_ratio);
    return rk_ratio >= 12.0 && cd_ratio >= 3.5;
}

}  // namespace

int main() {
    Harness h;
    h.run(1, "Koszul connection matches the closed form (<= 1e-12)", criterion1);
    h.run(2, "curvature and Ricci tables (<= 1e-12)", criterion2);
    h.run(3, "Hopf fibration harmonic: zero tension, base curvature 4", criterion3);
    h.run(4, "classification radius over 20 eps values (<= 1e-6) and no root past eps = 1",
          criterion4);
    h.run(5, "shape-operator audit: measured |A|^2 = 4 - 2 eps^2 (<= 1e-5)", criterion5);
    h.run(6, "curve fidelity: closure 1e-6, kg recovery 1e-4, drift 1e-10", criterion6);
    h.run(7, "round-sphere case: S^2(1/sqrt(2)) residuals and umbilical classification",
          criterion7);
    h.run(8, "submersion certificate at eps in {1/4, 1/2, 3/4} (< 10 s each)", criterion8);
    h.run(9, "numeric kernel orders of accuracy", criterion9);
    if (h.failures == 0) {
        std::printf("acceptance: all 9 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", h.failures);
    return 1;
}
