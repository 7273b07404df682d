#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "berger/biharmonic.hpp"
#include "berger/hopf_surfaces.hpp"

using namespace berger;

TEST_CASE("cmc_residuals") {
    SUBCASE("H = 0 is always biharmonic") {
        const auto r = cmc_residuals(0.0, 5.0, FrameVector(0, 0, 1), BergerParameter<double>(0.7));
        CHECK(r.r0 == 0.0);
        CHECK(r.r1 == 0.0);
        CHECK(r.r2 == 0.0);
    }
    SUBCASE("round sphere S^2(1/sqrt(2)): eps = 1, H = 1, |A|^2 = 2") {
        const auto r = cmc_residuals(1.0, 2.0, FrameVector(0, 1, 0), BergerParameter<double>(1.0));
        CHECK(r.r0 == 0.0);
        CHECK(r.r1 == 0.0);
        CHECK(r.r2 == 0.0);
    }
    SUBCASE("biharmonic torus data at eps = 0.5") {
        const auto r = cmc_residuals(std::sqrt(3.0) / 2.0, 3.5, FrameVector(1, 0, 0),
                                     BergerParameter<double>(0.5));
        CHECK(std::abs(r.r0) <= 1e-15);
        CHECK(r.r1 == 0.0);
        CHECK(r.r2 == 0.0);
    }
    SUBCASE("non-unit normal rejected") {
        CHECK_THROWS_AS(cmc_residuals(1.0, 2.0, FrameVector(1, 1, 0), BergerParameter<double>(0.5)),
                        std::invalid_argument);
    }
}

TEST_CASE("torus_system_residuals") {
    const double step = 0.01;
    SUBCASE("constant biharmonic curvature") {
        const BergerParameter<double> p(0.5);
        const double kg = 2.0 * std::sqrt(1.0 - 0.25);
        const std::vector<double> samples(64, kg);
        CHECK(torus_system_residuals(samples, p, step).max_abs() <= 1e-9);
    }
    SUBCASE("minimal") {
        const std::vector<double> samples(64, 0.0);
        CHECK(torus_system_residuals(samples, BergerParameter<double>(0.5), step).max_abs() == 0.0);
    }
    SUBCASE("kg = 1 at eps = 0.5 leaves e_normal = 2") {
        const std::vector<double> samples(64, 1.0);
        const auto res = torus_system_residuals(samples, BergerParameter<double>(0.5), step);
        for (double v : res.e_normal) CHECK(v == doctest::Approx(2.0));
        for (double v : res.e_t1) CHECK(v == 0.0);
        for (double v : res.e_t2) CHECK(v == 0.0);
    }
    SUBCASE("nonconstant kg drives the tangential residuals") {
        const BergerParameter<double> p(0.5);
        std::vector<double> samples;
        for (int i = 0; i < 64; ++i) samples.push_back(1.0 + 0.1 * std::sin(i * step));
        const auto res = torus_system_residuals(samples, p, step);
        double max_t1 = 0.0, max_t2 = 0.0;
        for (double v : res.e_t1) max_t1 = std::max(max_t1, std::abs(v));
        for (double v : res.e_t2) max_t2 = std::max(max_t2, std::abs(v));
        CHECK(max_t1 > 1e-2);
        CHECK(max_t2 > 1e-3);
    }
    SUBCASE("small grids rejected") {
        CHECK_THROWS_AS(torus_system_residuals(std::vector<double>(4, 1.0),
                                               BergerParameter<double>(0.5), step),
                        std::invalid_argument);
    }
}

TEST_CASE("proper_biharmonic_radius") {
    CHECK(proper_biharmonic_radius(BergerParameter<double>(0.5)) ==
          doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-12));
    CHECK(proper_biharmonic_radius(BergerParameter<double>(0.99)) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(2.0 - 0.9801))).epsilon(1e-12));
    // Approaches the great-circle radius 1/2 as eps -> 1.
    CHECK(proper_biharmonic_radius(BergerParameter<double>(0.999)) > 0.49);
    CHECK_THROWS_AS(proper_biharmonic_radius(BergerParameter<double>(1.0)), std::domain_error);
    CHECK_THROWS_AS(proper_biharmonic_radius(BergerParameter<double>(1.2)), std::domain_error);
}

TEST_CASE("scan_radii finds the classification radius") {
    SUBCASE("eps = 0.5") {
        const BergerParameter<double> p(0.5);
        const auto scan = scan_radii(p, 0.05, 0.49, 2048);
        REQUIRE(scan.roots.size() == 1);
        CHECK(std::abs(scan.roots[0] - 0.37796447) <= 1e-6);
    }
    SUBCASE("20-point eps grid matches the closed form to 1e-6") {
        for (int k = 1; k <= 20; ++k) {
            const double eps = 0.05 + 0.9 * k / 21.0;
            const BergerParameter<double> p(eps);
            const auto scan = scan_radii(p, 0.05, 0.49, 1024, 2);
            REQUIRE(scan.roots.size() == 1);
            CHECK(std::abs(scan.roots[0] - proper_biharmonic_radius(p)) <= 1e-6);
        }
    }
    SUBCASE("single sign change of the signed residual for eps^2 < 1") {
        const BergerParameter<double> p(0.7);
        int changes = 0;
        double prev = torus_normal_residual_signed(0.05, p);
        for (int i = 1; i < 4096; ++i) {
            const double r = 0.05 + (0.4999 - 0.05) * i / 4095.0;
            const double cur = torus_normal_residual_signed(r, p);
            if (prev * cur < 0.0) ++changes;
            prev = cur;
        }
        CHECK(changes == 1);
    }
    SUBCASE("no interior root for eps^2 >= 1") {
        for (double eps : {1.0, 1.2}) {
            const auto scan = scan_radii(BergerParameter<double>(eps), 0.05, 0.49, 2048);
            CHECK(scan.roots.empty());
        }
    }
    SUBCASE("input validation") {
        const BergerParameter<double> p(0.5);
        CHECK_THROWS_AS(scan_radii(p, 0.4, 0.2, 64), std::invalid_argument);
        CHECK_THROWS_AS(scan_radii(p, 0.1, 0.4, 8), std::invalid_argument);
        CHECK_THROWS_AS(scan_radii(p, 0.1, 0.6, 64), std::invalid_argument);
    }
}

TEST_CASE("equivalence of the two residual formulations for constant kg") {
    // cmc_residuals with H = kg/2, |A|^2 = kg^2 + 2 eps^2, a3 = 0 vanish exactly
    // when the torus ODE residuals vanish: both reduce to kg (kg^2 - (4-4eps^2)).
    for (double eps : {0.3, 0.6, 0.9}) {
        const BergerParameter<double> p(eps);
        for (double kg : {0.0, 0.5, 2.0 * std::sqrt(1.0 - eps * eps), 1.7}) {
            const auto cmc = cmc_residuals(kg / 2.0, kg * kg + 2.0 * eps * eps,
                                           FrameVector(1, 0, 0), p);
            const auto ode = torus_system_residuals(std::vector<double>(32, kg), p, 0.01);
            const bool cmc_zero = cmc.max_abs() <= Defaults::residual_zero;
            const bool ode_zero = ode.max_abs() <= Defaults::residual_zero;
            CHECK(cmc_zero == ode_zero);
            // r0 = -H (|A|^2 - (4 - 2 eps^2)) = -(kg/2) (kg^2 - (4 - 4 eps^2)).
            CHECK(cmc.r0 == doctest::Approx(-0.5 * kg * (kg * kg - p.curvature_constant)));
        }
    }
}

TEST_CASE("classify_cmc") {
    const FrameVector horiz(1, 0, 0);
    SUBCASE("minimal") {
        CHECK(classify_cmc({0.0, 2.0 * 0.25, horiz, false}, BergerParameter<double>(0.5)) ==
              ClassificationTag::minimal);
    }
    SUBCASE("umbilical round sphere") {
        CHECK(classify_cmc({1.0, 2.0, horiz, true}, BergerParameter<double>(1.0)) ==
              ClassificationTag::proper_biharmonic_sphere);
    }
    SUBCASE("umbilical sphere only exists at eps^2 = 1") {
        CHECK(classify_cmc({1.0, 2.0, horiz, true}, BergerParameter<double>(0.5)) ==
              ClassificationTag::not_biharmonic);
        CHECK(classify_cmc({1.0, 2.0, horiz, true}, BergerParameter<double>(-1.0)) ==
              ClassificationTag::proper_biharmonic_sphere);
    }
    SUBCASE("biharmonic Hopf torus at eps = 0.5") {
        const double kg = std::sqrt(3.0);
        CHECK(classify_cmc({kg / 2.0, kg * kg + 0.5, horiz, false}, BergerParameter<double>(0.5)) ==
              ClassificationTag::proper_biharmonic_torus);
    }
    SUBCASE("wrong radius torus is not biharmonic") {
        CHECK(classify_cmc({0.75, 1.5 * 1.5 + 0.5, horiz, false}, BergerParameter<double>(0.5)) ==
              ClassificationTag::not_biharmonic);
    }
    SUBCASE("no torus root above eps = 1") {
        const double kg = 1.0;
        CHECK(classify_cmc({kg / 2.0, kg * kg + 2.0 * 1.44, horiz, false},
                           BergerParameter<double>(1.2)) == ClassificationTag::not_biharmonic);
    }
    SUBCASE("a3 = +-1 with H != 0 is excluded for eps^2 != 1") {
        // Even with the normal equation tuned to vanish, the configuration is
        // impossible: span{E1, E2} is not integrable.
        const double eps = 0.5;
        const double shape = 8.0 - 6.0 * eps * eps;  // makes r0 = 0 at a3 = 1
        CHECK(classify_cmc({1.0, shape, FrameVector(0, 0, 1), false}, BergerParameter<double>(eps)) ==
              ClassificationTag::not_biharmonic);
    }
    SUBCASE("inconsistent descriptors rejected") {
        CHECK_THROWS_AS(classify_cmc({1.0, 1.0, horiz, true}, BergerParameter<double>(1.0)),
                        std::invalid_argument);
        CHECK_THROWS_AS(classify_cmc({2.0, 1.0, horiz, false}, BergerParameter<double>(1.0)),
                        std::invalid_argument);
        CHECK_THROWS_AS(classify_cmc({1.0, 2.0, FrameVector(1, 1, 1), false},
                                     BergerParameter<double>(1.0)),
                        std::invalid_argument);
    }
}

TEST_CASE("bisect cross-module: torus normal residual root at eps = 0.5") {
    const BergerParameter<double> p(0.5);
    const double r = bisect([&p](double x) { return torus_normal_residual_signed(x, p); }, 0.05,
                            0.49, 1e-12);
    CHECK(std::abs(r - 0.377964473) <= 1e-6);
}
