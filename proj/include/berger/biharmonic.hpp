#pragma once

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "berger/berger_core.hpp"
#include "berger/numerics.hpp"

// Residual evaluators for the biharmonic hypersurface system (constant mean
// curvature case) and for the Hopf-torus ODE system, plus the radius scan
// that rediscovers the classification by root finding.

namespace berger {

struct CmcResiduals {
    double r0;  // normal equation
    double r1;  // tangential, first component
    double r2;  // tangential, second component

    double max_abs() const { return std::max({std::abs(r0), std::abs(r1), std::abs(r2)}); }
};

// r0 = -H (|A|^2 - (4 - 2 eps^2) - (4 eps^2 - 4) a3^2),
// r1 = (4 eps^2 - 4) a1 a3 H, r2 = (4 eps^2 - 4) a2 a3 H.
inline CmcResiduals cmc_residuals(double H, double shape_norm_sq, const FrameVector& xi,
                                  const BergerParameter<double>& p) {
    if (std::abs(xi.squaredNorm() - 1.0) > 1e-9) {
        throw std::invalid_argument("cmc_residuals: xi must be a unit vector");
    }
    const double e2 = p.epsilon * p.epsilon;
    const double c = 4.0 * e2 - 4.0;
    CmcResiduals r;
    r.r0 = -H * (shape_norm_sq - (4.0 - 2.0 * e2) - c * xi[2] * xi[2]);
    r.r1 = c * xi[0] * xi[2] * H;
    r.r2 = c * xi[1] * xi[2] * H;
    return r;
}

struct TorusSystemResiduals {
    std::vector<double> e_normal;  // kg'' - kg (kg^2 - (4 - 4 eps^2))
    std::vector<double> e_t1;      // 3 kg' kg
    std::vector<double> e_t2;      // -eps kg'

    double max_abs() const {
        double m = 0.0;
        for (double v : e_normal) m = std::max(m, std::abs(v));
        for (double v : e_t1) m = std::max(m, std::abs(v));
        for (double v : e_t2) m = std::max(m, std::abs(v));
        return m;
    }
};

inline TorusSystemResiduals torus_system_residuals(const GridFunction& kg,
                                                   const BergerParameter<double>& p) {
    if (kg.values.size() < 5) {
        throw std::invalid_argument("torus_system_residuals: need at least 5 samples");
    }
    const GridFunction d1 = central_diff(kg, 1);
    const GridFunction d2 = central_diff(kg, 2);
    const double R = p.curvature_constant;
    TorusSystemResiduals out;
    const std::size_t n = kg.values.size();
    out.e_normal.resize(n);
    out.e_t1.resize(n);
    out.e_t2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = kg.values[i];
        out.e_normal[i] = d2.values[i] - k * (k * k - R);
        out.e_t1[i] = 3.0 * d1.values[i] * k;
        out.e_t2[i] = -p.epsilon * d1.values[i];
    }
    return out;
}

inline TorusSystemResiduals torus_system_residuals(const std::vector<double>& kg_samples,
                                                   const BergerParameter<double>& p, double step) {
    return torus_system_residuals(GridFunction{kg_samples, step}, p);
}

// r = 1 / (2 sqrt(2 - eps^2)), defined only for eps^2 < 1.
inline double proper_biharmonic_radius(const BergerParameter<double>& p) {
    if (p.epsilon * p.epsilon >= 1.0) {
        throw std::domain_error("proper_biharmonic_radius: no proper biharmonic Hopf torus for eps^2 >= 1");
    }
    return 1.0 / (2.0 * std::sqrt(2.0 - p.epsilon * p.epsilon));
}

struct ScanResult {
    std::vector<std::pair<double, double>> profile;  // (r, |e_normal|)
    std::vector<double> roots;                       // interior roots of the signed residual
    bool minimal_root_at_half = true;                // kg(1/2) = 0: the minimal boundary root
};

// Signed residual kg (kg^2 - (4 - 4 eps^2)) for the constant-curvature torus
// over a circle of radius r.
inline double torus_normal_residual_signed(double r, const BergerParameter<double>& p) {
    const double kg = std::sqrt(std::max(1.0 / (r * r) - 4.0, 0.0));
    return kg * (kg * kg - p.curvature_constant);
}

// Scans the radius interval, bisecting each sign change of the signed
// residual to a 1e-10 bracket. For eps^2 < 1 there is exactly one interior
// root; the kg = 0 root at r = 1/2 is reported by the flag, not in `roots`.
inline ScanResult scan_radii(const BergerParameter<double>& p, double r_min, double r_max,
                             int samples, unsigned threads = 1) {
    if (!(0.0 < r_min) || !(r_min < r_max) || r_max > 0.5 + Defaults::algebraic) {
        throw std::invalid_argument("scan_radii: need 0 < rMin < rMax <= 1/2");
    }
    if (samples < 32) throw std::invalid_argument("scan_radii: need at least 32 samples");
    ScanResult out;
    out.profile.resize(samples);
    const double dr = (r_max - r_min) / (samples - 1);
    std::vector<double> signed_res(samples);
    parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
        const double r = r_min + static_cast<double>(i) * dr;
        const double s = torus_normal_residual_signed(r, p);
        signed_res[i] = s;
        out.profile[i] = {r, std::abs(s)};
    });
    for (int i = 0; i + 1 < samples; ++i) {
        const double lo = r_min + i * dr;
        const double hi = lo + dr;
        if (signed_res[i] == 0.0) {
            out.roots.push_back(lo);
            continue;
        }
        if (signed_res[i] * signed_res[i + 1] < 0.0) {
            out.roots.push_back(bisect([&p](double r) { return torus_normal_residual_signed(r, p); },
                                       lo, hi, 1e-10));
        }
    }
    // The kg = 0 zero at the boundary r = 1/2 is the minimal torus, reported
    // by the flag rather than as an interior root.
    if (signed_res[samples - 1] == 0.0 && r_max < 0.5 - Defaults::algebraic) {
        out.roots.push_back(r_max);
    }
    return out;
}

enum class ClassificationTag {
    minimal,
    proper_biharmonic_sphere,
    proper_biharmonic_torus,
    not_biharmonic,
};

inline const char* to_string(ClassificationTag t) {
    switch (t) {
        case ClassificationTag::minimal: return "minimal";
        case ClassificationTag::proper_biharmonic_sphere: return "proper_biharmonic_sphere";
        case ClassificationTag::proper_biharmonic_torus: return "proper_biharmonic_torus";
        case ClassificationTag::not_biharmonic: return "not_biharmonic";
    }
    return "unknown";
}

struct CmcDescriptor {
    double H;
    double shape_norm_sq;
    FrameVector xi;
    bool umbilical = false;
};

// Classification of a CMC surface descriptor. Umbilical surfaces are assumed
// to have constant H (taken as given); a totally umbilical one satisfies
// |A|^2 = 2 H^2. The a3 = +-1 configuration with H != 0 is excluded for
// eps^2 != 1: the bracket [E1, E2] = 2 eps E3 obstructs integrability of
// span{E1, E2}.
inline ClassificationTag classify_cmc(const CmcDescriptor& d, const BergerParameter<double>& p) {
    const double tol = Defaults::residual_zero;
    if (std::abs(d.xi.squaredNorm() - 1.0) > 1e-9) {
        throw std::invalid_argument("classify_cmc: xi must be a unit vector");
    }
    if (d.shape_norm_sq < 2.0 * d.H * d.H - 1e-9) {
        throw std::invalid_argument("classify_cmc: |A|^2 < 2 H^2 is impossible");
    }
    if (d.umbilical && std::abs(d.shape_norm_sq - 2.0 * d.H * d.H) > 1e-9) {
        throw std::invalid_argument("classify_cmc: umbilical flag inconsistent with |A|^2 != 2 H^2");
    }
    const double e2 = p.epsilon * p.epsilon;
    const bool round = std::abs(e2 - 1.0) <= tol;
    if (std::abs(d.H) <= tol) return ClassificationTag::minimal;
    if (d.umbilical) {
        if (!round) return ClassificationTag::not_biharmonic;
        const CmcResiduals r = cmc_residuals(d.H, d.shape_norm_sq, d.xi, p);
        return r.max_abs() <= tol ? ClassificationTag::proper_biharmonic_sphere
                                  : ClassificationTag::not_biharmonic;
    }
    const double a3 = d.xi[2];
    if (!round && std::abs(std::abs(a3) - 1.0) <= tol) return ClassificationTag::not_biharmonic;
    const CmcResiduals r = cmc_residuals(d.H, d.shape_norm_sq, d.xi, p);
    if (r.max_abs() <= tol && std::abs(a3) <= tol && e2 < 1.0) {
        return ClassificationTag::proper_biharmonic_torus;
    }
    return ClassificationTag::not_biharmonic;
}

}  // namespace berger
