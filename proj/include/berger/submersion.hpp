#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "berger/berger_core.hpp"
#include "berger/numerics.hpp"

// Integrability data of a Riemannian submersion from the Berger sphere with
// e3 vertical, and numeric residual evaluators for the bracket relations,
// Jacobi identities, frame-curvature relations and the biharmonicity system.
// Directional derivatives are caller-supplied values: the analysis this
// library certifies reduces to constants, so fields are thin value records,
// not a PDE layer.

namespace berger::submersion {

// A scalar quantity with optional first directional derivatives e_i(.) and
// repeated second derivatives e_i(e_i(.)). Constants have all derivatives
// zero; field mode requires the oracles it uses to be supplied explicitly.
struct Field {
    double value = 0.0;
    std::optional<Eigen::Vector3d> grad;
    std::optional<Eigen::Vector3d> grad2;
    bool is_constant = true;

    static Field constant(double v) {
        Field f;
        f.value = v;
        return f;
    }
    static Field field(double v, const Eigen::Vector3d& g,
                       std::optional<Eigen::Vector3d> g2 = std::nullopt) {
        Field f;
        f.value = v;
        f.grad = g;
        f.grad2 = g2;
        f.is_constant = false;
        return f;
    }

    double d(int i) const {
        if (is_constant) return 0.0;
        if (!grad) throw std::invalid_argument("Field: missing first-derivative oracle");
        return (*grad)[i];
    }
    double dd(int i) const {
        if (is_constant) return 0.0;
        if (!grad2) throw std::invalid_argument("Field: missing second-derivative oracle");
        return (*grad2)[i];
    }
};

struct IntegrabilityData {
    Field f1, f2, f3, kappa1, kappa2, sigma;

    static IntegrabilityData constants(double f1, double f2, double f3, double kappa1,
                                       double kappa2, double sigma) {
        IntegrabilityData d;
        d.f1 = Field::constant(f1);
        d.f2 = Field::constant(f2);
        d.f3 = Field::constant(f3);
        d.kappa1 = Field::constant(kappa1);
        d.kappa2 = Field::constant(kappa2);
        d.sigma = Field::constant(sigma);
        return d;
    }
};

// Data of the canonical Hopf submersion in the frame e_i = E_i (generalized:
// f3 = -2/eps is nonzero, the frame is not adapted).
inline IntegrabilityData hopf_integrability_data(const BergerParameter<double>& p) {
    return IntegrabilityData::constants(0.0, 0.0, -2.0 / p.epsilon, 0.0, 0.0, -p.epsilon);
}

// Rows are e_i in the E_j basis; orthogonal since both frames are
// g_eps-orthonormal.
struct FrameCoefficients {
    Eigen::Matrix3d a = Eigen::Matrix3d::Identity();

    bool orthogonal(double tol = Defaults::algebraic) const {
        return ((a * a.transpose()) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol;
    }
};

// The three Jacobi identities of the bracket relations; zero for consistent
// integrability data.
inline std::array<double, 3> jacobi_residuals(const IntegrabilityData& d) {
    const double f1 = d.f1.value, f2 = d.f2.value, f3 = d.f3.value;
    const double k1 = d.kappa1.value, k2 = d.kappa2.value;
    return {
        d.f1.d(2) + (k1 + f2) * f3 - d.f3.d(0),
        d.f2.d(2) + (k2 - f1) * f3 - d.f3.d(1),
        2.0 * d.sigma.d(2) + k1 * f1 + k2 * f2 + d.kappa1.d(1) - d.kappa2.d(0),
    };
}

// LHS - RHS for the seven frame-curvature relations, with R = 4 - 4 eps^2 and
// a_i^3 the E3-components of the frame.
inline std::array<double, 7> curvature_residuals(const IntegrabilityData& d,
                                                 const FrameCoefficients& c,
                                                 const BergerParameter<double>& p) {
    if (!c.orthogonal()) {
        throw std::invalid_argument("curvature_residuals: frame coefficients not orthogonal");
    }
    const double f1 = d.f1.value, f2 = d.f2.value, f3 = d.f3.value;
    const double k1 = d.kappa1.value, k2 = d.kappa2.value, s = d.sigma.value;
    const double R = p.curvature_constant;
    const double e2 = p.epsilon * p.epsilon;
    const double a13 = c.a(0, 2), a23 = c.a(1, 2), a33 = c.a(2, 2);
    return {
        (-d.sigma.d(0) + 2.0 * k1 * s) - (-a23 * a33 * R),
        (d.kappa1.d(0) + s * s - k1 * k1 + k2 * f1) - (a23 * a23 * R + e2),
        (d.kappa2.d(0) - d.sigma.d(2) - k1 * f1 - k1 * k2) - (-a13 * a23 * R),
        (d.f2.d(0) - d.f1.d(1) - f1 * f1 - f2 * f2 + 2.0 * f3 * s - 3.0 * s * s) -
            (a33 * a33 * R + e2),
        (-d.sigma.d(1) + 2.0 * k2 * s) - (a13 * a33 * R),
        (d.kappa1.d(1) + d.sigma.d(2) + k2 * f2 - k1 * k2) - (-a13 * a23 * R),
        (s * s + d.kappa2.d(1) - k1 * f2 - k2 * k2) - (a13 * a13 * R + e2),
    };
}

// Gauss curvature of the base: K = e1(f2) - e2(f1) - f1^2 - f2^2 + 2 f3 sigma.
inline double base_gauss_curvature(const IntegrabilityData& d) {
    return d.f2.d(0) - d.f1.d(1) - d.f1.value * d.f1.value - d.f2.value * d.f2.value +
           2.0 * d.f3.value * d.sigma.value;
}

// Laplacian on functions for the adapted frame:
// Delta u = sum_i e_i(e_i(u)) - (f2 + kappa1) e1(u) - (kappa2 - f1) e2(u).
inline double frame_laplacian(const Field& u, const IntegrabilityData& d) {
    return u.dd(0) + u.dd(1) + u.dd(2) - (d.f2.value + d.kappa1.value) * u.d(0) -
           (d.kappa2.value - d.f1.value) * u.d(1);
}

// The two components of the bitension system for an adapted frame; (0, 0)
// iff the submersion is biharmonic.
inline std::array<double, 2> submersion_bitension(const IntegrabilityData& d, double gauss_k) {
    const double f1 = d.f1.value, f2 = d.f2.value;
    const double k1 = d.kappa1.value, k2 = d.kappa2.value;
    const double div_f = (d.f1.d(0) - k1 * f1) + (d.f2.d(1) - k2 * f2);
    const double fsq = f1 * f1 + f2 * f2;
    const double t1 = -frame_laplacian(d.kappa1, d) -
                      2.0 * (f1 * d.kappa2.d(0) + f2 * d.kappa2.d(1)) - k2 * div_f +
                      k1 * (-gauss_k + fsq);
    const double t2 = -frame_laplacian(d.kappa2, d) +
                      2.0 * (f1 * d.kappa1.d(0) + f2 * d.kappa1.d(1)) + k1 * div_f +
                      k2 * (-gauss_k + fsq);
    return {t1, t2};
}

// State of the adapted-frame relations: the two E3-components with their
// directional derivatives, plus the scalar data entering the eight relations.
struct AdaptedState {
    Field a23;
    Field a33;
    double sigma = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
};

inline std::array<double, 8> adapted_relations_residuals(const AdaptedState& st,
                                                         const BergerParameter<double>& p) {
    const double a23 = st.a23.value, a33 = st.a33.value;
    if (a23 * a23 + a33 * a33 > 1.0 + 1e-9) {
        throw std::invalid_argument("adapted_relations_residuals: (a23)^2 + (a33)^2 must be <= 1");
    }
    const double eps = p.epsilon;
    return {
        st.a23.d(0) + (st.sigma + eps) * a33,
        st.a33.d(0) - (st.sigma + eps) * a23,
        st.a23.d(1),
        st.a33.d(1),
        st.a23.d(2) + st.kappa2 * a33,
        st.a33.d(2) - st.kappa2 * a23,
        st.kappa1 * a33 - (st.sigma - eps - st.f3) * a23,
        st.f2 * a23 - (st.sigma + eps) * a33,
    };
}

}  // namespace berger::submersion
