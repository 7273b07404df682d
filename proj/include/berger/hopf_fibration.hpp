#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <stdexcept>

#include "berger/berger_core.hpp"
#include "berger/numerics.hpp"

// The Hopf submersion S^3 -> S^2(1/2), the parallelizing fields X1, X2, X3,
// and the vertical/horizontal splitting of the Berger metric.

namespace berger {

using SpherePoint = Eigen::Vector4d;   // |x| = 1
using BasePoint = Eigen::Vector3d;     // |p| = 1/2
using AmbientTangent = Eigen::Vector4d;

inline bool on_unit_sphere(const SpherePoint& x, double tol = Defaults::algebraic) {
    return std::abs(x.squaredNorm() - 1.0) <= tol;
}

inline bool on_base_sphere(const BasePoint& p, double tol = Defaults::algebraic) {
    return std::abs(p.squaredNorm() - 0.25) <= tol;
}

// psi(x) = 1/2 (2x1x3 + 2x2x4, 2x2x3 - 2x1x4, x1^2 + x2^2 - x3^2 - x4^2).
inline BasePoint hopf_map(const SpherePoint& x, double tol = 1e-9) {
    if (std::abs(x.squaredNorm() - 1.0) > tol) {
        throw std::invalid_argument("hopf_map: input not on the unit 3-sphere");
    }
    return BasePoint(x[0] * x[2] + x[1] * x[3], x[1] * x[2] - x[0] * x[3],
                     0.5 * (x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3]));
}

// The complex-notation map without the conjugation, psi(z,w) = 1/2 (2zw,
// |z|^2 - |w|^2), kept only as a diagnostic: it is not constant on fibers.
inline BasePoint hopf_map_no_conjugation(const SpherePoint& x) {
    return BasePoint(x[0] * x[2] - x[1] * x[3], x[0] * x[3] + x[1] * x[2],
                     0.5 * (x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3]));
}

// X1 is vertical; X2, X3 are horizontal. All three are unit in the round
// metric and mutually orthogonal.
inline AmbientTangent fiber_field(const SpherePoint& x) {
    return AmbientTangent(-x[1], x[0], -x[3], x[2]);  // X1
}

inline std::array<AmbientTangent, 3> frame_fields(const SpherePoint& x) {
    return {AmbientTangent(-x[1], x[0], -x[3], x[2]),
            AmbientTangent(-x[3], -x[2], x[1], x[0]),
            AmbientTangent(-x[2], x[3], x[0], -x[1])};
}

// Exact flow of X1: X1(x) = J x with J^2 = -I, so the fiber through x is
// cos(theta) x + sin(theta) J x.
inline SpherePoint fiber_rotate(const SpherePoint& x, double theta) {
    return std::cos(theta) * x + std::sin(theta) * fiber_field(x);
}

struct MetricSplit {
    AmbientTangent vertical;
    AmbientTangent horizontal;
    double g_eps_norm_sq;
};

inline MetricSplit metric_split(const SpherePoint& x, const AmbientTangent& v,
                                const BergerParameter<double>& p) {
    const AmbientTangent x1 = fiber_field(x);
    const double c = v.dot(x1);
    MetricSplit out;
    out.vertical = c * x1;
    out.horizontal = v - out.vertical;
    out.g_eps_norm_sq = out.horizontal.squaredNorm() + p.epsilon * p.epsilon * c * c;
    return out;
}

// tau(pi) = -d pi (nabla_{E3} E3); returns the frame components of
// nabla_{E3} E3, which vanish iff the submersion is harmonic.
template <typename S>
std::array<S, 3> submersion_tension(const ConnectionTable<S>& conn, int vertical_index = 2) {
    if (vertical_index < 0 || vertical_index > 2) {
        throw std::invalid_argument("submersion_tension: frame index out of range");
    }
    return {conn.gamma[vertical_index][vertical_index][0],
            conn.gamma[vertical_index][vertical_index][1],
            conn.gamma[vertical_index][vertical_index][2]};
}

// Central-difference differential of the Hopf map along v, stepping on the
// sphere (renormalize after stepping).
inline Eigen::Vector3d map_differential(const SpherePoint& x, const AmbientTangent& v,
                                        double h = Defaults::map_differential_step) {
    const SpherePoint xp = (x + h * v).normalized();
    const SpherePoint xm = (x - h * v).normalized();
    return (hopf_map(xp) - hopf_map(xm)) / (2.0 * h);
}

}  // namespace berger
