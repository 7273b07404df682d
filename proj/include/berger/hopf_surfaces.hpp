#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "berger/berger_core.hpp"
#include "berger/hopf_fibration.hpp"
#include "berger/numerics.hpp"

// Curves on the base sphere S^2(1/2) given by geodesic curvature, their
// horizontal lifts to S^3, and the second fundamental form of the Hopf torus
// over them. Orientation convention along a lift with tangent a E1 + b E2:
// the unit normal is xi = b E1 - a E2, which gives tau_g = -eps.

namespace berger {

struct BaseCurveSpec {
    std::function<double(double)> kg_fn;
    bool is_constant = true;
    double kg_const = 0.0;
    std::optional<double> radius;  // Euclidean radius of the base circle, constant case

    double kg(double s) const { return is_constant ? kg_const : kg_fn(s); }

    // Curvature of the curve as a space curve; normal curvature on S^2(1/2) is 2.
    double euclidean_curvature(double s) const {
        const double k = kg(s);
        return std::sqrt(k * k + 4.0);
    }

    static BaseCurveSpec constant(double kg) {
        BaseCurveSpec spec;
        spec.is_constant = true;
        spec.kg_const = kg;
        spec.radius = 1.0 / std::sqrt(kg * kg + 4.0);
        return spec;
    }

    static BaseCurveSpec function(std::function<double(double)> kg) {
        BaseCurveSpec spec;
        spec.is_constant = false;
        spec.kg_fn = std::move(kg);
        return spec;
    }
};

// A circle of Euclidean radius r on S^2(1/2) has k = 1/r and kg = sqrt(1/r^2 - 4).
inline BaseCurveSpec circle_from_radius(double r) {
    if (!(r > 0.0) || r > 0.5 + Defaults::algebraic) {
        throw std::invalid_argument("circle_from_radius: radius must lie in (0, 1/2]");
    }
    const double ksq = 1.0 / (r * r) - 4.0;
    BaseCurveSpec spec = BaseCurveSpec::constant(std::sqrt(std::max(ksq, 0.0)));
    spec.radius = r;
    return spec;
}

struct CurveState {
    SpherePoint x;
    double a = 1.0;
    double b = 0.0;

    AmbientTangent tangent() const {
        const auto f = frame_fields(x);
        return a * f[1] + b * f[2];
    }
};

struct TorusGeometry {
    double H;
    double h11, h12, h21, h22;
    double shape_norm_sq;
    double tau_g;
    double a3_normal;
};

// H = kg/2, h = [[kg, eps], [eps, 0]] in the adapted frame, |A|^2 = kg^2 + 2 eps^2.
inline TorusGeometry torus_geometry(const BaseCurveSpec& spec, const BergerParameter<double>& p,
                                    double s) {
    const double kg = spec.kg(s);
    const double eps = p.epsilon;
    TorusGeometry g;
    g.H = 0.5 * kg;
    g.h11 = kg;
    g.h12 = eps;
    g.h21 = eps;
    g.h22 = 0.0;
    g.shape_norm_sq = kg * kg + 2.0 * eps * eps;
    g.tau_g = -eps;
    g.a3_normal = 0.0;
    return g;
}

namespace detail {

using LiftState = Eigen::Matrix<double, 6, 1>;

inline LiftState pack(const CurveState& c) {
    LiftState y;
    y << c.x[0], c.x[1], c.x[2], c.x[3], c.a, c.b;
    return y;
}

inline CurveState unpack(const LiftState& y) {
    CurveState c;
    c.x = SpherePoint(y[0], y[1], y[2], y[3]);
    c.a = y[4];
    c.b = y[5];
    return c;
}

// x' = a X2(x) + b X3(x), a' = kg b, b' = -kg a. The E3 terms of the
// covariant acceleration cancel, which the covariant oracle below rechecks.
inline LiftState lift_derivative(const BaseCurveSpec& spec, double s, const LiftState& y) {
    const SpherePoint x(y[0], y[1], y[2], y[3]);
    const auto f = frame_fields(x);
    const AmbientTangent v = y[4] * f[1] + y[5] * f[2];
    const double kg = spec.kg(s);
    LiftState d;
    d << v[0], v[1], v[2], v[3], kg * y[5], -kg * y[4];
    return d;
}

inline void renormalize(LiftState& y) {
    const double xn = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
    y[0] /= xn;
    y[1] /= xn;
    y[2] /= xn;
    y[3] /= xn;
    const double tn = std::sqrt(y[4] * y[4] + y[5] * y[5]);
    y[4] /= tn;
    y[5] /= tn;
}

// Advance by arclength h with n RK4 substeps and per-substep renormalization.
inline CurveState advance(const BaseCurveSpec& spec, const CurveState& c, double s, double h,
                          int substeps = 4) {
    LiftState y = pack(c);
    const double dh = h / substeps;
    auto f = [&spec](double t, const LiftState& yy) { return lift_derivative(spec, t, yy); };
    for (int i = 0; i < substeps; ++i) {
        y = rk4_step(f, s + i * dh, y, dh);
        renormalize(y);
    }
    return unpack(y);
}

// Frame components of a tangent vector with respect to the g_eps-orthonormal
// frame {E1, E2, E3}.
inline FrameVector frame_components(const SpherePoint& x, const AmbientTangent& v, double eps) {
    const auto f = frame_fields(x);
    return FrameVector(v.dot(f[1]), v.dot(f[2]), eps * v.dot(f[0]));
}

// J v = (-v2, v1, -v4, v3); rotating both points and vectors by exp(theta J)
// realizes the exact fiber flow and its differential.
inline AmbientTangent rotate_vector(const AmbientTangent& v, double theta) {
    const AmbientTangent jv(-v[1], v[0], -v[3], v[2]);
    return std::cos(theta) * v + std::sin(theta) * jv;
}

}  // namespace detail

// Integrates the horizontal Frenet lift; returns steps+1 states at spacing
// length/steps, with x and (a, b) renormalized every step.
inline std::vector<CurveState> frenet_integrate(const BaseCurveSpec& spec,
                                                const BergerParameter<double>& /*p*/, int steps,
                                                double length,
                                                const CurveState& start = CurveState{SpherePoint(1, 0, 0, 0), 1.0, 0.0}) {
    if (steps < 16) throw std::invalid_argument("frenet_integrate: need at least 16 steps");
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("frenet_integrate: length must be positive and finite");
    }
    const double h = length / steps;
    std::vector<CurveState> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(start);
    for (int i = 0; i < steps; ++i) {
        out.push_back(detail::advance(spec, out.back(), i * h, h, 1));
    }
    return out;
}

// Finite-difference geodesic curvature of a base curve sampled at uniform
// arclength spacing: kg = <beta'', beta' x N> with N = beta / |beta| outward.
inline std::vector<double> measured_geodesic_curvature(const std::vector<BasePoint>& samples,
                                                       double arclength_step) {
    if (samples.size() < 5) {
        throw std::invalid_argument("measured_geodesic_curvature: need at least 5 samples");
    }
    if (!(arclength_step > 0.0)) {
        throw std::invalid_argument("measured_geodesic_curvature: step must be > 0");
    }
    const std::size_t n = samples.size();
    std::array<GridFunction, 3> comp;
    for (int c = 0; c < 3; ++c) {
        comp[c].step = arclength_step;
        comp[c].values.resize(n);
        for (std::size_t i = 0; i < n; ++i) comp[c].values[i] = samples[i][c];
    }
    std::array<GridFunction, 3> vel, acc;
    for (int c = 0; c < 3; ++c) {
        vel[c] = central_diff(comp[c], 1);
        acc[c] = central_diff(comp[c], 2);
    }
    std::vector<double> kg(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d v(vel[0].values[i], vel[1].values[i], vel[2].values[i]);
        const Eigen::Vector3d a(acc[0].values[i], acc[1].values[i], acc[2].values[i]);
        const Eigen::Vector3d normal = 2.0 * samples[i];  // N = beta / (1/2)
        kg[i] = a.dot(v.cross(normal));
    }
    return kg;
}

// Max defect of nabla_{gamma'} gamma' = kg xi at the given state, with the
// tangent recomputed from position samples (independent of the stored a, b).
inline double covariant_acceleration_defect(const BaseCurveSpec& spec,
                                            const BergerParameter<double>& p, const CurveState& c,
                                            double s, double h = 1e-4) {
    const double eps = p.epsilon;
    const auto conn = berger_connection_closed_form(BergerParameter<double>(eps));
    // Five nearby states; frame components of the tangent at the inner three.
    std::array<CurveState, 5> pts;
    pts[2] = c;
    pts[3] = detail::advance(spec, c, s, h);
    pts[4] = detail::advance(spec, pts[3], s + h, h);
    pts[1] = detail::advance(spec, c, s, -h);
    pts[0] = detail::advance(spec, pts[1], s - h, -h);
    std::array<FrameVector, 3> tang;
    for (int j = 0; j < 3; ++j) {
        const AmbientTangent v = (pts[j + 2].x - pts[j].x) / (2.0 * h);
        tang[j] = detail::frame_components(pts[j + 1].x, v, eps);
    }
    const FrameVector dv = (tang[2] - tang[0]) / (2.0 * h);
    const FrameVector v0 = tang[1];
    FrameVector gamma_term = FrameVector::Zero();
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int m = 0; m < 3; ++m) gamma_term[m] += v0[j] * v0[k] * conn.gamma[j][k][m];
    const FrameVector cov = dv + gamma_term;
    const FrameVector expected = spec.kg(s) * FrameVector(v0[1], -v0[0], 0.0);
    return (cov - expected).cwiseAbs().maxCoeff();
}

struct TorusShapeAudit {
    double h11, h12, h21, h22;
    double shape_norm_sq;
};

// Measures the second fundamental form of the embedded Hopf torus by finite
// differences of the unit normal, along the lifted curve and along the fiber.
inline TorusShapeAudit measured_torus_shape(const BaseCurveSpec& spec,
                                            const BergerParameter<double>& p, const CurveState& c,
                                            double s, double h = 1e-4) {
    const double eps = p.epsilon;
    const auto conn = berger_connection_closed_form(BergerParameter<double>(eps));
    const auto f0 = frame_fields(c.x);

    // --- Curve direction: tangent and normal components from position samples.
    std::array<CurveState, 5> pts;
    pts[2] = c;
    pts[3] = detail::advance(spec, c, s, h);
    pts[4] = detail::advance(spec, pts[3], s + h, h);
    pts[1] = detail::advance(spec, c, s, -h);
    pts[0] = detail::advance(spec, pts[1], s - h, -h);
    std::array<FrameVector, 3> xi;   // normal components at the inner three points
    std::array<FrameVector, 3> tang;
    for (int j = 0; j < 3; ++j) {
        const AmbientTangent v = (pts[j + 2].x - pts[j].x) / (2.0 * h);
        FrameVector t = detail::frame_components(pts[j + 1].x, v, eps);
        const double hn = std::hypot(t[0], t[1]);
        t[0] /= hn;
        t[1] /= hn;
        tang[j] = t;
        xi[j] = FrameVector(t[1], -t[0], 0.0);  // xi = b E1 - a E2
    }
    const FrameVector v1 = tang[1];
    const FrameVector dxi_ds = (xi[2] - xi[0]) / (2.0 * h);
    FrameVector gamma_curve = FrameVector::Zero();
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int m = 0; m < 3; ++m) gamma_curve[m] += v1[j] * xi[1][k] * conn.gamma[j][k][m];
    const FrameVector nabla1 = dxi_ds + gamma_curve;

    // --- Fiber direction: exact rotation of the point and of the ambient normal.
    const AmbientTangent xi_amb = xi[1][0] * f0[1] + xi[1][1] * f0[2];
    auto xi_components_at = [&](double tau) {
        const double theta = tau / eps;  // E3 has g_eps-unit speed at dtheta/dtau = 1/eps
        const SpherePoint y = fiber_rotate(c.x, theta);
        const AmbientTangent xiv = detail::rotate_vector(xi_amb, theta);
        return detail::frame_components(y, xiv, eps);
    };
    const FrameVector xp = xi_components_at(h);
    const FrameVector xm = xi_components_at(-h);
    const FrameVector dxi_dtau = (xp - xm) / (2.0 * h);
    FrameVector gamma_fiber = FrameVector::Zero();
    for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m) gamma_fiber[m] += xi[1][k] * conn.gamma[2][k][m];
    const FrameVector nabla2 = dxi_dtau + gamma_fiber;

    TorusShapeAudit audit;
    audit.h11 = -nabla1.dot(v1);
    audit.h12 = -nabla1[2];
    audit.h21 = -nabla2.dot(v1);
    audit.h22 = -nabla2[2];
    audit.shape_norm_sq = audit.h11 * audit.h11 + audit.h12 * audit.h12 +
                          audit.h21 * audit.h21 + audit.h22 * audit.h22;
    return audit;
}

// Finite-difference commutator of the lift flow and the fiber flow on the
// torus; returns max(|dx|, |d(a,b)|)/h^2 over the four-leg loop. Zero bracket
// means the two surface directions commute.
inline double bracket_commutator_defect(const BaseCurveSpec& spec, const BergerParameter<double>& p,
                                        const CurveState& c, double h = 1e-2) {
    if (!spec.is_constant) {
        throw std::invalid_argument("bracket_commutator_defect: constant-curvature spec required");
    }
    const double eps = p.epsilon;
    auto flow_lift = [&](const CurveState& st, double t) { return detail::advance(spec, st, 0.0, t, 8); };
    auto flow_fiber = [&](const CurveState& st, double t) {
        const double theta = t / eps;
        CurveState out;
        out.x = fiber_rotate(st.x, theta);
        const auto f = frame_fields(st.x);
        const AmbientTangent v = st.a * f[1] + st.b * f[2];
        const AmbientTangent vr = detail::rotate_vector(v, theta);
        const auto fr = frame_fields(out.x);
        out.a = vr.dot(fr[1]);
        out.b = vr.dot(fr[2]);
        return out;
    };
    CurveState loop = flow_fiber(flow_lift(flow_fiber(flow_lift(c, h), h), -h), -h);
    const double dx = (loop.x - c.x).cwiseAbs().maxCoeff();
    const double dab = std::max(std::abs(loop.a - c.a), std::abs(loop.b - c.b));
    return std::max(dx, dab) / (h * h);
}

}  // namespace berger
