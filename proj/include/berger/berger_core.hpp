#pragma once

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <utility>

#include "berger/numerics.hpp"
#include "berger/scalar.hpp"

// Frame algebra of the Berger sphere. All tensors are expressed in the
// orthonormal frame {E1, E2, E3} (code indices 0,1,2); structure constants
// are constant, so the Levi-Civita connection follows from the Koszul
// formula without derivatives.

namespace berger {

using FrameVector = Eigen::Vector3d;

template <typename S>
struct BergerParameter {
    S epsilon;
    S curvature_constant;  // R = 4 - 4 eps^2

    explicit BergerParameter(const S& eps)
        : epsilon(eps), curvature_constant(S(4) - S(4) * eps * eps) {
        if (eps == S(0)) throw std::invalid_argument("BergerParameter: epsilon must be nonzero");
    }
};

template <typename S>
struct StructureConstants {
    // c[i][j][k]: [E_i, E_j] = sum_k c[i][j][k] E_k
    std::array<std::array<std::array<S, 3>, 3>, 3> c{};

    bool antisymmetric(double tol = Defaults::algebraic) const {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    if (!scalar_traits<S>::near_zero(c[i][j][k] + c[j][i][k], tol)) return false;
        return true;
    }
};

template <typename S>
struct ConnectionTable {
    // gamma[i][j][k] = < nabla_{E_i} E_j, E_k >
    std::array<std::array<std::array<S, 3>, 3>, 3> gamma{};

    bool metric_compatible(double tol = Defaults::algebraic) const {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    if (!scalar_traits<S>::near_zero(gamma[i][j][k] + gamma[i][k][j], tol)) return false;
        return true;
    }
};

template <typename S>
struct CurvatureTable {
    // riem[i][j][k][l] = g(R(E_k, E_l) E_j, E_i)
    std::array<std::array<std::array<std::array<S, 3>, 3>, 3>, 3> riem{};
    std::array<std::array<S, 3>, 3> ricci{};
};

template <typename S>
StructureConstants<S> structure_constants(const BergerParameter<S>& p) {
    StructureConstants<S> sc;
    const S two_eps = S(2) * p.epsilon;
    const S two_over_eps = S(2) / p.epsilon;
    sc.c[0][1][2] = two_eps;
    sc.c[1][0][2] = -two_eps;
    sc.c[1][2][0] = two_over_eps;
    sc.c[2][1][0] = -two_over_eps;
    sc.c[2][0][1] = two_over_eps;
    sc.c[0][2][1] = -two_over_eps;
    return sc;
}

// Koszul formula for an orthonormal frame with constant brackets:
// 2 <nabla_i E_j, E_k> = c[i][j][k] - c[j][k][i] + c[k][i][j].
template <typename S>
ConnectionTable<S> levi_civita(const StructureConstants<S>& sc) {
    if (!sc.antisymmetric()) {
        throw std::invalid_argument("levi_civita: structure constants violate antisymmetry");
    }
    ConnectionTable<S> conn;
    const S half = S(1) / S(2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                conn.gamma[i][j][k] = half * (sc.c[i][j][k] - sc.c[j][k][i] + sc.c[k][i][j]);
    return conn;
}

// The closed-form connection of the Berger frame, used to validate the
// Koszul output.
template <typename S>
ConnectionTable<S> berger_connection_closed_form(const BergerParameter<S>& p) {
    ConnectionTable<S> conn;
    const S eps = p.epsilon;
    const S mixed = (S(2) - eps * eps) / eps;
    conn.gamma[0][1][2] = eps;
    conn.gamma[0][2][1] = -eps;
    conn.gamma[1][0][2] = -eps;
    conn.gamma[1][2][0] = eps;
    conn.gamma[2][0][1] = mixed;
    conn.gamma[2][1][0] = -mixed;
    return conn;
}

// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z evaluated
// on frame triples; riem[i][j][k][l] = g(R(E_k,E_l)E_j, E_i).
template <typename S>
CurvatureTable<S> riemann_tensor(const ConnectionTable<S>& conn, const StructureConstants<S>& sc) {
    if (!conn.metric_compatible()) {
        throw std::invalid_argument("riemann_tensor: connection not metric-compatible");
    }
    CurvatureTable<S> curv;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int j = 0; j < 3; ++j) {
                std::array<S, 3> comp{};
                for (int n = 0; n < 3; ++n) {
                    S acc = S(0);
                    for (int m = 0; m < 3; ++m) {
                        acc += conn.gamma[l][j][m] * conn.gamma[k][m][n];
                        acc -= conn.gamma[k][j][m] * conn.gamma[l][m][n];
                        acc -= sc.c[k][l][m] * conn.gamma[m][j][n];
                    }
                    comp[n] = acc;
                }
                for (int i = 0; i < 3; ++i) curv.riem[i][j][k][l] = comp[i];
            }
    return curv;
}

// Fills the Ricci part by the frame trace ricci[i][j] = sum_k riem[j][k][i][k].
template <typename S>
CurvatureTable<S> ricci(CurvatureTable<S> curv) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            S acc = S(0);
            for (int k = 0; k < 3; ++k) acc += curv.riem[j][k][i][k];
            curv.ricci[i][j] = acc;
        }
    return curv;
}

// Second route for the trace: evaluate the curvature operator directly and
// contract sum_k g(R(E_i, E_k) E_k, E_j). Used to cross-check the table trace.
template <typename S>
std::array<std::array<S, 3>, 3> ricci_from_operator(const ConnectionTable<S>& conn,
                                                    const StructureConstants<S>& sc) {
    std::array<std::array<S, 3>, 3> ric{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            S acc = S(0);
            for (int k = 0; k < 3; ++k) {
                // n-th component of R(E_i, E_k) E_k, dotted with E_j.
                S comp = S(0);
                for (int m = 0; m < 3; ++m) {
                    comp += conn.gamma[k][k][m] * conn.gamma[i][m][j];
                    comp -= conn.gamma[i][k][m] * conn.gamma[k][m][j];
                    comp -= sc.c[i][k][m] * conn.gamma[m][k][j];
                }
                acc += comp;
            }
            ric[i][j] = acc;
        }
    return ric;
}

// Ric(xi, xi) and the tangential Ricci vector Ric(xi) - Ric(xi,xi) xi for a
// unit normal xi = a1 E1 + a2 E2 + a3 E3, both in frame components.
inline std::pair<double, FrameVector> ricci_normal_data(const FrameVector& xi,
                                                        const BergerParameter<double>& p) {
    if (std::abs(xi.squaredNorm() - 1.0) > 1e-9) {
        throw std::invalid_argument("ricci_normal_data: xi must be a unit vector");
    }
    const double e2 = p.epsilon * p.epsilon;
    const double a3 = xi[2];
    const double ric_xixi = 4.0 - 2.0 * e2 + (4.0 * e2 - 4.0) * a3 * a3;
    // Ric(xi) in the frame basis, then remove the normal component.
    FrameVector ric_xi((4.0 - 2.0 * e2) * xi[0], (4.0 - 2.0 * e2) * xi[1], 2.0 * e2 * a3);
    FrameVector tangential = ric_xi - ric_xixi * xi;
    return {ric_xixi, tangential};
}

}  // namespace berger
